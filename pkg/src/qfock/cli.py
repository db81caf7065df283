"""Command-line front end: ``python -m qfock <command> --n N --m M --p P ...``.

Exit codes: 0 all checks pass, 1 some relation failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .chevalley import DEFAULT_SAMPLES, cartan_matrix, chevalley_catalog, reconstruct_at, sample_context
from .errors import QFockError
from .exprlang import check_catalog, check_identity, parse, parse_catalog
from .fockspace import FockParams, dim_formula, enumerate_basis
from .operators import Generators, OperatorMatrix
from .relations import report_json, verify_all
from .report import RelationId, summarize
from .statistics import (
    cartan_form,
    classical_generators,
    expected_spectrum,
    free_hamiltonian,
    ladder_check,
    spectrum,
)

DEFAULT_NUMERIC_Q = 0.7
_LABEL_RE = re.compile(r"^(a\+|a-|H|L|Lbar)_(\d+)$")


def parse_q(text: str, exact: bool):
    """``"2/3"`` or ``"0.7"``; exact callers get a Fraction, numeric ones a float."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse q value {text!r}") from None
    return value if exact else float(value)


@dataclass(frozen=True)
class RunConfig:
    """Validated run settings shared by every subcommand."""

    command: str
    params: Optional[FockParams]
    mode: str = "exact"
    q: Optional[str] = None
    tol: float = 1e-10
    out: str = "json"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("--tol must be positive")
        if self.mode == "numeric" and self.q is not None:
            if parse_q(self.q, exact=True) in (0, 1, -1):
                raise ValueError(f"numeric mode needs q not in {{0, 1, -1}}, got {self.q}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        params = None
        if None not in (args.n, args.m, args.p):
            params = FockParams(args.n, args.m, args.p)
        return cls(args.command, params, args.mode, args.q, args.tol, args.out)


def _emit(obj, out: str, text_fn=None, rows=None, stream=None):
    stream = stream or sys.stdout
    if out == "json":
        json.dump(obj, stream, indent=2)
        stream.write("\n")
    elif out == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow(row)
        stream.write(buf.getvalue())
    else:
        stream.write((text_fn(obj) if text_fn else json.dumps(obj)) + "\n")


def _report_text(rep: dict) -> str:
    lines = [f"params n={rep['params']['n']} m={rep['params']['m']} p={rep['params']['p']}  mode={rep['mode']}"]
    for r in rep["relations"]:
        lines.append(f"  {r['status']:7s} {r['id']}{r['indices']}" + (f"  ({r['note']})" if r.get("note") else ""))
    s = rep["summary"]
    lines.append(f"total={s['total']} passed={s['passed']} failed={s['failed']} skipped={s['skipped']}")
    for w in rep.get("warnings", ()):
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _params(args) -> FockParams:
    try:
        return FockParams(args.n, args.m, args.p)
    except (TypeError, ValueError) as exc:
        raise QFockError(str(exc)) from None


def _samples(args):
    if args.q is None:
        return list(DEFAULT_SAMPLES)
    return [parse_q(s, exact=True) for s in args.q.split(",")]


# -- commands ----------------------------------------------------------------

def cmd_basis(args) -> int:
    basis = enumerate_basis(_params(args))
    obj = basis.to_json()
    _emit(obj, args.out, lambda o: "\n".join(f"{k}: {tuple(r)}" for k, r in enumerate(o["states"])),
          rows=[["index"] + [f"r{i}" for i in basis.params.indices()]] + [[k, *r] for k, r in enumerate(basis.states)])
    return 0


def cmd_dim(args) -> int:
    params = _params(args)
    d = dim_formula(params)
    assert d == enumerate_basis(params).dim
    print(d)
    return 0


def _matrix_for(args, params) -> OperatorMatrix:
    m = _LABEL_RE.match(args.label)
    if not m:
        raise QFockError(f"unknown generator label {args.label!r}; use a+_i, a-_i, H_i, L_i or Lbar_i")
    kind, i = m.group(1), int(m.group(2))
    if args.mode == "numeric":
        g = Generators.numeric(params, parse_q(args.q or str(DEFAULT_NUMERIC_Q), exact=False))
    else:
        g = Generators.exact(params)
        if args.q is not None:
            g = g.at(parse_q(args.q, exact=True))
    table = {"a+": g.ap, "a-": g.am, "H": g.H, "L": g.L, "Lbar": g.Lbar}
    if i not in table[kind]:
        raise QFockError(f"index {i} outside 1..{params.size}")
    mtx = table[kind][i]
    return OperatorMatrix(mtx.basis, mtx.entries, mtx.grade, args.label, mtx.q0)


def cmd_matrix(args) -> int:
    params = _params(args)
    mtx = _matrix_for(args, params)
    obj = mtx.to_json()
    states = mtx.basis.states

    def text(o):
        lines = [f"{o['label']}  grade={o['grade']}  mode={o['mode']}"]
        for r, c, v in o["entries"]:
            lines.append(f"  {states[r]} <- {states[c]}: {v}")
        return "\n".join(lines)

    _emit(obj, args.out, text, rows=[["row", "col", "value"]] + [[r, c, v] for r, c, v in obj["entries"]])
    return 0


def _context(args, params):
    if args.mode == "numeric":
        q0 = parse_q(args.q or str(DEFAULT_NUMERIC_Q), exact=False)
        return Generators.numeric(params, q0), args.tol
    return Generators.exact(params), None


def cmd_verify(args) -> int:
    params = _params(args)
    g, tol = _context(args, params)
    reports = verify_all(g, tol)
    extra = {}
    if args.chevalley:
        exact = g if args.mode == "exact" else Generators.exact(params)
        # in numeric mode --q is the evaluation point, not a rational sample
        samples = _samples(args) if args.mode == "exact" else list(DEFAULT_SAMPLES)
        for q0 in samples:
            gs = sample_context(exact, reconstruct_at(exact, q0))
            reports += [inst.check(gs) for inst in chevalley_catalog(params)]
        extra["chevalley_samples"] = [str(q) for q in samples]
    rep = report_json(params, g.mode_label, reports, extra)
    _emit(rep, args.out, _report_text)
    return 1 if rep["summary"]["failed"] else 0


def cmd_check(args) -> int:
    if args.catalog:
        with open(args.catalog) as fh:
            text = fh.read()
        cat_params, _ = parse_catalog(text)
        for name in ("n", "m", "p"):
            if getattr(args, name) is None:
                setattr(args, name, getattr(cat_params, name))
        params = _params(args)
        if params != cat_params:
            raise QFockError(f"catalog header {cat_params} disagrees with flags {params}")
    elif not args.identity:
        raise QFockError("check needs an identity argument or --catalog")
    params = _params(args)
    g, tol = _context(args, params)
    if args.chevalley:
        if args.mode != "exact":
            raise QFockError("--chevalley needs exact mode")
        q0 = parse_q(args.q or str(DEFAULT_SAMPLES[0]), exact=True)
        g = sample_context(g, reconstruct_at(g, q0))
    if args.catalog:
        reports = check_catalog(text, g, tol)
    else:
        reports = [
            check_identity(parse(t, params), g, tol, RelationId("dsl", (k,))) for k, t in enumerate(args.identity, 1)
        ]
    rep = report_json(params, g.mode_label, reports)
    if not args.catalog:
        for r, t in zip(rep["relations"], args.identity):
            r["text"] = t
    _emit(rep, args.out, _report_text)
    return 1 if rep["summary"]["failed"] else 0


def cmd_chevalley(args) -> int:
    params = _params(args)
    exact = Generators.exact(params)
    reports = []
    samples = _samples(args)
    for q0 in samples:
        gs = sample_context(exact, reconstruct_at(exact, q0))
        reports += [inst.check(gs) for inst in chevalley_catalog(params)]
    extra = {"samples": [str(q) for q in samples], "cartan_matrix": cartan_matrix(params)}
    rep = report_json(params, "exact-at-samples", reports, extra)
    _emit(rep, args.out, _report_text)
    return 1 if rep["summary"]["failed"] else 0


def cmd_spectrum(args) -> int:
    params = _params(args)
    if not args.energies:
        raise QFockError("spectrum needs --energies e1,e2,...")
    eps = [Fraction(e.strip()) for e in args.energies.split(",")]
    g1 = classical_generators(params)
    H = free_hamiltonian(g1, eps)
    values = spectrum(H)
    expected = expected_spectrum(params, eps)
    ladder = ladder_check(g1, eps, H)
    alt = cartan_form(g1, eps)
    obj = {
        "params": params.to_dict(),
        "energies": [str(e) for e in eps],
        "states": [list(r) for r in g1.basis.states],
        "spectrum": [str(v) for v in values],
        "expected": [str(v) for v in expected],
        "spectrum_matches": values == expected,
        "ladder": [r.to_json() for r in ladder],
        "ladder_summary": summarize(ladder),
        "cartan_sum_form_agrees": alt == H,
        "note": "H is built as sum eps_i([[b_i^+,b_i^-]] + [[f_i^+,f_i^-]]); at q=1 "
                "[[b_i^+,b_i^-]] = -H_i but [[f_i^+,f_i^-]] = +H_{i+n}, so sum eps_i(H_i + H_{i+n}) "
                "is a different operator.",
    }

    def text(o):
        lines = [f"state {tuple(r)}  E = {e}" for r, e in zip(o["states"], o["spectrum"])]
        lines.append(f"ladder: {o['ladder_summary']}")
        lines.append(f"cartan-sum form agrees: {o['cartan_sum_form_agrees']}")
        return "\n".join(lines)

    _emit(obj, args.out, text, rows=[["state", "energy"]] + [[" ".join(map(str, r)), e] for r, e in zip(obj["states"], obj["spectrum"])])
    ok = obj["spectrum_matches"] and not obj["ladder_summary"]["failed"]
    return 0 if ok else 1


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of even CAG pairs")
    common.add_argument("--m", type=int, help="number of odd CAG pairs")
    common.add_argument("--p", type=int, help="order of the statistics")
    common.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    common.add_argument("--q", help="q value(s); accepts a/b rationals, comma lists for chevalley")
    common.add_argument("--tol", type=float, default=1e-10, help="numeric tolerance")
    common.add_argument("--out", choices=("json", "csv", "text"), default="json")

    parser = argparse.ArgumentParser(prog="qfock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="list the Fock basis").set_defaults(func=cmd_basis)
    sub.add_parser("dim", parents=[common], help="dimension of the Fock space").set_defaults(func=cmd_dim)
    p = sub.add_parser("matrix", parents=[common], help="export one generator matrix")
    p.add_argument("label", help="a+_i, a-_i, H_i, L_i or Lbar_i")
    p.set_defaults(func=cmd_matrix)
    p = sub.add_parser("verify", parents=[common], help="verify the relation catalog")
    p.add_argument("--chevalley", action="store_true", help="also reconstruct and verify Chevalley generators")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("check", parents=[common], help="check DSL identities")
    p.add_argument("identity", nargs="*")
    p.add_argument("--catalog", help="catalog file: 'params n m p' header, one identity per line")
    p.add_argument("--chevalley", action="store_true", help="resolve E, F, Hch, K, Kinv at --q")
    p.set_defaults(func=cmd_check)
    sub.add_parser("chevalley", parents=[common], help="reconstruct Chevalley generators").set_defaults(func=cmd_chevalley)
    p = sub.add_parser("spectrum", parents=[common], help="q=1 free Hamiltonian spectrum and ladder check")
    p.add_argument("--energies", help="comma-separated energies, one per b/f pair")
    p.set_defaults(func=cmd_spectrum)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_params = not (args.command == "check" and getattr(args, "catalog", None))
    if needs_params and None in (args.n, args.m, args.p):
        parser.error("--n, --m and --p are required")
    try:
        args.config = RunConfig.from_args(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except (QFockError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
