"""Chevalley generators recovered from the Fock matrices of the CAGs.

The Cartan elements come from inverting the triangular sum that defines
``H_i``; ``e_i`` and ``f_i`` (``i >= 2``) are the unique solutions of the
linear systems ``a_i^- = [a_{i-1}^-, e_i]_{qbar_{i-1}}`` and
``a_i^+ = [f_i, a_{i-1}^+]_{q_{i-1}}`` inside the weight space fixed by the
Cartan matrix. Everything happens at a rational sample ``q = q0``, exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from .errors import BadQError, IndexRangeError, UnresolvedAtomError
from .fockspace import FockParams, theta
from .linalg import build_system, solve_unique
from .operators import Generators, OperatorMatrix, acomm, comm, qdivdiff, scomm
from .relations import Instance, _scaled
from .report import RelationId

DEFAULT_SAMPLES = (Fraction(2, 3), Fraction(3, 5), Fraction(7, 4))


def cartan_entry(i: int, j: int, params: FockParams) -> int:
    """``alpha_ij`` from the grading: ``theta_{i-1,i} = theta_{i-1} + theta_i``."""
    s = (-1) ** (theta(i - 1, params) + theta(i, params))
    return (1 + s) * (i == j) - s * (i == j - 1) - (i - 1 == j)


def cartan_matrix(params: FockParams) -> List[List[int]]:
    idx = params.indices()
    return [[cartan_entry(i, j, params) for j in idx] for i in idx]


def q_sub_exponent(i: int, params: FockParams) -> int:
    """Exponent ``e`` with ``q_i = q^e``: ``+1`` for ``i <= n``, ``-1`` otherwise."""
    return 1 - 2 * theta(i, params)


def chevalley_grade(i: int, params: FockParams) -> int:
    return (theta(i - 1, params) + theta(i, params)) % 2


@dataclass
class Chevalley:
    params: FockParams
    q0: Fraction
    h: Dict[int, OperatorMatrix] = field(default_factory=dict)
    e: Dict[int, OperatorMatrix] = field(default_factory=dict)
    f: Dict[int, OperatorMatrix] = field(default_factory=dict)
    k: Dict[int, OperatorMatrix] = field(default_factory=dict)
    kbar: Dict[int, OperatorMatrix] = field(default_factory=dict)

    def lookup(self, name: str, i: int) -> OperatorMatrix:
        table = {"E": self.e, "F": self.f, "Hch": self.h, "K": self.k, "Kinv": self.kbar}
        if name not in table:
            raise UnresolvedAtomError(f"unknown Chevalley atom {name}")
        if i not in table[name]:
            raise IndexRangeError(f"{name}({i}) outside 1..{self.params.size}")
        return table[name][i]

    def to_json(self) -> dict:
        out = {"params": self.params.to_dict(), "q": str(self.q0), "generators": {}}
        for name, table in (("h", self.h), ("e", self.e), ("f", self.f), ("k", self.k)):
            for i, mtx in table.items():
                out["generators"][f"{name}_{i}"] = {"grade": mtx.grade, "entries": mtx.entries_json()}
        return out


def _weight_support(hdiag, i, sign, params, dim):
    """Pairs ``(row, col)`` where ``h_j(row) - h_j(col) = sign * alpha_ji`` for all ``j``."""
    want = [sign * cartan_entry(j, i, params) for j in params.indices()]
    out = []
    for a in range(dim):
        for b in range(dim):
            if all(hdiag[j][a] - hdiag[j][b] == want[j - 1] for j in params.indices()):
                out.append((a, b))
    return out


def _solve_generator(g: Generators, hdiag, i: int, sign: int) -> OperatorMatrix:
    params = g.params
    dim = g.basis.dim
    c = g.qpow(-sign * q_sub_exponent(i - 1, params))
    prev = g.a(i - 1, -sign)
    target = g.a(i, -sign)
    support = _weight_support(hdiag, i, sign, params, dim)
    prev_rows: Dict[int, list] = {}
    prev_cols: Dict[int, list] = {}
    for (r, cc), v in prev.items():
        prev_rows.setdefault(r, []).append((cc, v))
        prev_cols.setdefault(cc, []).append((r, v))
    columns = []
    for a, b in support:
        col: Dict[tuple, Fraction] = {}
        # e: prev @ E_ab - c E_ab @ prev ;  f: E_ab @ prev - c prev @ E_ab
        left = {(x, b): v for x, v in prev_cols.get(a, ())}
        right = {(a, y): v for y, v in prev_rows.get(b, ())}
        first, second = (left, right) if sign > 0 else (right, left)
        for key, v in first.items():
            col[key] = col.get(key, 0) + v
        for key, v in second.items():
            col[key] = col.get(key, 0) - c * v
        columns.append(col)
    rows, rhs = build_system(columns, dict(target.items()))
    sol = solve_unique(rows, rhs, len(support))
    name = "e" if sign > 0 else "f"
    return OperatorMatrix(
        g.basis, dict(zip(support, sol)), chevalley_grade(i, params), f"{name}_{i}", g.q0
    )


def reconstruct_at(exact: Generators, q0) -> Chevalley:
    """Chevalley generators at one rational sample. Raises UnderdeterminedError
    or InconsistentError when the defining systems have no unique solution."""
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise BadQError(f"sample q0 = {q0} is not generic")
    params = exact.params
    g = exact.at(q0) if exact.q0 is None else exact
    ch = Chevalley(params, q0)
    ch.h[1] = g.H[1]
    for i in params.indices():
        if i >= 2:
            sign = (-1) ** theta(i - 1, params)
            ch.h[i] = (g.H[i] - g.H[i - 1]).scale(sign)
    hdiag = {j: [int(v) for v in ch.h[j].diagonal_values()] for j in params.indices()}
    ch.e[1] = g.am[1]
    ch.f[1] = g.ap[1]
    for i in params.indices():
        if i >= 2:
            ch.e[i] = _solve_generator(g, hdiag, i, +1)
            ch.f[i] = _solve_generator(g, hdiag, i, -1)
        ch.k[i] = OperatorMatrix.diagonal(g.basis, [q0 ** v for v in hdiag[i]], q0, f"k_{i}")
        ch.kbar[i] = OperatorMatrix.diagonal(g.basis, [q0 ** -v for v in hdiag[i]], q0, f"kbar_{i}")
    return ch


def reconstruct_chevalley(params: FockParams, q_samples: Sequence = DEFAULT_SAMPLES, exact: Generators = None):
    exact = exact or Generators.exact(params)
    return [reconstruct_at(exact, q0) for q0 in q_samples]


def sample_context(exact: Generators, ch: Chevalley) -> Generators:
    g = exact.at(ch.q0)
    g.chevalley = ch
    return g


# -- verification ----------------------------------------------------------

def _e(i):
    return f"E({i})"


def _f(i):
    return f"F({i})"


def _serre_family(params: FockParams, name: str) -> List[Instance]:
    """e-Serre relations, or their f mirror when ``name == "F"``."""
    n, m = params.n, params.m
    idx = list(params.indices())
    suffix = "" if name == "E" else "-f"
    atom = lambda i: f"{name}({i})"
    fam = lambda ch: ch.e if name == "E" else ch.f
    out = []
    for i in idx:
        for j in idx:
            if j - i >= 2:
                out.append(Instance(RelationId("2a" + suffix, (i, j)), f"comm({atom(i)}, {atom(j)}) == 0",
                                    lambda g, i=i, j=j: (comm(fam(g.chevalley)[i], fam(g.chevalley)[j]), g.zeros())))
    if m >= 1:
        out.append(Instance(RelationId("2a-sq" + suffix, (n + 1,)), f"{atom(n + 1)}^2 == 0",
                            lambda g: (fam(g.chevalley)[n + 1] @ fam(g.chevalley)[n + 1], g.zeros())))
    else:
        out.append(Instance(RelationId("2a-sq" + suffix, ()), None, None, "m = 0: no odd simple root"))
    any_2b = False
    for i in idx:
        if i == n + 1:
            continue
        for j in (i - 1, i + 1):
            if j not in idx:
                continue
            any_2b = True
            for outer in (1, -1):
                def native(g, i=i, j=j, outer=outer):
                    x = fam(g.chevalley)
                    return comm(x[i], comm(x[i], x[j], -outer), outer), g.zeros()

                text = f"comm({atom(i)}, comm({atom(i)}, {atom(j)}, {-outer}), {outer}) == 0"
                out.append(Instance(RelationId("2b" + suffix, (i, j, outer)), text, native))
    if not any_2b:
        out.append(Instance(RelationId("2b" + suffix, ()), None, None, "no index i != n+1 with a neighbour"))
    if n >= 1 and m >= 2:
        for outer in (1, -1):
            def native(g, outer=outer):
                x = fam(g.chevalley)
                t = comm(comm(x[n], x[n + 1], outer), x[n + 2], -outer)
                return acomm(x[n + 1], t), g.zeros()

            text = (f"acomm({atom(n + 1)}, comm(comm({atom(n)}, {atom(n + 1)}, {outer}), "
                    f"{atom(n + 2)}, {-outer})) == 0")
            out.append(Instance(RelationId("2c" + suffix, (n, n + 1, n + 2, outer)), text, native))
    else:
        out.append(Instance(RelationId("2c" + suffix, ()), None, None, "needs n >= 1 and m >= 2"))
    return out


def cartan_kac_serre_catalog(params: FockParams) -> List[Instance]:
    idx = list(params.indices())
    out = []
    for i in idx:
        for j in idx:
            out.append(Instance(RelationId("1a", (i, j)), f"comm(Hch({i}), Hch({j})) == 0",
                                lambda g, i=i, j=j: (comm(g.chevalley.h[i], g.chevalley.h[j]), g.zeros())))
    for i in idx:
        for j in idx:
            a = cartan_entry(i, j, params)
            out.append(Instance(RelationId("1b-e", (i, j)), f"comm(Hch({i}), E({j})) == {_scaled(a, _e(j))}",
                                lambda g, i=i, j=j, a=a: (comm(g.chevalley.h[i], g.chevalley.e[j]),
                                                          g.chevalley.e[j].scale(a))))
            out.append(Instance(RelationId("1b-f", (i, j)), f"comm(Hch({i}), F({j})) == {_scaled(-a, _f(j))}",
                                lambda g, i=i, j=j, a=a: (comm(g.chevalley.h[i], g.chevalley.f[j]),
                                                          g.chevalley.f[j].scale(-a))))
    for i in idx:
        for j in idx:
            rhs = f"qdivdiff(K({i}), Kinv({i}))" if i == j else "0"

            def native(g, i=i, j=j):
                ch = g.chevalley
                r = qdivdiff(ch.k[i], ch.kbar[i]) if i == j else g.zeros()
                return scomm(ch.e[i], ch.f[j]), r

            out.append(Instance(RelationId("1c", (i, j)), f"scomm(E({i}), F({j})) == {rhs}", native))
    return out + _serre_family(params, "E") + _serre_family(params, "F")


def round_trip_catalog(params: FockParams) -> List[Instance]:
    """CAGs and ``H_i`` rebuilt from the Chevalley generators by nested brackets."""
    out = []
    am_text, ap_text, h_terms = _e(1), _f(1), ["Hch(1)"]

    def rebuild(ch, upto):
        am, ap, hs = ch.e[1], ch.f[1], ch.h[1]
        for i in range(2, upto + 1):
            x = q_sub_exponent(i - 1, params)
            am = comm(am, ch.e[i], -x)
            ap = comm(ch.f[i], ap, x)
            hs = hs + ch.h[i].scale((-1) ** theta(i - 1, params))
        return am, ap, hs

    for i in params.indices():
        if i >= 2:
            x = q_sub_exponent(i - 1, params)
            am_text = f"comm({am_text}, {_e(i)}, {-x})"
            ap_text = f"comm({_f(i)}, {ap_text}, {x})"
            h_terms.append(("- " if theta(i - 1, params) else "+ ") + f"Hch({i})")
        out.append(Instance(RelationId("4", (i, -1)), f"Am({i}) == {am_text}",
                            lambda g, i=i: (g.am[i], rebuild(g.chevalley, i)[0])))
        out.append(Instance(RelationId("4", (i, 1)), f"Ap({i}) == {ap_text}",
                            lambda g, i=i: (g.ap[i], rebuild(g.chevalley, i)[1])))
        out.append(Instance(RelationId("4H", (i,)), f"H({i}) == {' '.join(h_terms)}",
                            lambda g, i=i: (g.H[i], rebuild(g.chevalley, i)[2])))
    return out


def chevalley_catalog(params: FockParams) -> List[Instance]:
    return cartan_kac_serre_catalog(params) + round_trip_catalog(params)


def verify_cartan_kac_serre(g: Generators, ch: Chevalley = None) -> list:
    if ch is not None:
        g.chevalley = ch
    return [inst.check(g) for inst in cartan_kac_serre_catalog(g.params)]


def verify_round_trip(g: Generators, ch: Chevalley = None) -> list:
    if ch is not None:
        g.chevalley = ch
    return [inst.check(g) for inst in round_trip_catalog(g.params)]


def verify_chevalley(params: FockParams, q_samples: Sequence = DEFAULT_SAMPLES, exact: Generators = None) -> list:
    """Reconstruct at every sample and run the Cartan-Kac, Serre (both e and f) and round-trip checks."""
    exact = exact or Generators.exact(params)
    reports = []
    for q0 in q_samples:
        g = sample_context(exact, reconstruct_at(exact, q0))
        reports += [inst.check(g) for inst in chevalley_catalog(params)]
    return reports
