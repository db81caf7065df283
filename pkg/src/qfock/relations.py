"""Relation catalog for the CAG presentation and its Fock representations.

Every catalog entry pairs a native evaluator, which builds the two sides
with direct matrix calls, with the same identity written in the expression
language. The two routes are cross-checked in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import MalformedRootError
from .fockspace import FockParams, theta
from .operators import Generators, OperatorMatrix, comm, qdivdiff, scomm
from .qarith import Q, QBAR, LaurentPoly
from .report import RelationId, RelationReport, judge, skipped, summarize

Sides = Tuple[OperatorMatrix, OperatorMatrix]


def epsilon(j: int, k: int, i: int) -> int:
    if j > k > i:
        return 1
    if j < k < i:
        return -1
    return 0


def root_order_less(root1: Tuple[int, int], root2: Tuple[int, int]) -> bool:
    """Normal order on positive roots ``eps_i - eps_j`` given as pairs ``(i, j)``."""
    (i, j), (k, l) = root1, root2
    for a, b in (root1, root2):
        if not (isinstance(a, int) and isinstance(b, int) and 0 <= a < b):
            raise MalformedRootError(f"({a}, {b}) is not a positive root")
    return j < l or (j == l and i < k)


def positive_roots(params: FockParams) -> List[Tuple[int, int]]:
    N = params.size
    return [(i, j) for j in range(N + 1) for i in range(j)]


@dataclass
class Instance:
    id: RelationId
    text: Optional[str]
    native: Optional[Callable[[Generators], Sides]]
    skip_reason: Optional[str] = None

    def check(self, g: Generators, tol=None) -> RelationReport:
        if self.native is None:
            return skipped(self.id, self.skip_reason or "not applicable", g.mode_label)
        lhs, rhs = self.native(g)
        return judge(self.id, lhs - rhs, tol)


# -- rendering helpers -------------------------------------------------------

def _a(i, s):
    return f"Ap({i})" if s > 0 else f"Am({i})"


def _L(k, power):
    return f"L({k})" if power > 0 else f"Linv({k})"


def _scaled(c, body: str) -> str:
    """Text for ``c * body`` with ``c`` an int or LaurentPoly."""
    c = LaurentPoly.coerce(c)
    if c.is_zero():
        return "0"
    if c == 1:
        return body
    return f"({c})*{body}"


def _sum(parts: Sequence[str]) -> str:
    parts = [p for p in parts if p != "0"]
    return " + ".join(parts) if parts else "0"


def _L_native(g: Generators, k: int, power: int) -> OperatorMatrix:
    return g.L[k] if power > 0 else g.Lbar[k]


def vacuum_projector(g: Generators) -> OperatorMatrix:
    """Rank-one projector onto the vacuum vector."""
    v = g.basis.vacuum
    return OperatorMatrix(g.basis, {(v, v): 1}, 0, "Vac", g.q0)


# -- catalog families --------------------------------------------------------

def _inst(tag, idx, text, fn):
    return Instance(RelationId(tag, tuple(idx)), text, fn)


def _skip(tag, reason):
    return Instance(RelationId(tag, ()), None, None, reason)


def defining_catalog(params: FockParams) -> List[Instance]:
    """Commutation relations of the presentation: tags 6a-6e."""
    th = lambda i: theta(i, params)
    idx = list(params.indices())
    N = params.size
    out = []
    for i in idx:
        for j in idx:
            out.append(_inst("6a", (i, j), f"comm(H({i}), H({j})) == 0",
                             lambda g, i=i, j=j: (comm(g.H[i], g.H[j]), g.zeros())))
    for i in idx:
        for j in idx:
            for s in (1, -1):
                c = -s * (1 + (-1) ** th(i) * (i == j))
                out.append(_inst("6b", (i, j, s), f"comm(H({i}), {_a(j, s)}) == {_scaled(c, _a(j, s))}",
                                 lambda g, i=i, j=j, s=s, c=c: (comm(g.H[i], g.a(j, s)), g.a(j, s).scale(c))))
    for i in idx:
        out.append(_inst("6c", (i,), f"scomm(Am({i}), Ap({i})) == qdivdiff(L({i}), Linv({i}))",
                         lambda g, i=i: (scomm(g.am[i], g.ap[i]), qdivdiff(g.L[i], g.Lbar[i]))))
    for i in idx:
        for xi in (1, -1):
            j = i + xi
            if not 1 <= j <= N:
                continue
            for k in idx:
                for eta in (1, -1):
                    out.append(_sextet("6d", (i, k, xi, eta), params, i, j, k, xi, eta, correction=None))
    for xi in (1, -1):
        if N >= 2:
            out.append(_inst("6e", (1, 2, xi), f"scomm({_a(1, xi)}, {_a(2, xi)}, 1) == 0",
                             lambda g, xi=xi: (scomm(g.a(1, xi), g.a(2, xi), 1), g.zeros())))
        else:
            out.append(Instance(RelationId("6e", (1, 2, xi)), None, None, "needs n+m >= 2"))
        out.append(_inst("6e", (1, 1, xi), f"scomm({_a(1, xi)}, {_a(1, xi)}) == 0",
                         lambda g, xi=xi: (scomm(g.a(1, xi), g.a(1, xi)), g.zeros())))
    return out


def _sextet(tag, ids, params, i, j, k, xi, eta, correction):
    """Shared shape of the triple-bracket relations.

    ``[[ [[a_i^eta, a_j^-eta]], a_k^eta ]]_{q^{xi(1+(-1)^th_i delta_ik)}}``
    equals ``eta^th_j delta_jk L_k^{-xi eta} a_i^eta`` plus an optional
    correction (``"mid"`` or ``"right"``) carrying ``epsilon(j, k, i)``.
    """
    th = lambda x: theta(x, params)
    defo = xi * (1 + (-1) ** th(i) * (i == k))
    base_c = (eta ** th(j)) * (j == k)
    power = -xi * eta
    eps = epsilon(j, k, i)
    lhs_text = f"scomm(scomm({_a(i, eta)}, {_a(j, -eta)}), {_a(k, eta)}, {defo})"
    parts = [_scaled(base_c, f"{_L(k, power)}*{_a(i, eta)}")]
    corr_c = None
    if correction == "mid":
        corr_c = (Q - QBAR) * ((-1) ** th(k) * eps)
        parts.append(_scaled(corr_c, f"scomm({_a(k, eta)}, {_a(j, -eta)})*{_a(i, eta)}"))
    elif correction == "right":
        corr_c = (Q - QBAR) * LaurentPoly.monomial(xi) * ((-1) ** (th(k) * th(j)) * eps)
        parts.append(_scaled(corr_c, f"{_a(i, eta)}*scomm({_a(k, eta)}, {_a(j, -eta)})"))

    def native(g):
        lhs = scomm(scomm(g.a(i, eta), g.a(j, -eta)), g.a(k, eta), defo)
        rhs = (_L_native(g, k, power) @ g.a(i, eta)).scale(base_c)
        if corr_c is not None and not corr_c.is_zero():
            kj = scomm(g.a(k, eta), g.a(j, -eta))
            term = kj @ g.a(i, eta) if correction == "mid" else g.a(i, eta) @ kj
            rhs = rhs + term.scale(corr_c)
        return lhs, rhs

    return _inst(tag, ids, f"{lhs_text} == {_sum(parts)}", native)


def derived_catalog(params: FockParams) -> List[Instance]:
    """Consequences of the defining relations: tags 8, 11a-c, 12a-b, 13m, 13r."""
    th = lambda i: theta(i, params)
    idx = list(params.indices())
    out = []
    for i in idx:
        for j in idx:
            if i < j:
                for xi in (1, -1):
                    out.append(_inst("8", (i, j, xi), f"scomm({_a(i, xi)}, {_a(j, xi)}, 1) == 0",
                                     lambda g, i=i, j=j, xi=xi: (scomm(g.a(i, xi), g.a(j, xi), 1), g.zeros())))
    if len(idx) < 2:
        out.append(_skip("8", "needs n+m >= 2"))
    for i in idx:
        out.append(_inst("11a", (i, 1), f"L({i})*Linv({i}) == 1",
                         lambda g, i=i: (g.L[i] @ g.Lbar[i], g.identity())))
        out.append(_inst("11a", (i, -1), f"Linv({i})*L({i}) == 1",
                         lambda g, i=i: (g.Lbar[i] @ g.L[i], g.identity())))
    for i in idx:
        for j in idx:
            out.append(_inst("11b", (i, j), f"L({i})*L({j}) == L({j})*L({i})",
                             lambda g, i=i, j=j: (g.L[i] @ g.L[j], g.L[j] @ g.L[i])))
    for i in idx:
        for j in idx:
            for s in (1, -1):
                e = -s * (1 + (-1) ** th(i) * (i == j))
                c = LaurentPoly.monomial(e)
                out.append(_inst("11c", (i, j, s), f"L({i})*{_a(j, s)} == {_scaled(c, f'{_a(j, s)}*L({i})')}",
                                 lambda g, i=i, j=j, s=s, e=e: (g.L[i] @ g.a(j, s), (g.a(j, s) @ g.L[i]).scale(g.qpow(e)))))
    for i in idx:
        out.append(_inst("12a", (i,), f"scomm(Am({i}), Ap({i})) == qdivdiff(L({i}), Linv({i}))",
                         lambda g, i=i: (scomm(g.am[i], g.ap[i]), qdivdiff(g.L[i], g.Lbar[i]))))
    for i in idx:
        for j in idx:
            if i < j:
                for eta in (1, -1):
                    out.append(_inst("12b", (i, j, eta), f"scomm({_a(i, eta)}, {_a(j, eta)}, 1) == 0",
                                     lambda g, i=i, j=j, eta=eta: (scomm(g.a(i, eta), g.a(j, eta), 1), g.zeros())))
    for i in idx:
        for j in idx:
            if i == j:
                continue
            xi = 1 if j > i else -1
            for k in idx:
                for eta in (1, -1):
                    ids = (i, j, k, xi, eta)
                    out.append(_sextet("13m", ids, params, i, j, k, xi, eta, correction="mid"))
                    out.append(_sextet("13r", ids, params, i, j, k, xi, eta, correction="right"))
    if len(idx) < 2:
        out.append(_skip("13m", "needs n+m >= 2"))
        out.append(_skip("13r", "needs n+m >= 2"))
    return out


def vacuum_catalog(params: FockParams) -> List[Instance]:
    """Cyclic-vector conditions, expressed through the vacuum projector ``Vac``."""
    idx = list(params.indices())
    p = params.p
    out = []
    for i in idx:
        out.append(_inst("7a", (i,), f"Am({i})*Vac == 0",
                         lambda g, i=i: (g.am[i] @ vacuum_projector(g), g.zeros())))
    for i in idx:
        out.append(_inst("7b", (i,), f"H({i})*Vac == {_scaled(p, 'Vac')}",
                         lambda g, i=i: (g.H[i] @ vacuum_projector(g), vacuum_projector(g).scale(p))))
    for i in idx:
        for j in idx:
            if i != j:
                out.append(_inst("7c", (i, j), f"scomm(Am({i}), Ap({j}))*Vac == 0",
                                 lambda g, i=i, j=j: (scomm(g.am[i], g.ap[j]) @ vacuum_projector(g), g.zeros())))
    if len(idx) < 2:
        out.append(_skip("7c", "needs n+m >= 2 for i != j"))
    return out


def full_catalog(params: FockParams) -> List[Instance]:
    return defining_catalog(params) + derived_catalog(params) + vacuum_catalog(params)


def _run(catalog, g, tol):
    return [inst.check(g, tol) for inst in catalog]


def verify_defining(g: Generators, tol=None) -> List[RelationReport]:
    return _run(defining_catalog(g.params), g, tol)


def verify_derived(g: Generators, tol=None) -> List[RelationReport]:
    return _run(derived_catalog(g.params), g, tol)


def verify_vacuum(g: Generators, tol=None) -> List[RelationReport]:
    return _run(vacuum_catalog(g.params), g, tol)


def verify_all(g: Generators, tol=None) -> List[RelationReport]:
    return verify_defining(g, tol) + verify_derived(g, tol) + verify_vacuum(g, tol)


def render_catalog(params: FockParams, catalog: Optional[List[Instance]] = None) -> str:
    """Catalog file text: a ``params`` header, then one identity per line."""
    catalog = full_catalog(params) if catalog is None else catalog
    lines = [f"params {params.n} {params.m} {params.p}"]
    for inst in catalog:
        if inst.text is None:
            lines.append(f"# {inst.id}: skipped ({inst.skip_reason})")
        else:
            lines.append(f"{inst.text}  # {inst.id}")
    return "\n".join(lines) + "\n"


def report_json(params: FockParams, mode: str, reports: List[RelationReport], extra=None) -> dict:
    out = {
        "params": params.to_dict(),
        "mode": mode,
        "relations": [r.to_json() for r in reports],
        "summary": summarize(reports),
    }
    warnings = params.warnings()
    if warnings:
        out["warnings"] = warnings
    if extra:
        out.update(extra)
    return out
