"""Free Hamiltonian of the undeformed (q = 1) Fock space and its ladder relations.

Only for ``n == m``: ``b_i = a_i`` are the Bose-like and ``f_i = a_{i+n}``
the Fermi-like CAGs. The Hamiltonian is taken in the supercommutator form
``sum_i eps_i ([[b_i^+, b_i^-]] + [[f_i^+, f_i^-]])``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .errors import RequiresNEqMError
from .fockspace import FockParams, enumerate_basis
from .operators import Generators, OperatorMatrix, comm, scomm
from .report import RelationId, RelationReport, judge


def classical_generators(params: FockParams, exact: Generators = None) -> Generators:
    """Exact matrices with ``q`` set to 1 by polynomial evaluation."""
    exact = exact or Generators.exact(params)
    return exact.at(Fraction(1))


def _energies(params: FockParams, energies: Sequence) -> List[Fraction]:
    if params.n != params.m:
        raise RequiresNEqMError(f"free Hamiltonian needs n == m, got n={params.n}, m={params.m}")
    eps = [Fraction(e) for e in energies]
    if len(eps) != params.n:
        raise ValueError(f"need {params.n} energies, got {len(eps)}")
    return eps


def free_hamiltonian(g1: Generators, energies: Sequence) -> OperatorMatrix:
    params = g1.params
    eps = _energies(params, energies)
    n = params.n
    H = g1.zeros()
    for i, e in enumerate(eps, start=1):
        term = scomm(g1.ap[i], g1.am[i]) + scomm(g1.ap[i + n], g1.am[i + n])
        H = H + term.scale(e)
    return OperatorMatrix(H.basis, H.entries, 0, "H_free", H.q0)


def cartan_form(g1: Generators, energies: Sequence) -> OperatorMatrix:
    """The alternative expression ``sum_i eps_i (H_i + H_{i+n})``."""
    params = g1.params
    eps = _energies(params, energies)
    H = g1.zeros()
    for i, e in enumerate(eps, start=1):
        H = H + (g1.H[i] + g1.H[i + params.n]).scale(e)
    return H


def ladder_check(g1: Generators, energies: Sequence, H: OperatorMatrix = None) -> List[RelationReport]:
    """``[H, b_i^pm] = pm eps_i b_i^pm`` and the same for ``f_i``."""
    params = g1.params
    eps = _energies(params, energies)
    H = free_hamiltonian(g1, eps) if H is None else H
    out = []
    for i, e in enumerate(eps, start=1):
        for kind, j in (("ladder-b", i), ("ladder-f", i + params.n)):
            for s in (1, -1):
                a = g1.a(j, s)
                out.append(judge(RelationId(kind, (i, s)), comm(H, a) - a.scale(s * e)))
    return out


def spectrum(H: OperatorMatrix) -> list:
    if not H.is_diagonal():
        raise ValueError("Hamiltonian is not diagonal in the occupation basis")
    return H.diagonal_values()


def expected_spectrum(params: FockParams, energies: Sequence) -> List[Fraction]:
    eps = _energies(params, energies)
    n = params.n
    return [sum((e * (r[i] + r[i + n]) for i, e in enumerate(eps)), Fraction(0)) for r in enumerate_basis(params)]


def classical_limit_check(g1: Generators) -> List[RelationReport]:
    """At ``q = 1`` the graded bracket ``[[a_i^-, a_i^+]]`` equals ``H_i``."""
    return [
        judge(RelationId("q1-6c", (i,)), scomm(g1.am[i], g1.ap[i]) - g1.H[i]) for i in g1.params.indices()
    ]
