from fractions import Fraction

import pytest

from qfock.errors import RequiresNEqMError
from qfock.fockspace import FockParams
from qfock.operators import comm
from qfock.report import summarize
from qfock.statistics import (
    cartan_form,
    classical_generators,
    classical_limit_check,
    expected_spectrum,
    free_hamiltonian,
    ladder_check,
    spectrum,
)

from .conftest import GRID, exact_generators


def _g1(n, m, p):
    return classical_generators(FockParams(n, m, p), exact_generators(n, m, p))


def test_spectrum_example():
    g1 = _g1(1, 1, 2)
    assert spectrum(free_hamiltonian(g1, [1])) == [0, 1, 1, 2, 2]


@pytest.mark.parametrize("eps", [[Fraction(3, 2)], [1]])
def test_ladder_single_pair(eps):
    assert summarize(ladder_check(_g1(1, 1, 2), eps))["failed"] == 0


def test_ladder_two_pairs():
    g1 = _g1(2, 2, 3)
    eps = [Fraction(3, 2), Fraction(2, 5)]
    H = free_hamiltonian(g1, eps)
    assert spectrum(H) == expected_spectrum(g1.params, eps)
    assert summarize(ladder_check(g1, eps, H))["failed"] == 0


def test_creation_on_vacuum():
    g1 = _g1(1, 1, 2)
    H = free_hamiltonian(g1, [Fraction(3, 2)])
    v = g1.basis.vacuum
    assert comm(H, g1.ap[1]).column(v) == g1.ap[1].scale(Fraction(3, 2)).column(v)


def test_cartan_sum_form_differs():
    g1 = _g1(1, 1, 2)
    alt = cartan_form(g1, [1])
    assert alt != free_hamiltonian(g1, [1])
    assert alt.diagonal_values() == [4, 3, 1, 0, -2]


def test_requires_n_eq_m():
    with pytest.raises(RequiresNEqMError):
        free_hamiltonian(_g1(2, 1, 2), [1, 1])
    with pytest.raises(ValueError):
        free_hamiltonian(_g1(1, 1, 2), [1, 2])


@pytest.mark.parametrize("n,m,p", GRID)
def test_classical_limit(n, m, p):
    assert summarize(classical_limit_check(_g1(n, m, p)))["failed"] == 0


def test_graded_bracket_sign_by_parity():
    from qfock.operators import scomm
    g1 = _g1(2, 2, 3)
    for i in (1, 2):
        assert scomm(g1.ap[i], g1.am[i]) == -g1.H[i]
    for i in (3, 4):
        assert scomm(g1.ap[i], g1.am[i]) == g1.H[i]
