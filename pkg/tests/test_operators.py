import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from qfock.errors import BadQError, GradeUndefinedError, IndexRangeError, NonDivisibleError
from qfock.fockspace import FockParams, enumerate_basis, h_eigenvalue, theta
from qfock.operators import (
    BracketKind,
    Generators,
    OperatorMatrix,
    bracket,
    build_a_minus,
    build_a_plus,
    build_H,
    build_L,
    build_normalized_numeric,
    change_of_basis,
    comm,
    normalization,
    qdivdiff,
    scomm,
)
from qfock.qarith import ONE, Q, QBAR, LaurentPoly, q_number

from .conftest import GRID, exact_generators
from .oracles import dense, dense_mul

P112 = FockParams(1, 1, 2)
B112 = enumerate_basis(P112)


def test_H_diagonal_example():
    H1 = build_H(B112, 1)
    assert H1.is_diagonal()
    assert [v.constant_value() for v in H1.diagonal_values()] == [2, 1, 0, -1, -2]


def test_H_vacuum_is_p(grid_gens):
    v = grid_gens.basis.vacuum
    for i, H in grid_gens.H.items():
        assert H.column(v) == {v: LaurentPoly.constant(grid_gens.params.p)}


def test_L_times_Lbar_is_identity(grid_gens):
    one = grid_gens.identity()
    for i in grid_gens.params.indices():
        assert grid_gens.L[i] @ grid_gens.Lbar[i] == one
        assert grid_gens.Lbar[i] @ grid_gens.L[i] == one


def test_L_entries_are_monomials():
    L = build_L(B112, 2, 1)
    for k, r in enumerate(B112):
        assert L[(k, k)] == LaurentPoly.monomial(h_eigenvalue(2, r, P112))
    with pytest.raises(ValueError):
        build_L(B112, 1, 2)


def test_a_minus_examples():
    am1 = build_a_minus(B112, 1)
    vac = B112.vacuum
    assert am1.column(vac) == {}
    assert am1[(B112.index((0, 0)), B112.index((1, 0)))] == Q + QBAR


def test_a_plus_fermion_double_occupancy():
    ap2 = build_a_plus(B112, 2)
    assert ap2.column(B112.index((0, 1))) == {}


def test_grades():
    assert build_a_plus(B112, 1).grade == 0
    assert build_a_plus(B112, 2).grade == 1
    assert build_a_minus(B112, 2).grade == 1
    assert build_H(B112, 2).grade == 0


def test_index_range():
    with pytest.raises(IndexRangeError):
        build_a_plus(B112, 3)
    with pytest.raises(IndexRangeError):
        build_H(B112, 0)


def test_creation_on_full_states_vanishes(grid_gens):
    p = grid_gens.params.p
    for c, r in enumerate(grid_gens.basis):
        if sum(r) == p:
            for i in grid_gens.params.indices():
                assert grid_gens.ap[i].column(c) == {}


def test_matmul_matches_dense_oracle():
    g = exact_generators(2, 1, 2)
    a, b = g.am[2], g.ap[3]
    got = dense(a @ b)
    want = dense_mul(dense(a), dense(b), LaurentPoly())
    assert got == want


def test_bracket_examples():
    g = exact_generators(1, 1, 2)
    assert comm(g.H[1], g.H[2]).nnz() == 0
    lhs = scomm(g.am[1], g.ap[1])
    assert lhs == qdivdiff(g.L[1], g.Lbar[1])
    A = g.ap[2]
    assert A.grade == 1
    assert bracket(A, A, BracketKind.SCOMM) == (A @ A).scale(2)
    assert bracket(A, A, BracketKind.ACOMM, 0) == (A @ A).scale(2)
    assert bracket(A, A, "comm", 3).nnz() == (A @ A).scale(1 - Q ** 3).nnz()


def test_bracket_result_grade():
    g = exact_generators(1, 1, 2)
    assert scomm(g.ap[1], g.am[2]).grade == 1
    assert scomm(g.ap[2], g.am[2]).grade == 0


def test_graded_bracket_rejects_mixed_grade():
    g = exact_generators(1, 1, 2)
    mixed = g.ap[1] + g.ap[2]
    assert mixed.grade is None
    with pytest.raises(GradeUndefinedError):
        scomm(mixed, g.ap[1])
    comm(mixed, g.ap[1])  # ungraded brackets are fine


def test_qdivdiff_non_divisible():
    g = exact_generators(1, 1, 2)
    with pytest.raises(NonDivisibleError):
        qdivdiff(g.L[1], g.identity())


def test_qdivdiff_vacuum_eigenvalue_is_q_number_p(grid_gens):
    v = grid_gens.basis.vacuum
    p = grid_gens.params.p
    for i in grid_gens.params.indices():
        m = qdivdiff(grid_gens.L[i], grid_gens.Lbar[i])
        assert m[(v, v)] == q_number(p)


@pytest.mark.parametrize("n,m,p", GRID)
def test_L_conjugation(n, m, p):
    g = exact_generators(n, m, p)
    P = g.params
    for i in P.indices():
        for j in P.indices():
            assert g.L[i] @ g.L[j] == g.L[j] @ g.L[i]
            for s in (1, -1):
                e = -s * (1 + (-1) ** theta(i, P) * (i == j))
                assert g.L[i] @ g.a(j, s) == (g.a(j, s) @ g.L[i]).scale(Q ** e)


@given(st.sampled_from(["ap", "am", "H", "L"]), st.sampled_from(["ap", "am", "H", "L"]),
       st.integers(1, 3), st.integers(1, 3))
def test_grade_of_product_is_xor(x, y, i, j):
    g = exact_generators(2, 1, 2)
    A, B = getattr(g, x)[i], getattr(g, y)[j]
    assert (A @ B).grade == A.grade ^ B.grade


def test_numeric_example_at_07():
    # sqrt([1][2]) at q = 0.7, evaluated in 40-digit arithmetic
    mpmath.mp.dps = 40
    q = mpmath.mpf("0.7")
    ref = float(mpmath.sqrt(q + 1 / q))
    assert ref == pytest.approx(1.4589624493356327, abs=1e-15)
    am1 = build_normalized_numeric(B112, 1, -1, 0.7)
    assert am1[(B112.index((0, 0)), B112.index((1, 0)))] == pytest.approx(ref, abs=1e-12)


def test_normalization_vacuum_is_one():
    for q0 in (0.7, 1.3):
        for n, m, p in GRID:
            basis = enumerate_basis(FockParams(n, m, p))
            assert normalization(basis, q0)[basis.vacuum] == 1.0


@pytest.mark.parametrize("q0", [0, 1, -1, 1.0, -1.0])
def test_bad_q(q0):
    with pytest.raises(BadQError):
        build_normalized_numeric(B112, 1, 1, q0)
    with pytest.raises(BadQError):
        Generators.numeric(P112, q0)


def test_negative_q_rejected_when_radicand_negative():
    with pytest.raises(BadQError):
        Generators.numeric(FockParams(2, 0, 2), -2.0)


@pytest.mark.parametrize("q0", [0.7, 1.3])
@pytest.mark.parametrize("n,m,p", GRID)
def test_change_of_basis_matches_numeric(n, m, p, q0):
    g = exact_generators(n, m, p)
    gn = Generators.numeric(g.params, q0)
    for i in g.params.indices():
        for s in (1, -1):
            conj = change_of_basis(g.a(i, s), q0)
            assert (conj - gn.a(i, s)).max_abs() <= 1e-10


@pytest.mark.parametrize("q0", [0.7, 1.3, 2.5])
@pytest.mark.parametrize("n,m,p", GRID)
def test_twisted_adjoint(n, m, p, q0):
    """a_i^+ at q equals the transpose of a_i^- at 1/q in the orthonormal basis."""
    basis = enumerate_basis(FockParams(n, m, p))
    for i in basis.params.indices():
        plus = build_normalized_numeric(basis, i, 1, q0)
        minus_t = build_normalized_numeric(basis, i, -1, 1 / q0).transpose()
        assert (plus - OperatorMatrix(basis, minus_t.entries, minus_t.grade, "", q0)).max_abs() <= 1e-10


def test_plain_transpose_magnitudes_differ_when_shifted():
    # a_2^+ on (1,0,0) carries q^-1, a_2^- on (1,1,0) carries q^{+1}
    basis = enumerate_basis(FockParams(2, 1, 2))
    plus = build_normalized_numeric(basis, 2, 1, 0.7)
    minus = build_normalized_numeric(basis, 2, -1, 0.7)
    r, c = basis.index((1, 1, 0)), basis.index((1, 0, 0))
    assert abs(plus[(r, c)]) == pytest.approx(1 / 0.7)
    assert abs(minus[(c, r)]) == pytest.approx(0.7)


def test_evaluate_exact_and_float():
    g = exact_generators(1, 1, 2)
    a = g.am[1].evaluate(Fraction(2))
    assert a[(0, 2)] == Fraction(5, 2)
    assert a.mode == "exact" and a.mode_label == "exact-at-q=2"
    f = g.am[1].evaluate(2.0)
    assert f.mode == "numeric" and f[(0, 2)] == 2.5
    with pytest.raises(ValueError):
        a.evaluate(Fraction(3))


def test_domain_mismatch():
    g = exact_generators(1, 1, 2)
    with pytest.raises(ValueError):
        g.am[1] + g.am[1].evaluate(Fraction(2))
    with pytest.raises(ValueError):
        g.am[1] @ exact_generators(1, 0, 2).am[1]


def test_json_export():
    g = exact_generators(1, 1, 2)
    obj = g.am[1].to_json()
    assert obj["label"] == "a-_1" and obj["grade"] == 0 and obj["mode"] == "exact"
    assert obj["entries"][0] == [0, 2, "q + q^-1"]
    num = Generators.numeric(P112, 0.7).ap[2].to_json()
    assert num["mode"] == "numeric" and isinstance(num["entries"][0][2], float)


def test_matrix_power():
    g = exact_generators(1, 1, 2)
    assert g.ap[1] ** 0 == g.identity()
    assert g.ap[1] ** 2 == g.ap[1] @ g.ap[1]
    assert (g.ap[1] ** 3).nnz() == 0  # p = 2 bound
