"""Hypothesis strategies for random expression ASTs."""
from hypothesis import strategies as st

from qfock.exprlang import Atom, Bracket, Diff, Neg, Power, Product, QDivDiff, Scalar, Sum, fold
from qfock.qarith import LaurentPoly

ATOM_NAMES = ("Ap", "Am", "H", "L", "Linv", "E", "F", "Hch", "K", "Kinv")
MATRIX_ATOMS = ("Ap", "Am", "H", "L", "Linv")

_coef = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalars = st.dictionaries(st.integers(-2, 2), _coef, max_size=3).map(lambda d: Scalar(LaurentPoly(d)))


def atoms(names=ATOM_NAMES, max_index=3):
    return st.builds(Atom, st.sampled_from(names), st.integers(1, max_index))


def _extend(children, brackets):
    return st.one_of(
        st.builds(Sum, children, children),
        st.builds(Diff, children, children),
        st.builds(Product, children, children),
        st.builds(Neg, children),
        st.builds(Power, children, st.integers(0, 3)),
        st.builds(Bracket, st.sampled_from(brackets), children, children, st.integers(-2, 2)),
        st.builds(QDivDiff, children, children),
    )


def asts(names=ATOM_NAMES, max_index=3, brackets=("comm", "acomm", "scomm"), max_leaves=12):
    """Folded ASTs; folding is what the parser does, so only folded trees round-trip."""
    leaves = st.one_of(atoms(names, max_index), scalars)
    return st.recursive(leaves, lambda c: _extend(c, brackets), max_leaves=max_leaves).map(fold)


def matrix_asts(max_index, max_leaves=6):
    """Evaluable trees: no graded brackets, no qdivdiff, small powers."""
    leaves = st.one_of(atoms(MATRIX_ATOMS, max_index), scalars)

    def ext(c):
        return st.one_of(
            st.builds(Sum, c, c),
            st.builds(Diff, c, c),
            st.builds(Product, c, c),
            st.builds(Neg, c),
            st.builds(Power, c, st.integers(0, 2)),
            st.builds(Bracket, st.sampled_from(("comm", "acomm")), c, c, st.integers(-2, 2)),
        )

    return st.recursive(leaves, ext, max_leaves=max_leaves).map(fold)
