"""Exact Fock representations of U_q[sl(n+1|m)] in creation/annihilation generators."""
from .fockspace import FockBasis, FockParams, dim_formula, enumerate_basis, h_eigenvalue, theta
from .operators import BracketKind, Generators, OperatorMatrix, bracket
from .qarith import LaurentPoly, q_factorial, q_number

__all__ = [
    "BracketKind",
    "FockBasis",
    "FockParams",
    "Generators",
    "LaurentPoly",
    "OperatorMatrix",
    "bracket",
    "dim_formula",
    "enumerate_basis",
    "h_eigenvalue",
    "q_factorial",
    "q_number",
    "theta",
]
