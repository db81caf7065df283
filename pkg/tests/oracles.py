"""Independent reference computations used to freeze or cross-check expected values.

Nothing here imports the code paths it is used to check.
"""
import itertools
from fractions import Fraction


def convolve(a: dict, b: dict) -> dict:
    """Product of two ``{exponent: coefficient}`` maps by brute-force double loop."""
    out = {}
    for (e1, c1), (e2, c2) in itertools.product(a.items(), b.items()):
        out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def eval_terms(terms: dict, q0):
    return sum(Fraction(c) * Fraction(q0) ** e for e, c in terms.items())


def qnum_closed_form(x: int, q0: Fraction) -> Fraction:
    """``(q^x - q^-x)/(q - q^-1)`` by direct rational substitution."""
    q0 = Fraction(q0)
    return (q0 ** x - q0 ** -x) / (q0 - 1 / q0)


def box_states(n, m, p):
    """Filter the full box ``0..p`` per coordinate."""
    out = []
    for r in itertools.product(range(p + 1), repeat=n + m):
        if sum(r) <= p and all(x <= 1 for x in r[n:]):
            out.append(r)
    return out


def dense(mtx):
    return [[mtx[(r, c)] for c in range(mtx.dim)] for r in range(mtx.dim)]


def dense_mul(a, b, zero):
    """Schoolbook product of two square lists-of-lists."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out
