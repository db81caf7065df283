"""Exact Laurent polynomials in ``q`` over the rationals, plus q-numbers.

Rationals are :class:`fractions.Fraction`. A :class:`LaurentPoly` is an
immutable map ``exponent -> nonzero Fraction``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import NonDivisibleError, ZeroPointError

Rational = Fraction
Scalar = Union[int, Fraction, "LaurentPoly"]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[Tuple[int, object]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: Dict[int, Fraction] = {}
        for e, c in terms:
            if not isinstance(e, int):
                raise TypeError("exponents must be integers")
            acc[e] = acc.get(e, Fraction(0)) + _as_fraction(c)
        self._terms = {e: c for e, c in sorted(acc.items(), reverse=True) if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.constant(_as_fraction(x))

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(0, Fraction(0))

    @property
    def max_exp(self) -> int:
        return next(iter(self._terms))

    @property
    def min_exp(self) -> int:
        return next(reversed(self._terms))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------
    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        other = LaurentPoly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return ZERO
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise NonDivisibleError(f"negative power of non-unit {self}")
            (e, c), = self._terms.items()
            return LaurentPoly({e * k: c ** k})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The image under ``q -> q^{-1}``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def div_exact(self, other) -> "LaurentPoly":
        return lp_div_exact(self, other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return lp_div_exact(self, other)
        return NotImplemented

    def evaluate(self, q0):
        return lp_evaluate(self, q0)

    # -- text form ----------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                power = "q" if e == 1 else f"q^{e}"
                body = power if a == 1 else f"{a}*{power}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_laurent(text)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})
QBAR = LaurentPoly({-1: 1})
Q_MINUS_QBAR = Q - QBAR


def lp_div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``a / b``; raises :class:`NonDivisibleError` if none exists."""
    a = LaurentPoly.coerce(a)
    b = LaurentPoly.coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    # Reduce to ordinary polynomials with nonzero constant terms.
    va, vb = a.min_exp, b.min_exp
    rem = {e - va: c for e, c in a.items()}
    den = {e - vb: c for e, c in b.items()}
    dden = max(den)
    lead = den[dden]
    quot: Dict[int, Fraction] = {}
    while rem:
        top = max(rem)
        if top < dden:
            break
        k = top - dden
        c = rem[top] / lead
        quot[k] = c
        for e, d in den.items():
            v = rem.get(e + k, 0) - c * d
            if v:
                rem[e + k] = v
            else:
                rem.pop(e + k, None)
    if rem:
        raise NonDivisibleError(f"({a}) is not divisible by ({b})")
    return LaurentPoly(quot).shift(va - vb)


def q_number(x: int) -> LaurentPoly:
    """``[x] = (q^x - q^-x)/(q - q^-1)`` as a Laurent polynomial."""
    sign = 1 if x >= 0 else -1
    ax = abs(x)
    return LaurentPoly({ax - 1 - 2 * j: sign for j in range(ax)})


def q_factorial(x: int) -> LaurentPoly:
    if x < 0:
        raise ValueError("q_factorial needs a nonnegative argument")
    out = ONE
    for k in range(1, x + 1):
        out = out * q_number(k)
    return out


def lp_evaluate(a: LaurentPoly, q0):
    """Substitute ``q = q0``. Exact for rational ``q0``, float otherwise."""
    if q0 == 0:
        raise ZeroPointError("cannot evaluate a Laurent polynomial at q = 0")
    if isinstance(q0, int):
        q0 = Fraction(q0)
    if isinstance(q0, Fraction):
        total = Fraction(0)
        for e, c in a.items():
            total += c * q0 ** e
        return total
    q0 = float(q0)
    return sum((float(c) * q0 ** e for e, c in a.items()), 0.0)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)(?:\s*\*\s*(?P<q1>q(?:\s*\^\s*(?P<e1>[+-]?\d+))?))?
          |(?P<q2>q(?:\s*\^\s*(?P<e2>[+-]?\d+))?)
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the canonical text form, e.g. ``"-2*q^3 + 1 + 3/2*q^-1"``."""
    pos = 0
    terms = []
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial string")
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (not first and m.group("sign") is None):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = Fraction(m.group("coef"))
            if m.group("q1") is None:
                exp = 0
            else:
                exp = int(m.group("e1")) if m.group("e1") is not None else 1
        else:
            coef = Fraction(1)
            exp = int(m.group("e2")) if m.group("e2") is not None else 1
        terms.append((exp, sign * coef))
        pos = m.end()
    return LaurentPoly(terms)
