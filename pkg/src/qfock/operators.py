"""Sparse generator matrices on the Fock space and the bracket calculus.

Exact matrices act on the unnormalized monomial basis
``v_r = (a_1^+)^{r_1} ... (a_{n+m}^+)^{r_{n+m}} |0>`` so that every entry is
a Laurent polynomial in ``q``. Float matrices use the orthonormal basis and
carry square roots.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Tuple

from .errors import BadQError, GradeUndefinedError, IndexRangeError, UnresolvedAtomError
from .fockspace import FockBasis, FockParams, _check_index, enumerate_basis, h_eigenvalue, theta
from .qarith import ONE, Q_MINUS_QBAR, ZERO, LaurentPoly, lp_div_exact, q_number

Entry = Tuple[int, int]


def _is_exact_q(q0) -> bool:
    return q0 is None or isinstance(q0, Fraction)


class OperatorMatrix:
    """Immutable sparse matrix over one of three scalar domains.

    ``q0 is None``: entries are :class:`LaurentPoly` (exact in ``q``).
    ``q0`` a Fraction: entries are Fractions, ``q`` specialised to ``q0``.
    ``q0`` a float: entries are floats.
    """

    __slots__ = ("basis", "_entries", "grade", "label", "q0")

    def __init__(self, basis: FockBasis, entries, grade: Optional[int] = 0, label: str = "", q0=None):
        self.basis = basis
        self.q0 = q0
        self.grade = grade
        self.label = label
        dim = basis.dim
        clean = {}
        for (r, c), v in dict(entries).items():
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexRangeError(f"entry ({r}, {c}) outside a {dim}x{dim} matrix")
            v = self.lift(v)
            if v != 0:
                clean[(r, c)] = v
        self._entries = dict(sorted(clean.items()))

    # -- construction helpers -----------------------------------------
    @classmethod
    def zeros(cls, basis, grade=0, q0=None, label="0"):
        return cls(basis, {}, grade, label, q0)

    @classmethod
    def identity(cls, basis, q0=None, label="1"):
        one = ONE if q0 is None else (Fraction(1) if isinstance(q0, Fraction) else 1.0)
        return cls(basis, {(k, k): one for k in range(basis.dim)}, 0, label, q0)

    @classmethod
    def diagonal(cls, basis, values, q0=None, label=""):
        return cls(basis, {(k, k): v for k, v in enumerate(values)}, 0, label, q0)

    def _new(self, entries, grade, label=""):
        return OperatorMatrix(self.basis, entries, grade, label, self.q0)

    # -- scalar domain ------------------------------------------------
    @property
    def mode(self) -> str:
        return "exact" if _is_exact_q(self.q0) else "numeric"

    @property
    def mode_label(self) -> str:
        if self.q0 is None:
            return "exact"
        return f"{'exact' if isinstance(self.q0, Fraction) else 'numeric'}-at-q={self.q0}"

    def lift(self, c):
        """Coerce a scalar (int, Fraction, float, LaurentPoly) into this domain."""
        if self.q0 is None:
            if isinstance(c, float):
                raise TypeError("float scalar in an exact Laurent matrix")
            return LaurentPoly.coerce(c)
        if isinstance(c, LaurentPoly):
            return c.evaluate(self.q0)
        if isinstance(self.q0, Fraction):
            if isinstance(c, float):
                raise TypeError("float scalar in an exact rational matrix")
            return Fraction(c)
        return float(c)

    def qpow(self, k: int):
        """``q**k`` as a scalar of this matrix's domain."""
        return self.lift(LaurentPoly.monomial(k))

    # -- inspection ---------------------------------------------------
    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def entries(self) -> Dict[Entry, object]:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, rc: Entry):
        v = self._entries.get(rc)
        if v is None:
            return self.lift(0)
        return v

    def nnz(self) -> int:
        return len(self._entries)

    def column(self, c: int) -> Dict[int, object]:
        return {r: v for (r, cc), v in self._entries.items() if cc == c}

    def is_diagonal(self) -> bool:
        return all(r == c for r, c in self._entries)

    def diagonal_values(self):
        return [self[(k, k)] for k in range(self.dim)]

    def max_abs(self) -> float:
        if not self._entries:
            return 0.0
        if self.q0 is None:
            raise TypeError("max_abs needs a specialised q")
        return max(abs(float(v)) for v in self._entries.values())

    def is_zero(self, tol: Optional[float] = None) -> bool:
        if not self._entries:
            return True
        if tol is None or _is_exact_q(self.q0):
            return False
        return self.max_abs() <= tol

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.basis.params == other.basis.params and self._entries == other._entries

    __hash__ = None

    def __repr__(self):
        return f"OperatorMatrix({self.label or '?'}, dim={self.dim}, nnz={self.nnz()}, grade={self.grade}, mode={self.mode_label})"

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            raise TypeError(f"expected OperatorMatrix, got {type(other).__name__}")
        if other.basis.params != self.basis.params:
            raise ValueError("operands act on different Fock spaces")
        if other.q0 != self.q0 or type(other.q0) is not type(self.q0):
            raise ValueError("operands live over different scalar domains")

    def _sum_grade(self, other):
        if not self._entries:
            return other.grade
        if not other._entries:
            return self.grade
        return self.grade if self.grade == other.grade else None

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        out = dict(self._entries)
        for rc, v in other._entries.items():
            out[rc] = out[rc] + v if rc in out else v
        return self._new(out, self._sum_grade(other))

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self._new({rc: -v for rc, v in self._entries.items()}, self.grade, self.label)

    def scale(self, c):
        c = self.lift(c)
        if c == 0:
            return self._new({}, self.grade)
        return self._new({rc: c * v for rc, v in self._entries.items()}, self.grade)

    def __mul__(self, c):
        if isinstance(c, OperatorMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        rows: Dict[int, list] = {}
        for (k, j), b in other._entries.items():
            rows.setdefault(k, []).append((j, b))
        out: Dict[Entry, object] = {}
        for (i, k), a in self._entries.items():
            for j, b in rows.get(k, ()):
                v = a * b
                out[(i, j)] = out[(i, j)] + v if (i, j) in out else v
        if self.grade is None or other.grade is None:
            grade = None
        else:
            grade = self.grade ^ other.grade
        return self._new(out, grade)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("matrix powers need a nonnegative integer exponent")
        out = OperatorMatrix.identity(self.basis, self.q0)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self):
        return self._new({(c, r): v for (r, c), v in self._entries.items()}, self.grade, self.label + "^T")

    def map_entries(self, fn: Callable, q0=None):
        """Apply ``fn`` entrywise, producing a matrix over the domain of ``q0``."""
        return OperatorMatrix(self.basis, {rc: fn(v) for rc, v in self._entries.items()}, self.grade, self.label, q0)

    def evaluate(self, q0):
        """Specialise an exact matrix at ``q = q0`` (Fraction stays exact)."""
        if self.q0 is not None:
            raise ValueError("matrix is already specialised")
        if isinstance(q0, int):
            q0 = Fraction(q0)
        if not isinstance(q0, Fraction):
            q0 = float(q0)
        return self.map_entries(lambda v: v.evaluate(q0), q0)

    def div_q_minus_qbar(self):
        """Entrywise division by ``q - q^{-1}``; exact entries must divide evenly."""
        if self.q0 is None:
            return self._new({rc: lp_div_exact(v, Q_MINUS_QBAR) for rc, v in self._entries.items()}, self.grade)
        d = self.q0 - 1 / self.q0
        if d == 0:
            raise BadQError(f"q - 1/q vanishes at q = {self.q0}")
        return self._new({rc: v / d for rc, v in self._entries.items()}, self.grade)

    # -- export -------------------------------------------------------
    def _fmt(self, v):
        if self.q0 is None:
            return str(v)
        if isinstance(v, Fraction):
            return str(v)
        return float(v)

    def entries_json(self):
        return [[r, c, self._fmt(v)] for (r, c), v in self._entries.items()]

    def to_json(self) -> dict:
        out = {
            "params": self.basis.params.to_dict(),
            "label": self.label,
            "grade": self.grade,
            "mode": self.mode,
        }
        if self.q0 is not None:
            out["q"] = str(self.q0) if isinstance(self.q0, Fraction) else self.q0
        out["entries"] = self.entries_json()
        return out

    def to_dense(self):
        zero = self.lift(0)
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for (r, c), v in self._entries.items():
            rows[r][c] = v
        return rows


# -- brackets -------------------------------------------------------------

class BracketKind(enum.Enum):
    COMM = "comm"      # [a,b]_x = ab - x ba
    ACOMM = "acomm"    # {a,b}_x = ab + x ba
    SCOMM = "scomm"    # [[a,b]]_x = ab - (-1)^{deg a deg b} x ba


def bracket(a: OperatorMatrix, b: OperatorMatrix, kind: BracketKind = BracketKind.COMM, k: int = 0):
    """Deformed bracket with deformation ``x = q**k``."""
    kind = BracketKind(kind)
    x = a.qpow(k)
    ab, ba = a @ b, b @ a
    if kind is BracketKind.COMM:
        out = ab - ba.scale(x)
    elif kind is BracketKind.ACOMM:
        out = ab + ba.scale(x)
    else:
        if a.grade is None or b.grade is None:
            which = a.label if a.grade is None else b.label
            raise GradeUndefinedError(f"graded bracket of mixed-grade operand {which or '?'}")
        sign = -1 if a.grade * b.grade else 1
        out = ab - ba.scale(x * sign)
    if a.grade is not None and b.grade is not None:
        out = a._new(out.entries, (a.grade + b.grade) % 2)
    return out


def comm(a, b, k=0):
    return bracket(a, b, BracketKind.COMM, k)


def acomm(a, b, k=0):
    return bracket(a, b, BracketKind.ACOMM, k)


def scomm(a, b, k=0):
    return bracket(a, b, BracketKind.SCOMM, k)


def qdivdiff(x: OperatorMatrix, y: OperatorMatrix) -> OperatorMatrix:
    """``(x - y) / (q - q^{-1})``."""
    return (x - y).div_q_minus_qbar()


# -- generator matrices ----------------------------------------------------

def _phase_and_shift(r, i, params: FockParams):
    """Sign ``(-1)^{theta_i (theta_1 r_1 + ... + theta_{i-1} r_{i-1})}`` and ``s = r_1 + ... + r_{i-1}``."""
    odd_before = sum(r[l - 1] for l in range(params.n + 1, i))
    sign = -1 if theta(i, params) and odd_before % 2 else 1
    return sign, sum(r[: i - 1])


def build_H(basis: FockBasis, i: int) -> OperatorMatrix:
    _check_index(i, basis.params)
    vals = [h_eigenvalue(i, r, basis.params) for r in basis]
    return OperatorMatrix.diagonal(basis, vals, label=f"H_{i}")


def build_L(basis: FockBasis, i: int, power: int = 1) -> OperatorMatrix:
    """``L_i^{power} = q^{power * H_i}`` for ``power = +1`` or ``-1``."""
    _check_index(i, basis.params)
    if power not in (1, -1):
        raise ValueError("power must be +1 or -1")
    vals = [LaurentPoly.monomial(power * h_eigenvalue(i, r, basis.params)) for r in basis]
    return OperatorMatrix.diagonal(basis, vals, label=f"L_{i}" if power == 1 else f"Lbar_{i}")


def build_a_plus(basis: FockBasis, i: int) -> OperatorMatrix:
    params = basis.params
    _check_index(i, params)
    th = theta(i, params)
    entries = {}
    for c, r in enumerate(basis):
        if th and r[i - 1]:
            continue
        t = list(r)
        t[i - 1] += 1
        row = basis.get(t)
        if row is None:
            continue
        sign, s = _phase_and_shift(r, i, params)
        entries[(row, c)] = LaurentPoly.monomial(-s, sign)
    return OperatorMatrix(basis, entries, th, f"a+_{i}")


def build_a_minus(basis: FockBasis, i: int) -> OperatorMatrix:
    params = basis.params
    _check_index(i, params)
    entries = {}
    for c, r in enumerate(basis):
        if r[i - 1] == 0:
            continue
        t = list(r)
        t[i - 1] -= 1
        sign, s = _phase_and_shift(r, i, params)
        amp = q_number(r[i - 1]) * q_number(params.p - sum(r) + 1)
        entries[(basis.index(t), c)] = amp.shift(s) * sign
    return OperatorMatrix(basis, entries, theta(i, params), f"a-_{i}")


def _check_numeric_q(q0: float) -> float:
    q0 = float(q0)
    if q0 in (0.0, 1.0, -1.0) or not math.isfinite(q0):
        raise BadQError(f"numeric mode needs generic q, got {q0}")
    return q0


def _qnum_float(x: int, q0: float) -> float:
    return (q0 ** x - q0 ** -x) / (q0 - 1 / q0)


def _sqrt(x: float, q0) -> float:
    if x < -1e-300:
        raise BadQError(f"negative radicand {x} at q = {q0}; the orthonormal basis needs [x] >= 0")
    return math.sqrt(max(x, 0.0))


def normalization(basis: FockBasis, q0: float):
    """Diagonal ``D`` with ``|p; r) = D_rr v_r``."""
    q0 = _check_numeric_q(q0)
    p = basis.params.p

    def fact(x):
        out = 1.0
        for k in range(1, x + 1):
            out *= _qnum_float(k, q0)
        return out

    out = []
    for r in basis:
        den = fact(p)
        for x in r:
            den *= fact(x)
        out.append(_sqrt(fact(p - sum(r)) / den, q0))
    return out


def build_normalized_numeric(basis: FockBasis, i: int, sign: int, q0: float) -> OperatorMatrix:
    """Float matrix of ``a_i^{sign}`` on the orthonormal basis, at ``q = q0``."""
    params = basis.params
    _check_index(i, params)
    q0 = _check_numeric_q(q0)
    p = params.p
    th = theta(i, params)
    entries = {}
    for c, r in enumerate(basis):
        phase, s = _phase_and_shift(r, i, params)
        t = list(r)
        tot = sum(r)
        if sign > 0:
            t[i - 1] += 1
            row = basis.get(t)
            if row is None:
                continue
            amp = q0 ** -s * (1 - th * r[i - 1]) * _sqrt(_qnum_float(r[i - 1] + 1, q0) * _qnum_float(p - tot, q0), q0)
        else:
            if r[i - 1] == 0:
                continue
            t[i - 1] -= 1
            row = basis.index(t)
            amp = q0 ** s * _sqrt(_qnum_float(r[i - 1], q0) * _qnum_float(p - tot + 1, q0), q0)
        entries[(row, c)] = phase * amp
    return OperatorMatrix(basis, entries, th, f"a{'+' if sign > 0 else '-'}_{i}", q0)


def change_of_basis(a_exact: OperatorMatrix, q0: float) -> OperatorMatrix:
    """``D^{-1} A(q0) D`` mapping an exact matrix into the orthonormal basis."""
    d = normalization(a_exact.basis, q0)
    ev = a_exact.evaluate(float(q0))
    return OperatorMatrix(
        a_exact.basis, {(r, c): v * d[c] / d[r] for (r, c), v in ev.items()}, a_exact.grade, a_exact.label, float(q0)
    )


# -- generator context ----------------------------------------------------

ATOMS = ("Ap", "Am", "H", "L", "Linv", "E", "F", "Hch", "K", "Kinv")
CHEVALLEY_ATOMS = ("E", "F", "Hch", "K", "Kinv")


@dataclass
class Generators:
    """All generator matrices of one Fock space over a single scalar domain."""

    basis: FockBasis
    q0: object = None
    ap: Dict[int, OperatorMatrix] = field(default_factory=dict)
    am: Dict[int, OperatorMatrix] = field(default_factory=dict)
    H: Dict[int, OperatorMatrix] = field(default_factory=dict)
    L: Dict[int, OperatorMatrix] = field(default_factory=dict)
    Lbar: Dict[int, OperatorMatrix] = field(default_factory=dict)
    chevalley: Optional[object] = None

    @property
    def params(self) -> FockParams:
        return self.basis.params

    @property
    def mode_label(self) -> str:
        return self.identity().mode_label

    @classmethod
    def exact(cls, params: FockParams) -> "Generators":
        basis = enumerate_basis(params)
        g = cls(basis)
        for i in params.indices():
            g.ap[i] = build_a_plus(basis, i)
            g.am[i] = build_a_minus(basis, i)
            g.H[i] = build_H(basis, i)
            g.L[i] = build_L(basis, i, 1)
            g.Lbar[i] = build_L(basis, i, -1)
        return g

    @classmethod
    def numeric(cls, params: FockParams, q0: float) -> "Generators":
        """Orthonormal-basis float matrices built directly from the amplitude formulas."""
        basis = enumerate_basis(params)
        q0 = _check_numeric_q(q0)
        g = cls(basis, q0)
        for i in params.indices():
            g.ap[i] = build_normalized_numeric(basis, i, +1, q0)
            g.am[i] = build_normalized_numeric(basis, i, -1, q0)
            h = [h_eigenvalue(i, r, params) for r in basis]
            g.H[i] = OperatorMatrix.diagonal(basis, [float(x) for x in h], q0, f"H_{i}")
            g.L[i] = OperatorMatrix.diagonal(basis, [q0 ** x for x in h], q0, f"L_{i}")
            g.Lbar[i] = OperatorMatrix.diagonal(basis, [q0 ** -x for x in h], q0, f"Lbar_{i}")
        return g

    def at(self, q0) -> "Generators":
        """Specialise every exact matrix at ``q = q0``."""
        if self.q0 is not None:
            raise ValueError("generators already specialised")
        if isinstance(q0, int):
            q0 = Fraction(q0)
        g = Generators(self.basis, q0)
        for name in ("ap", "am", "H", "L", "Lbar"):
            getattr(g, name).update({i: mtx.evaluate(q0) for i, mtx in getattr(self, name).items()})
        return g

    def a(self, i: int, sign: int) -> OperatorMatrix:
        return self.ap[i] if sign > 0 else self.am[i]

    def identity(self) -> OperatorMatrix:
        return OperatorMatrix.identity(self.basis, self.q0)

    def zeros(self, grade=0) -> OperatorMatrix:
        return OperatorMatrix.zeros(self.basis, grade, self.q0)

    def qpow(self, k: int):
        return self.identity().qpow(k)

    def lookup(self, name: str, i: int) -> OperatorMatrix:
        """Resolve a named atom such as ``("Ap", 2)``."""
        if not 1 <= i <= self.params.size:
            raise IndexRangeError(f"atom {name}({i}) index outside 1..{self.params.size}")
        table = {"Ap": self.ap, "Am": self.am, "H": self.H, "L": self.L, "Linv": self.Lbar}
        if name in table:
            return table[name][i]
        if name in CHEVALLEY_ATOMS:
            if self.chevalley is None:
                raise UnresolvedAtomError(f"{name}({i}) needs Chevalley generators; run the reconstruction first")
            return self.chevalley.lookup(name, i)
        raise UnresolvedAtomError(f"unknown atom {name}")


def exact_generators(params: FockParams) -> Generators:
    return Generators.exact(params)


def iter_generators(g: Generators) -> Iterable[Tuple[str, OperatorMatrix]]:
    for i in g.params.indices():
        yield f"a+_{i}", g.ap[i]
        yield f"a-_{i}", g.am[i]
        yield f"H_{i}", g.H[i]
        yield f"L_{i}", g.L[i]
        yield f"Lbar_{i}", g.Lbar[i]
