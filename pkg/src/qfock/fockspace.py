"""Order-p Fock basis: occupation vectors, grading and Cartan eigenvalues."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Tuple

from .errors import IndexRangeError

OccupationVector = Tuple[int, ...]


@dataclass(frozen=True)
class FockParams:
    """``n`` even pairs, ``m`` odd pairs, statistics of order ``p``."""

    n: int
    m: int
    p: int

    def __post_init__(self):
        for name in ("n", "m", "p"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")
        if self.n + self.m < 1:
            raise ValueError("need n + m >= 1")

    @property
    def size(self) -> int:
        return self.n + self.m

    def indices(self) -> range:
        return range(1, self.size + 1)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "p": self.p}

    def warnings(self) -> List[str]:
        if self.p == 0:
            return ["p=0 admitted as the trivial one-dimensional module; outside the listed range p=1,2,..."]
        return []


def theta(i: int, params: FockParams) -> int:
    """Grading: 0 for ``i <= n``, 1 for ``n < i <= n+m``. ``i = 0`` is even."""
    if not 0 <= i <= params.size:
        raise IndexRangeError(f"theta index {i} outside 0..{params.size}")
    return 0 if i <= params.n else 1


def _check_index(i: int, params: FockParams) -> None:
    if not isinstance(i, int) or not 1 <= i <= params.size:
        raise IndexRangeError(f"generator index {i} outside 1..{params.size}")


def is_admissible(r: OccupationVector, params: FockParams) -> bool:
    if len(r) != params.size or any(x < 0 for x in r):
        return False
    if any(x > 1 for x in r[params.n:]):
        return False
    return sum(r) <= params.p


@dataclass(frozen=True)
class FockBasis:
    params: FockParams
    states: Tuple[OccupationVector, ...]
    _index: Dict[OccupationVector, int] = field(repr=False, compare=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, r):
        return tuple(r) in self._index

    def index(self, r) -> int:
        try:
            return self._index[tuple(r)]
        except KeyError:
            raise IndexRangeError(f"{tuple(r)} is not a basis state for {self.params}") from None

    def get(self, r):
        return self._index.get(tuple(r))

    @property
    def vacuum(self) -> int:
        return self._index[(0,) * self.params.size]

    def to_json(self) -> dict:
        return {"params": self.params.to_dict(), "states": [list(r) for r in self.states]}


def enumerate_basis(params: FockParams) -> FockBasis:
    """All occupation vectors with even entries unbounded, odd entries in {0,1}
    and total at most ``p``, in ascending lexicographic order."""
    n, m, p = params.n, params.m, params.p

    def rec(prefix, remaining, k):
        if k == n + m:
            yield prefix
            return
        cap = remaining if k < n else min(1, remaining)
        for v in range(cap + 1):
            yield from rec(prefix + (v,), remaining - v, k + 1)

    states = tuple(rec((), p, 0))
    return FockBasis(params, states, {r: k for k, r in enumerate(states)})


def dim_formula(params: FockParams) -> int:
    n, m, p = params.n, params.m, params.p
    return sum(comb(m, f) * comb(n + p - f, n) for f in range(min(m, p) + 1))


def h_eigenvalue(i: int, r: OccupationVector, params: FockParams) -> int:
    """Eigenvalue of ``H_i`` on the state ``r``: ``p - (-1)^theta_i r_i - sum(r)``."""
    _check_index(i, params)
    sign = -1 if theta(i, params) else 1
    return params.p - sign * r[i - 1] - sum(r)

