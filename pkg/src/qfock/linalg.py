"""Sparse Gauss-Jordan elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Sequence

from .errors import InconsistentError, UnderdeterminedError

Row = Dict[int, Fraction]


def rref(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction]):
    """Reduce ``rows x = rhs``. Returns ``(pivots, reduced_rows, reduced_rhs)``.

    ``pivots`` maps a pivot column to the index of its row in the output.
    Raises :class:`InconsistentError` when a zero row has nonzero right side.
    """
    work = [({k: Fraction(v) for k, v in r.items() if v}, Fraction(b)) for r, b in zip(rows, rhs)]
    pivots: Dict[int, int] = {}
    done: List[tuple] = []
    for row, b in work:
        # eliminate known pivots from the incoming row
        for col in [c for c in row if c in pivots]:
            if col not in row:
                continue
            prow, pb = done[pivots[col]]
            f = row[col]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b -= f * pb
        if not row:
            if b != 0:
                raise InconsistentError("linear system has no solution")
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {k: v * inv for k, v in row.items()}
        b *= inv
        # back-substitute into earlier pivot rows
        for idx, (prow, pb) in enumerate(done):
            f = prow.get(col)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                done[idx] = (prow, pb - f * b)
        pivots[col] = len(done)
        done.append((row, b))
    return pivots, [r for r, _ in done], [b for _, b in done]


def solve_unique(rows, rhs, nvars: int) -> List[Fraction]:
    """Unique solution of a sparse rational system with ``nvars`` unknowns."""
    pivots, red, b = rref(rows, rhs)
    if len(pivots) < nvars:
        raise UnderdeterminedError(f"solution space has dimension {nvars - len(pivots)}")
    return [b[pivots[c]] for c in range(nvars)]


def build_system(columns: Sequence[Mapping[Hashable, Fraction]], target: Mapping[Hashable, Fraction]):
    """Turn column images ``A e_j`` and a target vector (both keyed sparsely)
    into row-major equations."""
    keys = {}
    for col in columns:
        for k in col:
            keys.setdefault(k, len(keys))
    for k in target:
        keys.setdefault(k, len(keys))
    rows: List[Row] = [dict() for _ in keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows[keys[k]][j] = Fraction(v)
    rhs = [Fraction(0)] * len(keys)
    for k, v in target.items():
        rhs[keys[k]] = Fraction(v)
    return rows, rhs
