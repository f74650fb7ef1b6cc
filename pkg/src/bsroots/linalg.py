"""Exact linear algebra over the rationals.

Rows are cleared of denominators and reduced with fraction-free integer
row operations, removing the content of each row as we go so entries stay
small.  Pivots are chosen deterministically: columns left to right, and
within a column the first remaining row (in input order) with a nonzero
entry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import NoSolution

SparseRow = Dict[int, int]


def _integer_row(row: Dict[int, Fraction]) -> SparseRow:
    den = 1
    for v in row.values():
        den = math.lcm(den, Fraction(v).denominator)
    out = {}
    for c, v in row.items():
        v = Fraction(v)
        if v:
            out[c] = v.numerator * (den // v.denominator)
    return _primitive(out)


def _primitive(row: SparseRow) -> SparseRow:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


@dataclass
class RowEchelon:
    """Reduced row echelon form.

    ``rows[k]`` is the pivot row for ``pivots[k]`` scaled so the pivot is 1;
    ``zero_rows`` collects the reduced rows that ended with no pivot in the
    variable block (nonempty only when an augmented column is present).
    """

    ncols: int
    pivots: List[int]
    rows: List[Dict[int, Fraction]]
    zero_rows: List[Dict[int, Fraction]]

    def pivot_row(self, col: int):
        return self._index.get(col)

    def __post_init__(self):
        self._index = {p: r for p, r in zip(self.pivots, self.rows)}


def rref_sparse(rows: Sequence[Dict[int, Fraction]], ncols: int, pivot_limit: int | None = None) -> RowEchelon:
    """Reduce sparse rational rows; only columns ``< pivot_limit`` may pivot."""
    limit = ncols if pivot_limit is None else pivot_limit
    work = [_integer_row(r) for r in rows]
    work = [r for r in work if r]
    pivots: List[int] = []
    pivot_rows: List[SparseRow] = []
    remaining = list(range(len(work)))
    for col in range(limit):
        chosen = None
        for idx, rid in enumerate(remaining):
            if col in work[rid]:
                chosen = idx
                break
        if chosen is None:
            continue
        rid = remaining.pop(chosen)
        prow = work[rid]
        p = prow[col]
        if p < 0:
            prow = {c: -v for c, v in prow.items()}
            p = -p
            work[rid] = prow
        for other in remaining:
            _eliminate(work, other, prow, col, p)
        for k, other_row in enumerate(pivot_rows):
            if col in other_row:
                pivot_rows[k] = _eliminate_row(other_row, prow, col, p)
        pivots.append(col)
        pivot_rows.append(prow)
    rows_q = []
    for prow, col in zip(pivot_rows, pivots):
        p = prow[col]
        rows_q.append({c: Fraction(v, p) for c, v in sorted(prow.items())})
    zero_rows = []
    for rid in remaining:
        r = work[rid]
        if r:
            zero_rows.append({c: Fraction(v) for c, v in sorted(r.items())})
    return RowEchelon(ncols, pivots, rows_q, zero_rows)


def _eliminate_row(row: SparseRow, prow: SparseRow, col: int, p: int) -> SparseRow:
    q = row[col]
    g = math.gcd(p, q)
    a, b = p // g, q // g
    out = {c: a * v for c, v in row.items()} if a != 1 else dict(row)
    for c, v in prow.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


def _eliminate(work, rid, prow, col, p):
    row = work[rid]
    if col in row:
        work[rid] = _eliminate_row(row, prow, col, p)


@dataclass(frozen=True)
class AffineSolution:
    particular: Tuple[Fraction, ...]
    kernel: Tuple[Tuple[Fraction, ...], ...]


def solve_linear_exact(A: Sequence[Sequence], rhs: Sequence) -> AffineSolution:
    """Solve ``A x = rhs`` exactly.

    Returns a particular solution (free variables set to zero) and a basis
    of the homogeneous kernel, one vector per free column in increasing
    column order, each scaled so its first nonzero entry is 1.  Raises
    :class:`NoSolution` for inconsistent systems.
    """
    nrows = len(A)
    if len(rhs) != nrows:
        raise ValueError("rhs length does not match the number of rows")
    ncols = len(A[0]) if nrows else 0
    rows = []
    for i, r in enumerate(A):
        if len(r) != ncols:
            raise ValueError(f"row {i} has {len(r)} entries, expected {ncols}")
        row = {j: Fraction(v) for j, v in enumerate(r) if Fraction(v)}
        b = Fraction(rhs[i])
        if b:
            row[ncols] = b
        rows.append(row)
    ech = rref_sparse(rows, ncols + 1, pivot_limit=ncols)
    if any(ech.zero_rows):
        raise NoSolution("inconsistent linear system")
    pivset = set(ech.pivots)
    free = [j for j in range(ncols) if j not in pivset]
    particular = [Fraction(0)] * ncols
    for col, row in zip(ech.pivots, ech.rows):
        particular[col] = row.get(ncols, Fraction(0))
    kernel = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for col, row in zip(ech.pivots, ech.rows):
            if fcol in row:
                v[col] = -row[fcol]
        lead = next(x for x in v if x)
        kernel.append(tuple(x / lead for x in v))
    return AffineSolution(tuple(particular), tuple(kernel))
