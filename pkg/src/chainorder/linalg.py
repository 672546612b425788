"""Exact integer linear algebra: fraction-free elimination, rank, and solving.

All routines work on plain Python ints (arbitrary precision), so there is no
overflow and no floating point anywhere.
"""

from __future__ import annotations

from typing import Sequence


def int_matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            for c in range(col, ncols):
                m[r][c] = (m[r][c] * p - f * m[rank][c]) // prev
        prev = p
        rank += 1
        if rank == min(nrows, ncols):
            break
    return rank


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span of a nonempty list of integer points."""
    if not points:
        raise ValueError("affine_rank needs at least one point")
    base = points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return int_matrix_rank(diffs)
