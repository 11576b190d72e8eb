"""Last passage percolation on Young diagrams.

``L[i,j] = L(1,1; i,j)`` is the heaviest down-right path from the top-left
box, ``Lstar[i,j] = L(i,1; 1,j)`` the heaviest up-right path between the
other two corners of the rectangle ``[1,i] x [1,j]``. Scalar functions work
on :class:`Tableau`; the ``*_batch`` variants take a stack of staircase
weight arrays and run the same recursions across trials with numpy.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .combinatorics import Tableau, YoungDiagram

__all__ = [
    "lpp_tableau",
    "dual_lpp_tableau",
    "lpp_point_to_point",
    "vn_wn_from_weights",
    "staircase_boxes",
    "lpp_batch",
    "dual_corners_batch",
]


def lpp_tableau(x: Tableau) -> Tableau:
    L = []
    for i, row in enumerate(x.rows):
        out = []
        for j, v in enumerate(row):
            up = L[i - 1][j] if i > 0 else 0
            left = out[j - 1] if j > 0 else 0
            out.append(v + max(up, left))
        L.append(out)
    return Tableau(tuple(tuple(r) for r in L))


def dual_lpp_tableau(x: Tableau) -> Tableau:
    rows = x.rows
    out = [[None] * len(r) for r in rows]
    for s in range(len(rows)):
        width = len(rows[s])
        # up-right recursion from (s, 0) through rows s, s-1, ..., 0
        below = None
        for r in range(s, -1, -1):
            cur = []
            for j in range(width):
                cands = []
                if below is not None:
                    cands.append(below[j])
                if j > 0:
                    cands.append(cur[j - 1])
                cur.append(rows[r][j] + (max(cands) if cands else 0))
            below = cur
        out[s] = below
    return Tableau(tuple(tuple(r) for r in out))


def lpp_point_to_point(x: Tableau, a: int, b: int, c: int, d: int):
    """Heaviest minimal-length lattice path between boxes by enumeration."""
    shape = x.shape
    lo_i, hi_i = min(a, c), max(a, c)
    lo_j, hi_j = min(b, d), max(b, d)
    for i in range(lo_i, hi_i + 1):
        for j in range(lo_j, hi_j + 1):
            if (i, j) not in shape:
                raise ValueError(f"rectangle between ({a},{b}) and ({c},{d}) leaves the shape")
    di = 1 if c >= a else -1
    dj = 1 if d >= b else -1
    vert, horiz = abs(c - a), abs(d - b)
    best = None
    for pos in combinations(range(vert + horiz), vert):
        i, j = a, b
        total = x[(i, j)]
        for step in range(vert + horiz):
            if step in pos:
                i += di
            else:
                j += dj
            total += x[(i, j)]
        if best is None or total > best:
            best = total
    return best


def _staircase_order(shape: YoungDiagram) -> int:
    n = len(shape.rows) + 1
    if shape.rows != tuple(range(n - 1, 0, -1)):
        raise ValueError(f"shape {shape.rows} is not a staircase")
    return n


def vn_wn_from_weights(x: Tableau) -> tuple[tuple, tuple]:
    n = _staircase_order(x.shape)
    L = lpp_tableau(x)
    Ls = dual_lpp_tableau(x)
    V = tuple(L[(n - k, k)] for k in range(1, n))
    W = tuple(Ls[(n - k, k)] for k in range(1, n))
    return V, W


def staircase_boxes(n: int) -> list[tuple[int, int]]:
    """Row-major 0-based boxes of the order-n staircase (batch column order)."""
    return [(i, j) for i in range(n - 1) for j in range(n - 1 - i)]


def _dense(weights: np.ndarray, n: int) -> np.ndarray:
    T = weights.shape[0]
    X = np.zeros((T, n - 1, n - 1), dtype=weights.dtype)
    idx = staircase_boxes(n)
    rows = np.array([b[0] for b in idx])
    cols = np.array([b[1] for b in idx])
    X[:, rows, cols] = weights
    return X


def lpp_batch(weights: np.ndarray, n: int) -> np.ndarray:
    """LPP tableaux for a ``(T, N)`` stack of staircase weights.

    Returns a dense ``(T, n-1, n-1)`` array; entries outside the staircase
    are left at zero.
    """
    X = _dense(np.asarray(weights), n)
    L = np.zeros_like(X)
    for i in range(n - 1):
        for j in range(n - 1 - i):
            up = L[:, i - 1, j] if i > 0 else 0
            left = L[:, i, j - 1] if j > 0 else 0
            L[:, i, j] = X[:, i, j] + np.maximum(up, left)
    return L


def dual_corners_batch(weights: np.ndarray, n: int) -> np.ndarray:
    """``W`` for a stack of staircase weights: ``Lstar`` at ``(n-k, k)``."""
    X = _dense(np.asarray(weights), n)
    T = X.shape[0]
    W = np.empty((T, n - 1), dtype=X.dtype)
    for k in range(1, n):
        m = n - k
        # flip the m x k rectangle upside down and run the primal recursion
        R = X[:, m - 1::-1, :k]
        D = np.zeros_like(R)
        for i in range(m):
            for j in range(k):
                up = D[:, i - 1, j] if i > 0 else 0
                left = D[:, i, j - 1] if j > 0 else 0
                D[:, i, j] = R[:, i, j] + np.maximum(up, left)
        W[:, k - 1] = D[:, m - 1, k - 1]
    return W
