"""RSK and Burge maps through Greene-type path maxima, and Edelman-Greene.

The RSK (resp. Burge) image ``r`` of a tableau ``x`` is pinned down by its
partial diagonal sums at border boxes: for a border box ``(m, n)``,
``r[m,n] + r[m-1,n-1] + ... + r[m-k+1,n-k+1]`` is the largest weight of ``k``
non-intersecting down-right paths from ``(1,1..k)`` to ``(m,n-k+1..n)``
(resp. up-right paths from ``(m,1..k)`` to ``(1,n-k+1..n)``).
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, Sequence

from .combinatorics import (
    SortingNetwork,
    Tableau,
    YoungDiagram,
    staircase,
)

__all__ = [
    "border_strip",
    "greene_invariant",
    "greene_invariant_bruteforce",
    "rsk",
    "burge",
    "omega",
    "edelman_greene",
    "edelman_greene_inverse",
    "eg_insert",
]

CORNER = "corner"
INNER = "inner-corner"
PLAIN = "plain"


def border_strip(shape: YoungDiagram) -> list[tuple[tuple[int, int], str]]:
    """Border boxes from bottom-left to top-right, tagged by class."""
    corners = shape.corners()
    inner = {(corners[c + 1][0], corners[c][1]) for c in range(len(corners) - 1)}
    out = []
    for box in shape.border_strip():
        if shape.is_corner(box):
            tag = CORNER
        elif box in inner:
            tag = INNER
        else:
            tag = PLAIN
        out.append((box, tag))
    return out


def _rectangle(x: Tableau, m: int, n: int, dual: bool) -> list[list]:
    rect = [list(x.rows[i][:n]) for i in range(m)]
    if dual:
        rect.reverse()
    return rect


def _check_args(x: Tableau, m: int, n: int, k: int):
    if not x.shape.is_border((m, n)):
        raise ValueError(f"({m},{n}) is not a border box of shape {x.shape.rows}")
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k={k} outside 1..{min(m, n)}")


def _max_paths(rect: list[list], k: int):
    """Max weight of k non-intersecting down-right paths in a full rectangle.

    Path ``i`` runs from ``(0, i)`` to ``(m-1, n-k+i)``. Row by row, the state
    is the tuple of columns where each path drops to the next row; a path's
    segment in row ``r`` spans ``[c_prev[i], c[i]]`` and disjointness forces
    ``c_prev[i] <= c[i] < c_prev[i+1]``, i.e. ``c[i-1] < c_prev[i] <= c[i]``.
    """
    m, n = len(rect), len(rect[0])
    prefix = []
    for row in rect:
        acc = [0]
        for v in row:
            acc.append(acc[-1] + v)
        prefix.append(acc)

    dp = {tuple(range(k)): 0}
    for r in range(m):
        pre = prefix[r]
        last = r == m - 1
        targets = [tuple(range(n - k, n))] if last else combinations(range(n), k)
        new = {}
        for c in targets:
            ranges = [range(c[i - 1] + 1 if i else 0, c[i] + 1) for i in range(k)]
            best = None
            gain_hi = sum(pre[ci + 1] for ci in c)
            for prev in product(*ranges):
                base = dp.get(prev)
                if base is None:
                    continue
                val = base + gain_hi - sum(pre[p] for p in prev)
                if best is None or val > best:
                    best = val
            if best is not None:
                new[c] = best
        dp = new
    return dp[tuple(range(n - k, n))]


def greene_invariant(x: Tableau, m: int, n: int, k: int, dual: bool = False):
    """Largest total weight of a k-path family ending at border box ``(m, n)``."""
    _check_args(x, m, n, k)
    return _max_paths(_rectangle(x, m, n, dual), k)


def _paths(start, end) -> Iterator[tuple[tuple[int, int], ...]]:
    (a, b), (c, d) = start, end
    downs, rights = c - a, d - b
    for pos in combinations(range(downs + rights), downs):
        i, j = a, b
        path = [(i, j)]
        for step in range(downs + rights):
            if step in pos:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield tuple(path)


def greene_invariant_bruteforce(x: Tableau, m: int, n: int, k: int, dual: bool = False):
    """Same quantity as :func:`greene_invariant` by listing every path family."""
    _check_args(x, m, n, k)
    rect = _rectangle(x, m, n, dual)
    families = [list(_paths((0, i), (m - 1, n - k + i))) for i in range(k)]
    best = None
    for fam in product(*families):
        seen = set()
        total = 0
        for path in fam:
            for box in path:
                if box in seen:
                    break
                seen.add(box)
                total += rect[box[0]][box[1]]
            else:
                continue
            break
        else:
            if best is None or total > best:
                best = total
    return best


def _diagonal_transform(x: Tableau, dual: bool) -> Tableau:
    shape = x.shape
    out = [[None] * r for r in shape.rows]
    for m, n in shape.border_strip():
        rect = _rectangle(x, m, n, dual)
        prev = 0
        for k in range(1, min(m, n) + 1):
            g = _max_paths(rect, k)
            out[m - k][n - k] = g - prev
            prev = g
    return Tableau(tuple(tuple(r) for r in out))


def rsk(x: Tableau) -> Tableau:
    return _diagonal_transform(x, dual=False)


def burge(x: Tableau) -> Tableau:
    return _diagonal_transform(x, dual=True)


def omega(shape: YoungDiagram) -> Tableau:
    """Integer weights with ``sum(omega * rsk(x)) == sum(x)`` for every ``x``.

    The diagram is the union of its corner rectangles; consecutive ones overlap
    in the rectangle of the inner corner between them. Each rectangle sum is a
    full diagonal sum of ``rsk(x)``, so inclusion-exclusion gives +1 on corner
    diagonals and -1 on inner-corner diagonals.
    """
    out = [[0] * r for r in shape.rows]
    for (m, n), tag in border_strip(shape):
        w = {CORNER: 1, INNER: -1}.get(tag, 0)
        for i in range(min(m, n)):
            out[m - 1 - i][n - 1 - i] = w
    return Tableau(tuple(tuple(r) for r in out))


def eg_insert(P: list[list[int]], letter: int) -> int:
    """Edelman-Greene row insertion; mutates ``P``, returns the row that grew.

    Inserting ``a`` into a row holding both ``a`` and ``a+1`` leaves the row
    unchanged and carries ``a+1`` to the next row.
    """
    x = letter
    r = 0
    while True:
        if r == len(P):
            P.append([x])
            return r
        row = P[r]
        for i, y in enumerate(row):
            if y > x:
                break
        else:
            row.append(x)
            return r
        if y == x + 1 and i > 0 and row[i - 1] == x:
            x = y
        else:
            row[i] = x
            x = y
        r += 1


def _eg_unbump(P: list[list[int]], r: int) -> int:
    """Undo one insertion whose bumping path ended at the last box of row ``r``."""
    y = P[r].pop()
    if not P[r]:
        P.pop()
    for rr in range(r - 1, -1, -1):
        row = P[rr]
        # largest entry below y
        i = max(idx for idx, v in enumerate(row) if v < y)
        if row[i] == y - 1 and i + 1 < len(row) and row[i + 1] == y:
            y = y - 1
        else:
            row[i], y = y, row[i]
    return y


def _staircase_P(n: int) -> list[list[int]]:
    return [list(range(i, n)) for i in range(1, n)]


def edelman_greene_inverse(s: SortingNetwork) -> Tableau:
    """Recording tableau of the Edelman-Greene insertion of ``s_1, ..., s_N``."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for k, a in enumerate(s.word, start=1):
        r = eg_insert(P, a)
        if r == len(Q):
            Q.append([])
        Q[r].append(k)
    return Tableau(tuple(tuple(row) for row in Q))


def edelman_greene(t: Tableau) -> SortingNetwork:
    """Sorting network whose insertion records ``t``.

    Every reduced word of the reverse permutation inserts to the same tableau
    with rows ``(i, ..., n-1)``, so reverse bumping from it along the boxes of
    ``N, N-1, ..., 1`` in ``t`` recovers the letters last to first.
    """
    shape = t.shape
    n = len(shape.rows) + 1
    if shape.size == 0 or shape != staircase(n):
        raise ValueError(f"shape {shape.rows} is not a staircase")
    if not t.is_standard():
        raise ValueError("tableau is not standard")
    where = {v: i for (i, _), v in t.items()}
    P = _staircase_P(n)
    word = [0] * shape.size
    for k in range(shape.size, 0, -1):
        word[k - 1] = _eg_unbump(P, where[k] - 1)
    return SortingNetwork(n, tuple(word))


def tableau_sum(weights: Tableau, values: Tableau):
    return sum(w * v for w, v in zip(weights.values(), values.values()))


def all_tableaux(shape: YoungDiagram, entries: Sequence) -> Iterator[Tableau]:
    """Every filling of ``shape`` with values from ``entries``."""
    rows = shape.rows
    for flat in product(entries, repeat=shape.size):
        out, pos = [], 0
        for r in rows:
            out.append(tuple(flat[pos:pos + r]))
            pos += r
        yield Tableau(tuple(out))
