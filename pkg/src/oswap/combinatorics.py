"""Young diagrams, tableaux, permutations and sorting networks.

Boxes are addressed ``(i, j)`` with 1-based row ``i`` and column ``j``, and
permutations are kept in 1-based one-line notation, matching the usual
combinatorial conventions. Internally the enumerators work 0-based on plain
lists for speed and only build the public objects at the leaves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterator, Sequence

__all__ = [
    "YoungDiagram",
    "Tableau",
    "Permutation",
    "SortingNetwork",
    "ParamBundle",
    "staircase",
    "addable_boxes",
    "enumerate_syt",
    "hook_count",
    "enumerate_sorting_networks",
    "tableau_params",
    "network_params",
    "ascent_positions",
    "rank_permutation",
    "syt_walk",
    "network_walk",
]

Box = tuple[int, int]


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, box: Box) -> bool:
        i, j = box
        return 1 <= i <= len(self.rows) and 1 <= j <= self.rows[i - 1]

    def boxes(self) -> Iterator[Box]:
        for i, r in enumerate(self.rows, start=1):
            for j in range(1, r + 1):
                yield (i, j)

    def row_length(self, i: int) -> int:
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def issubset(self, other: YoungDiagram) -> bool:
        return len(self.rows) <= len(other.rows) and all(
            a <= b for a, b in zip(self.rows, other.rows)
        )

    def is_corner(self, box: Box) -> bool:
        """A box whose removal leaves a Young diagram."""
        i, j = box
        return box in self and j == self.rows[i - 1] and self.row_length(i + 1) < j

    def is_border(self, box: Box) -> bool:
        """A box that is the last one on its diagonal."""
        i, j = box
        return box in self and (i + 1, j + 1) not in self

    def border_strip(self) -> list[Box]:
        """Border boxes ordered from bottom-left to top-right."""
        out = []
        for i in range(len(self.rows), 0, -1):
            nxt = self.row_length(i + 1)
            # boxes (i, j) with (i+1, j+1) outside, i.e. j >= row_{i+1}
            for j in range(max(nxt, 1), self.rows[i - 1] + 1):
                out.append((i, j))
        return out

    def corners(self) -> list[Box]:
        return [b for b in self.border_strip() if self.is_corner(b)]

    def hook(self, box: Box) -> int:
        i, j = box
        arm = self.rows[i - 1] - j
        leg = sum(1 for r in self.rows[i:] if r >= j)
        return arm + leg + 1


@dataclass(frozen=True)
class Tableau:
    """Shape-indexed array of values, stored row by row."""

    rows: tuple[tuple, ...]
    shape: YoungDiagram = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows if len(r) > 0)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", YoungDiagram(tuple(len(r) for r in rows)))

    @classmethod
    def from_dict(cls, shape: YoungDiagram, values: dict) -> Tableau:
        return cls(tuple(tuple(values[(i, j)] for j in range(1, r + 1))
                         for i, r in enumerate(shape.rows, start=1)))

    @classmethod
    def filled(cls, shape: YoungDiagram, value=0) -> Tableau:
        return cls(tuple((value,) * r for r in shape.rows))

    def __getitem__(self, box: Box):
        i, j = box
        if box not in self.shape:
            raise KeyError(box)
        return self.rows[i - 1][j - 1]

    def items(self) -> Iterator[tuple[Box, object]]:
        for i, row in enumerate(self.rows, start=1):
            for j, v in enumerate(row, start=1):
                yield (i, j), v

    def values(self) -> list:
        return [v for row in self.rows for v in row]

    def total(self):
        return sum(self.values())

    def is_interlacing(self) -> bool:
        """Weakly increasing along rows and along columns."""
        for (i, j), v in self.items():
            if i > 1 and self.rows[i - 2][j - 1] > v:
                return False
            if j > 1 and self.rows[i - 1][j - 2] > v:
                return False
        return True

    def is_standard(self) -> bool:
        n = self.shape.size
        if sorted(self.values()) != list(range(1, n + 1)):
            return False
        for (i, j), v in self.items():
            if i > 1 and self.rows[i - 2][j - 1] >= v:
                return False
            if j > 1 and self.rows[i - 1][j - 2] >= v:
                return False
        return True

    def position(self, value) -> Box:
        for box, v in self.items():
            if v == value:
                return box
        raise ValueError(f"{value!r} not in tableau")

    def to_json(self) -> dict:
        return {"shape": list(self.shape.rows), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> Tableau:
        t = cls(tuple(tuple(r) for r in obj["rows"]))
        if "shape" in obj and tuple(obj["shape"]) != t.shape.rows:
            raise ValueError(f"rows do not match declared shape {obj['shape']}")
        return t


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``{1..m}`` in one-line notation."""

    oneline: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(v) for v in self.oneline)
        if sorted(p) != list(range(1, len(p) + 1)):
            raise ValueError(f"not a permutation: {p}")
        object.__setattr__(self, "oneline", p)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def reverse(cls, m: int) -> Permutation:
        return cls(tuple(range(m, 0, -1)))

    def __len__(self) -> int:
        return len(self.oneline)

    def __call__(self, j: int) -> int:
        return self.oneline[j - 1]

    def __iter__(self):
        return iter(self.oneline)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.oneline)
        for j, v in enumerate(self.oneline, start=1):
            inv[v - 1] = j
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """``(self o other)(j) = self(other(j))``."""
        return Permutation(tuple(self.oneline[v - 1] for v in other.oneline))

    def swap_positions(self, j: int) -> Permutation:
        """Exchange the entries at positions ``j`` and ``j+1``."""
        p = list(self.oneline)
        p[j - 1], p[j] = p[j], p[j - 1]
        return Permutation(tuple(p))

    def inversions(self) -> int:
        p = self.oneline
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.oneline)) + ")"


@dataclass(frozen=True)
class SortingNetwork:
    n: int
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(s) for s in self.word)
        object.__setattr__(self, "word", word)
        n = self.n
        if n < 2:
            raise ValueError("sorting networks need n >= 2")
        if len(word) != n * (n - 1) // 2:
            raise ValueError(f"word length {len(word)} != {n * (n - 1) // 2}")
        perm = list(range(1, n + 1))
        for s in word:
            if not 1 <= s <= n - 1:
                raise ValueError(f"letter {s} out of range 1..{n - 1}")
            if perm[s - 1] > perm[s]:
                raise ValueError(f"word {word} is not reduced at letter {s}")
            perm[s - 1], perm[s] = perm[s], perm[s - 1]

    def trajectory(self) -> list[Permutation]:
        """The permutations ``nu(0) = id, nu(1), ..., nu(N) = rev``."""
        perm = Permutation.identity(self.n)
        out = [perm]
        for s in self.word:
            perm = perm.swap_positions(s)
            out.append(perm)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "word": list(self.word)}

    @classmethod
    def from_json(cls, obj: dict) -> SortingNetwork:
        return cls(int(obj["n"]), tuple(obj["word"]))


@dataclass(frozen=True)
class ParamBundle:
    """Marks, their ordering permutation and the degree sequence of one object.

    ``marks`` is ``cor`` for a tableau and ``last`` for a sorting network;
    ``degs[k]`` is the out-degree of the k-th vertex on the object's path.
    """

    marks: tuple[int, ...]
    order: Permutation
    degs: tuple[int, ...]

    @property
    def sorted_marks(self) -> tuple[int, ...]:
        """Increasing rearrangement of ``marks`` with a leading 0 sentinel."""
        return (0,) + tuple(sorted(self.marks))

    def blocks(self) -> list[tuple[int, ...]]:
        """Degree block feeding each variable ``x_k`` (0-based ``degs`` slices)."""
        sm = self.sorted_marks
        return [self.degs[sm[k - 1]:sm[k]] for k in range(1, len(sm))]

    def weight_denominator(self) -> int:
        out = 1
        for d in self.degs:
            out *= d
        return out


def staircase(n: int) -> YoungDiagram:
    if n < 2:
        raise ValueError(f"staircase order must be >= 2, got {n}")
    return YoungDiagram(tuple(range(n - 1, 0, -1)))


def addable_boxes(current: YoungDiagram | Sequence[int], bound: YoungDiagram) -> set[Box]:
    cur = current.rows if isinstance(current, YoungDiagram) else tuple(current)
    if len(cur) > len(bound.rows) or any(a > b for a, b in zip(cur, bound.rows)):
        raise ValueError(f"{cur} is not contained in {bound.rows}")
    out = set()
    for i in range(len(bound.rows)):
        length = cur[i] if i < len(cur) else 0
        above = cur[i - 1] if 0 < i <= len(cur) else (0 if i > 0 else None)
        if length < bound.rows[i] and (i == 0 or above > length):
            out.add((i + 1, length + 1))
    return out


def hook_count(shape: YoungDiagram) -> int:
    """Number of standard tableaux of ``shape`` by the hook length formula."""
    prod = 1
    for box in shape.boxes():
        prod *= shape.hook(box)
    return factorial(shape.size) // prod


def rank_permutation(marks: Sequence) -> Permutation:
    """Permutation ``p`` with ``p(j) < p(k)`` iff ``marks[j] < marks[k]``."""
    order = sorted(range(len(marks)), key=lambda j: marks[j])
    ranks = [0] * len(marks)
    for r, j in enumerate(order, start=1):
        ranks[j] = r
    return Permutation(tuple(ranks))


def ascent_positions(p: Permutation | Sequence[int]) -> set[int]:
    seq = p.oneline if isinstance(p, Permutation) else tuple(p)
    return {j for j in range(1, len(seq)) if seq[j - 1] < seq[j]}


def _shard_filter(shard):
    if shard is None:
        return None
    index, count = shard
    if count < 1 or not 0 <= index < count:
        raise ValueError(f"bad shard {shard}")
    return index, count


# Subtrees rooted at this depth are dealt round-robin to shards.
_SHARD_DEPTH = 4


def syt_walk(shape: YoungDiagram, shard=None) -> Iterator[tuple[list[list[int]], list[int]]]:
    """Depth-first walk over the growth sequences inside ``shape``.

    Yields ``(rows, degs)`` where ``rows`` is the (mutable, reused) filling and
    ``degs[k]`` the number of addable boxes after ``k`` boxes were placed.
    Callers must copy ``rows`` if they keep it.
    """
    shard = _shard_filter(shard)
    bound = shape.rows
    nrows = len(bound)
    total = shape.size
    lens = [0] * nrows
    rows = [[0] * r for r in bound]
    degs = [0] * total
    counter = [0]

    def addable():
        return [i for i in range(nrows)
                if lens[i] < bound[i] and (i == 0 or lens[i - 1] > lens[i])]

    def rec(k):
        if k == total:
            yield rows, degs
            return
        if shard is not None and k == min(_SHARD_DEPTH, total - 1):
            c = counter[0]
            counter[0] += 1
            if c % shard[1] != shard[0]:
                return
        choices = addable()
        degs[k] = len(choices)
        for i in choices:
            rows[i][lens[i]] = k + 1
            lens[i] += 1
            yield from rec(k + 1)
            lens[i] -= 1

    if total == 0:
        yield rows, degs
        return
    yield from rec(0)


def enumerate_syt(shape: YoungDiagram, shard=None) -> Iterator[Tableau]:
    for rows, _ in syt_walk(shape, shard):
        yield Tableau(tuple(tuple(r) for r in rows))


def network_walk(n: int, shard=None) -> Iterator[tuple[list[int], list[int]]]:
    """Depth-first walk over reduced words of the reverse permutation.

    Yields ``(word, degs)`` with ``degs[k]`` the ascent count of ``nu(k)``;
    both lists are reused between yields.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    shard = _shard_filter(shard)
    total = n * (n - 1) // 2
    perm = list(range(1, n + 1))
    word = [0] * total
    degs = [0] * total
    counter = [0]

    def rec(k):
        if k == total:
            yield word, degs
            return
        if shard is not None and k == min(_SHARD_DEPTH, total - 1):
            c = counter[0]
            counter[0] += 1
            if c % shard[1] != shard[0]:
                return
        choices = [j for j in range(n - 1) if perm[j] < perm[j + 1]]
        degs[k] = len(choices)
        for j in choices:
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
            word[k] = j + 1
            yield from rec(k + 1)
            perm[j], perm[j + 1] = perm[j + 1], perm[j]

    yield from rec(0)


def enumerate_sorting_networks(n: int, shard=None) -> Iterator[SortingNetwork]:
    for word, _ in network_walk(n, shard):
        yield SortingNetwork(n, tuple(word))


def _staircase_order(shape: YoungDiagram) -> int:
    n = len(shape.rows) + 1
    if shape.rows != tuple(range(n - 1, 0, -1)):
        raise ValueError(f"shape {shape.rows} is not a staircase")
    return n


def tableau_degrees(t: Tableau) -> tuple[int, ...]:
    """Out-degrees along the growth sequence encoded by a standard tableau."""
    shape = t.shape
    where = {v: box for box, v in t.items()}
    lens = [0] * len(shape.rows)
    degs = []
    for k in range(1, shape.size + 1):
        degs.append(len(addable_boxes(tuple(x for x in lens if x), shape)))
        i, _ = where[k]
        lens[i - 1] += 1
    return tuple(degs)


def tableau_params(t: Tableau) -> ParamBundle:
    n = _staircase_order(t.shape)
    if not t.is_standard():
        raise ValueError("tableau is not standard")
    marks = tuple(t[(n - k, k)] for k in range(1, n))
    return ParamBundle(marks, rank_permutation(marks), tableau_degrees(t))


def _last_marks(n: int, word: Sequence[int]) -> tuple[int, ...]:
    last = [0] * (n - 1)
    for j, s in enumerate(word, start=1):
        last[s - 1] = j
    return tuple(last)


def network_params(s: SortingNetwork) -> ParamBundle:
    marks = _last_marks(s.n, s.word)
    degs = tuple(len(ascent_positions(p)) for p in s.trajectory()[:-1])
    return ParamBundle(marks, rank_permutation(marks), degs)
