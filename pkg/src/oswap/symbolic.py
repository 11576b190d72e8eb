"""Exact rational generating functions attached to tableaux and networks.

Every generating factor is ``1 / prod (x_k + d)``, a product of linear forms
in single variables, so each component of ``F_n`` / ``G_n`` is kept as an
integer polynomial over a multiset of such linear factors. Objects sharing
an ordering permutation and the same degree multisets per block give equal
factors; they are counted once and weighted, which turns the n=6 sums over
292,864 objects into a few thousand cofactor products.
"""

from __future__ import annotations

import json
import math
import logging
import os
import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator, Mapping

import numpy as np

from .combinatorics import (
    ParamBundle,
    Permutation,
    network_walk,
    rank_permutation,
    staircase,
    syt_walk,
)

log = logging.getLogger(__name__)

__all__ = [
    "SparsePolynomial",
    "LinearFactorProduct",
    "RationalComponent",
    "GeneratingFunctionVector",
    "PoleError",
    "generating_factor",
    "signature_counts",
    "build_F",
    "build_G",
    "build_naive",
    "equal",
    "eval_mod_p",
    "stream_eval_mod_p",
    "reduce",
    "verify_identity",
    "DEFAULT_PRIME",
]

DEFAULT_PRIME = (1 << 61) - 1


class PoleError(ArithmeticError):
    """Evaluation point hits a pole; draw another point."""


Monomial = tuple[int, ...]


class SparsePolynomial:
    """Integer polynomial in ``x1..x_nvars`` stored as ``{exponents: coeff}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            if c:
                self.terms[tuple(mono)] = int(c)

    @classmethod
    def constant(cls, nvars: int, c: int) -> SparsePolynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> SparsePolynomial:
        mono = [0] * nvars
        mono[k - 1] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def from_dense(cls, arr: np.ndarray) -> SparsePolynomial:
        out = cls(arr.ndim)
        for idx in np.argwhere(arr != 0):
            mono = tuple(int(e) for e in idx)
            out.terms[mono] = int(arr[mono])
        return out

    def copy(self) -> SparsePolynomial:
        out = SparsePolynomial(self.nvars)
        out.terms = dict(self.terms)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SparsePolynomial.constant(self.nvars, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        out = self.copy()
        for mono, c in other.terms.items():
            v = out.terms.get(mono, 0) + c
            if v:
                out.terms[mono] = v
            else:
                out.terms.pop(mono, None)
        return out

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def __mul__(self, other) -> SparsePolynomial:
        if isinstance(other, int):
            return SparsePolynomial(self.nvars, {m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = defaultdict(int)
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                out[tuple(a + b for a, b in zip(ma, mb))] += ca * cb
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def mul_linear(self, k: int, d: int) -> SparsePolynomial:
        """Multiply by ``(x_k + d)``."""
        out: dict[Monomial, int] = defaultdict(int)
        for mono, c in self.terms.items():
            up = list(mono)
            up[k - 1] += 1
            out[tuple(up)] += c
            out[mono] += c * d
        return SparsePolynomial(self.nvars, out)

    def _by_power(self, k: int) -> dict[int, dict[Monomial, int]]:
        groups: dict[int, dict[Monomial, int]] = defaultdict(dict)
        for mono, c in self.terms.items():
            rest = mono[:k - 1] + (0,) + mono[k:]
            groups[mono[k - 1]][rest] = c
        return groups

    def substitute(self, k: int, value: int) -> SparsePolynomial:
        """Set ``x_k = value``; the result keeps the same arity."""
        out: dict[Monomial, int] = defaultdict(int)
        for mono, c in self.terms.items():
            rest = mono[:k - 1] + (0,) + mono[k:]
            out[rest] += c * value ** mono[k - 1]
        return SparsePolynomial(self.nvars, out)

    def divide_linear(self, k: int, d: int) -> SparsePolynomial:
        """Exact quotient by ``(x_k + d)``; raises if there is a remainder."""
        groups = self._by_power(k)
        if not groups:
            return SparsePolynomial(self.nvars)
        top = max(groups)
        quotient: dict[int, dict[Monomial, int]] = {}
        carry: dict[Monomial, int] = {}
        for e in range(top, 0, -1):
            coeffs = dict(groups.get(e, {}))
            for mono, c in carry.items():
                coeffs[mono] = coeffs.get(mono, 0) - d * c
            coeffs = {m: c for m, c in coeffs.items() if c}
            quotient[e - 1] = coeffs
            carry = coeffs
        remainder = dict(groups.get(0, {}))
        for mono, c in carry.items():
            remainder[mono] = remainder.get(mono, 0) - d * c
        if any(remainder.values()):
            raise ArithmeticError(f"x{k} + {d} does not divide the polynomial")
        out = {}
        for e, coeffs in quotient.items():
            for rest, c in coeffs.items():
                mono = list(rest)
                mono[k - 1] = e
                out[tuple(mono)] = c
        return SparsePolynomial(self.nvars, out)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, k: int) -> int:
        return max((m[k - 1] for m in self.terms), default=0)

    def evaluate(self, point):
        total = 0
        for mono, c in self.terms.items():
            term = c
            for x, e in zip(point, mono):
                if e:
                    term *= x ** e
            total += term
        return total

    def evaluate_mod(self, point, prime: int) -> int:
        total = 0
        for mono, c in self.terms.items():
            term = c % prime
            for x, e in zip(point, mono):
                if e:
                    term = term * pow(x, e, prime) % prime
            total += term
        return total % prime

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Graded lexicographic order, largest monomial first."""
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), [-e for e in mc[0]]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (mono, c) in enumerate(self.sorted_terms()):
            factors = []
            for k, e in enumerate(mono, start=1):
                if e == 1:
                    factors.append(f"x{k}")
                elif e > 1:
                    factors.append(f"x{k}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.to_text()!r})"


class LinearFactorProduct:
    """Multiset of factors ``(x_k + d)`` with multiplicities."""

    __slots__ = ("factors",)

    def __init__(self, factors: Mapping[tuple[int, int], int] | None = None):
        self.factors: Counter = Counter()
        for key, mult in (factors or {}).items():
            if mult < 0:
                raise ValueError("multiplicities must be non-negative")
            if mult:
                self.factors[(int(key[0]), int(key[1]))] = int(mult)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> LinearFactorProduct:
        c: Counter = Counter()
        for k, block in enumerate(blocks, start=1):
            for d in block:
                c[(k, d)] += 1
        return cls(c)

    def degree(self) -> int:
        return sum(self.factors.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearFactorProduct) and self.factors == other.factors

    def __hash__(self):
        return hash(frozenset(self.factors.items()))

    def lcm(self, other: LinearFactorProduct) -> LinearFactorProduct:
        return LinearFactorProduct(self.factors | other.factors)

    def __mul__(self, other: LinearFactorProduct) -> LinearFactorProduct:
        return LinearFactorProduct(self.factors + other.factors)

    def quotient(self, other: LinearFactorProduct) -> LinearFactorProduct:
        """``self / other``; ``other`` must divide ``self``."""
        if other.factors - self.factors:
            raise ArithmeticError("factor product does not divide")
        return LinearFactorProduct(self.factors - other.factors)

    def multiply_into(self, poly: SparsePolynomial) -> SparsePolynomial:
        for (k, d), mult in sorted(self.factors.items()):
            for _ in range(mult):
                poly = poly.mul_linear(k, d)
        return poly

    def expand(self, nvars: int) -> SparsePolynomial:
        return self.multiply_into(SparsePolynomial.constant(nvars, 1))

    def evaluate(self, point):
        out = 1
        for (k, d), mult in self.factors.items():
            out *= (point[k - 1] + d) ** mult
        return out

    def evaluate_mod(self, point, prime: int) -> int:
        out = 1
        for (k, d), mult in self.factors.items():
            out = out * pow((point[k - 1] + d) % prime, mult, prime) % prime
        return out

    def to_text(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for (k, d), mult in sorted(self.factors.items()):
            base = f"(x{k} + {d})" if d >= 0 else f"(x{k} - {-d})"
            parts.append(base if mult == 1 else f"{base}^{mult}")
        return "*".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[k, d, m] for (k, d), m in sorted(self.factors.items())]

    def __repr__(self) -> str:
        return f"LinearFactorProduct({self.to_text()!r})"


@dataclass
class RationalComponent:
    numerator: SparsePolynomial
    denominator: LinearFactorProduct = field(default_factory=LinearFactorProduct)

    @classmethod
    def zero(cls, nvars: int) -> RationalComponent:
        return cls(SparsePolynomial(nvars), LinearFactorProduct())

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: RationalComponent) -> RationalComponent:
        den = self.denominator.lcm(other.denominator)
        a = den.quotient(self.denominator).multiply_into(self.numerator)
        b = den.quotient(other.denominator).multiply_into(other.numerator)
        return RationalComponent(a + b, den)

    def evaluate(self, point) -> Fraction:
        den = self.denominator.evaluate(point)
        if den == 0:
            raise PoleError(f"pole at {point}")
        return Fraction(self.numerator.evaluate(point), den)

    def evaluate_numeric(self, point) -> complex:
        """Floating evaluation; accepts real or complex coordinates."""
        den = self.denominator.evaluate(point)
        if den == 0:
            raise PoleError(f"pole at {point}")
        return self.numerator.evaluate(point) / den

    def evaluate_mod(self, point, prime: int) -> int:
        den = self.denominator.evaluate_mod(point, prime)
        if den == 0:
            raise PoleError(f"pole at {point} mod {prime}")
        return self.numerator.evaluate_mod(point, prime) * pow(den, -1, prime) % prime

    def to_text(self) -> str:
        return f"({self.numerator.to_text()})/({self.denominator.to_text()})"

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_text(), "denominator": self.denominator.to_json()}


def reduce(c: RationalComponent) -> RationalComponent:
    """Cancel every linear factor of the denominator that divides the numerator."""
    num = c.numerator
    if num.is_zero():
        return RationalComponent.zero(num.nvars)
    left = Counter(c.denominator.factors)
    for (k, d) in sorted(left):
        while left[(k, d)] and num.substitute(k, -d).is_zero():
            num = num.divide_linear(k, d)
            left[(k, d)] -= 1
    return RationalComponent(num, LinearFactorProduct(left))


@dataclass
class GeneratingFunctionVector:
    n: int
    components: dict[Permutation, RationalComponent]

    def __post_init__(self):
        for perm in permutations(range(1, self.n)):
            self.components.setdefault(Permutation(perm), RationalComponent.zero(self.n - 1))

    def __getitem__(self, perm) -> RationalComponent:
        if not isinstance(perm, Permutation):
            perm = Permutation(tuple(perm))
        return self.components[perm]

    def __len__(self) -> int:
        return len(self.components)

    def evaluate(self, point) -> dict[Permutation, Fraction]:
        return {p: c.evaluate(point) for p, c in self.components.items()}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "components": {str(p): c.to_json() for p, c in sorted(
                self.components.items(), key=lambda pc: pc[0].oneline)},
        }


def generating_factor(b: ParamBundle) -> RationalComponent:
    nvars = len(b.marks)
    return RationalComponent(SparsePolynomial.constant(nvars, 1),
                             LinearFactorProduct.from_blocks(b.blocks()))


# -- enumeration into signature counts -------------------------------------

Signature = tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]


def _syt_signatures(n: int, shard=None) -> Iterator[Signature]:
    for rows, degs in syt_walk(staircase(n), shard):
        marks = [rows[n - 1 - k][k - 1] for k in range(1, n)]
        yield _signature(marks, degs)


def _sn_signatures(n: int, shard=None) -> Iterator[Signature]:
    for word, degs in network_walk(n, shard):
        last = [0] * (n - 1)
        for j, s in enumerate(word, start=1):
            last[s - 1] = j
        yield _signature(last, degs)


def _signature(marks, degs) -> Signature:
    bounds = [0] + sorted(marks)
    order = rank_permutation(marks).oneline
    blocks = tuple(tuple(sorted(degs[bounds[k - 1]:bounds[k]])) for k in range(1, len(bounds)))
    return order, blocks


def _walker(kind: str):
    if kind in ("F", "syt"):
        return _syt_signatures
    if kind in ("G", "sn"):
        return _sn_signatures
    raise ValueError(f"unknown object family {kind!r}")


def _save_checkpoint(path: str, n: int, kind: str, done: int, counts: Counter):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"n": n, "kind": kind, "done": done,
                   "counts": [[list(o), [list(b) for b in bl], c]
                              for (o, bl), c in counts.items()]}, fh)
    os.replace(tmp, path)


def _load_checkpoint(path: str, n: int, kind: str):
    with open(path) as fh:
        data = json.load(fh)
    if data["n"] != n or data["kind"] != kind:
        raise ValueError(f"checkpoint {path} belongs to another run")
    counts = Counter({(tuple(o), tuple(tuple(b) for b in bl)): c for o, bl, c in data["counts"]})
    return data["done"], counts


def signature_counts(n: int, kind: str, checkpoint_dir: str | None = None,
                     every: int = 50_000, shard=None, progress=None) -> Counter:
    """Multiplicity of each (ordering, per-block degree multiset) pair.

    With ``checkpoint_dir`` the partial counter is written every ``every``
    objects and a rerun resumes after the last saved object.
    """
    walker = _walker(kind)
    kind = "F" if kind in ("F", "syt") else "G"
    path = None
    done, counts = 0, Counter()
    if checkpoint_dir is not None:
        os.makedirs(checkpoint_dir, exist_ok=True)
        tag = "" if shard is None else f"-shard{shard[0]}of{shard[1]}"
        path = os.path.join(checkpoint_dir, f"{kind}{n}{tag}.json")
        if os.path.exists(path):
            done, counts = _load_checkpoint(path, n, kind)
            log.info("resuming %s_%d after %d objects", kind, n, done)
    seen = 0
    for sig in walker(n, shard):
        seen += 1
        if seen <= done:
            continue
        counts[sig] += 1
        if seen % every == 0:
            if path is not None:
                _save_checkpoint(path, n, kind, seen, counts)
            if progress is not None:
                progress(kind, seen)
    if path is not None:
        _save_checkpoint(path, n, kind, seen, counts)
    return counts


@lru_cache(maxsize=None)
def _expand_roots(roots: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    """Coefficients (low to high) of ``prod (x + d)^m`` over ``roots``."""
    coeffs = [1]
    for d, m in roots:
        for _ in range(m):
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c * d
                nxt[i + 1] += c
            coeffs = nxt
    return tuple(coeffs)


def _cofactor(full: Mapping[int, int], block: tuple[int, ...], size: int) -> np.ndarray:
    have = Counter(block)
    roots = tuple(sorted((d, full[d] - have.get(d, 0)) for d in full if full[d] - have.get(d, 0)))
    coeffs = _expand_roots(roots)
    out = np.zeros(size, dtype=object)
    out[:len(coeffs)] = coeffs
    return out


def assemble(n: int, counts: Mapping[Signature, int]) -> GeneratingFunctionVector:
    """Sum weighted generating factors bucket by bucket over the lcm denominator."""
    nvars = n - 1
    buckets: dict[tuple, list] = defaultdict(list)
    for (order, blocks), c in counts.items():
        buckets[order].append((blocks, c))
    comps = {}
    for order, items in buckets.items():
        full = [Counter() for _ in range(nvars)]
        for blocks, _ in items:
            for k, block in enumerate(blocks):
                full[k] |= Counter(block)
        shifts = {d for f in full for d in f}
        if not shifts <= set(range(1, n)):
            raise ValueError(f"denominator shifts {sorted(shifts)} outside 1..{n - 1}")
        sizes = [sum(f.values()) + 1 for f in full]
        # sum over the first variable's cofactors before taking outer products
        grouped: dict[tuple, np.ndarray] = {}
        for blocks, c in items:
            q = _cofactor(full[0], blocks[0], sizes[0]) * c
            tail = blocks[1:]
            if tail in grouped:
                grouped[tail] = grouped[tail] + q
            else:
                grouped[tail] = q
        num = np.zeros(sizes, dtype=object)
        num[...] = 0
        for tail, head in grouped.items():
            tens = head
            for k, block in enumerate(tail, start=1):
                tens = np.multiply.outer(tens, _cofactor(full[k], block, sizes[k]))
            num += tens
        den = LinearFactorProduct({(k + 1, d): m for k in range(nvars) for d, m in full[k].items()})
        comps[Permutation(order)] = reduce(RationalComponent(SparsePolynomial.from_dense(num), den))
    return GeneratingFunctionVector(n, comps)


def _build(n: int, kind: str, checkpoint_dir=None, workers: int = 1, progress=None):
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            futs = [pool.submit(signature_counts, n, kind, checkpoint_dir, 50_000, (i, workers))
                    for i in range(workers)]
            counts = Counter()
            for f in futs:
                counts.update(f.result())
    else:
        counts = signature_counts(n, kind, checkpoint_dir, progress=progress)
    return assemble(n, counts)


def build_F(n: int, checkpoint_dir=None, workers: int = 1, progress=None) -> GeneratingFunctionVector:
    return _build(n, "F", checkpoint_dir, workers, progress)


def build_G(n: int, checkpoint_dir=None, workers: int = 1, progress=None) -> GeneratingFunctionVector:
    return _build(n, "G", checkpoint_dir, workers, progress)


def build_naive(n: int, kind: str) -> GeneratingFunctionVector:
    """One object at a time, adding each generating factor with ``+``.

    Slow; kept as an independent route for small ``n``.
    """
    from .combinatorics import enumerate_sorting_networks, enumerate_syt, network_params, tableau_params

    if kind in ("F", "syt"):
        bundles = (tableau_params(t) for t in enumerate_syt(staircase(n)))
    else:
        bundles = (network_params(s) for s in enumerate_sorting_networks(n))
    comps: dict[Permutation, RationalComponent] = {}
    for b in bundles:
        f = generating_factor(b)
        comps[b.order] = comps[b.order] + f if b.order in comps else f
    return GeneratingFunctionVector(n, {p: reduce(c) for p, c in comps.items()})


# -- comparison ----------------------------------------------------------------

@dataclass
class Witness:
    permutation: Permutation
    point: tuple[int, ...] | None
    left: Fraction | None
    right: Fraction | None

    def to_json(self) -> dict:
        return {
            "permutation": list(self.permutation.oneline),
            "point": None if self.point is None else list(self.point),
            "left": None if self.left is None else str(self.left),
            "right": None if self.right is None else str(self.right),
        }


def _same(a: RationalComponent, b: RationalComponent) -> bool:
    if a.denominator == b.denominator:
        return a.numerator == b.numerator
    return b.denominator.multiply_into(a.numerator) == a.denominator.multiply_into(b.numerator)


def _distinguish(a: RationalComponent, b: RationalComponent, nvars: int, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(1000):
        point = tuple(rng.randint(1, 50) for _ in range(nvars))
        va, vb = a.evaluate(point), b.evaluate(point)
        if va != vb:
            return point, va, vb
    return None, None, None


def equal(a: GeneratingFunctionVector, b: GeneratingFunctionVector) -> tuple[bool, Witness | None]:
    """Exact componentwise comparison by cross-multiplication."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    for perm in sorted(a.components, key=lambda p: p.oneline):
        ca, cb = reduce(a[perm]), reduce(b[perm])
        if not _same(ca, cb):
            point, va, vb = _distinguish(ca, cb, a.n - 1)
            return False, Witness(perm, point, va, vb)
    return True, None


def eval_mod_p(g: GeneratingFunctionVector, point, prime: int = DEFAULT_PRIME) -> dict[Permutation, int]:
    return {p: c.evaluate_mod(point, prime) for p, c in g.components.items()}


def stream_eval_mod_p(counts: Mapping[Signature, int], n: int, points, prime: int = DEFAULT_PRIME):
    """Evaluate ``sum_objects factor`` at several points straight from the counts.

    Returns ``{permutation: [residue per point]}``; no polynomial is formed.
    """
    points = [tuple(int(v) % prime for v in pt) for pt in points]
    out: dict[Permutation, list[int]] = {Permutation(p): [0] * len(points)
                                         for p in permutations(range(1, n))}
    inv_cache: dict[tuple[int, int], int] = {}
    for (order, blocks), c in counts.items():
        acc = out[Permutation(order)]
        for idx, pt in enumerate(points):
            den = 1
            for k, block in enumerate(blocks):
                for d in block:
                    den = den * (pt[k] + d) % prime
            if den == 0:
                raise PoleError(f"pole at {pt} mod {prime}")
            key = (idx, den)
            inv = inv_cache.get(key)
            if inv is None:
                inv = pow(den, -1, prime)
                inv_cache[key] = inv
            acc[idx] = (acc[idx] + c * inv) % prime
    return out


def _max_degree(counts: Mapping[Signature, int], nvars: int) -> int:
    full = [Counter() for _ in range(nvars)]
    for (_, blocks) in counts:
        for k, block in enumerate(blocks):
            full[k] |= Counter(block)
    return sum(sum(f.values()) for f in full)


def verify_identity(n: int, mode: str = "exact", seed: int = 0, checkpoint_dir=None,
                    points: int = 40, prime: int = DEFAULT_PRIME, workers: int = 1,
                    progress=None, with_components: bool = False) -> dict:
    """Check ``F_n == G_n``; returns the JSON-ready report.

    ``with_components`` adds every reduced component of ``F_n`` (exact mode only).
    """
    start = time.perf_counter()
    report: dict = {"n": n, "mode": mode, "seed": seed, "components": factorial(n - 1),
                    "objects": None, "witness": None}
    if mode == "exact":
        F = build_F(n, checkpoint_dir, workers, progress)
        G = build_G(n, checkpoint_dir, workers, progress)
        ok, witness = equal(F, G)
        report["equal"] = ok
        report["witness"] = None if witness is None else witness.to_json()
        report["id_component"] = F[tuple(range(1, n))].to_text()
        if with_components:
            report["reduced_components"] = F.to_json()["components"]
    elif mode == "modular":
        cf = signature_counts(n, "F", checkpoint_dir, progress=progress)
        cg = signature_counts(n, "G", checkpoint_dir, progress=progress)
        report["objects"] = [sum(cf.values()), sum(cg.values())]
        rng = random.Random(seed)
        pts = []
        while len(pts) < points:
            pts.append(tuple(rng.randrange(prime) for _ in range(n - 1)))
        vf = stream_eval_mod_p(cf, n, pts, prime)
        vg = stream_eval_mod_p(cg, n, pts, prime)
        ok, witness = True, None
        for perm in sorted(vf, key=lambda p: p.oneline):
            for idx, (a, b) in enumerate(zip(vf[perm], vg[perm])):
                if a != b:
                    ok = False
                    witness = {"permutation": list(perm.oneline), "point": list(pts[idx]),
                               "left": a, "right": b, "prime": prime}
                    break
            if not ok:
                break
        # F - G over a common denominator has degree below the summed lcm degrees
        degree = _max_degree(cf, n - 1) + _max_degree(cg, n - 1)
        report["equal"] = ok
        report["witness"] = witness
        report["prime"] = prime
        report["points"] = points
        report["failure_probability_bound"] = f"({degree}/{prime})^{points}"
        report["failure_probability_log10"] = points * (math.log10(degree) - math.log10(prime))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report["wall_time"] = time.perf_counter() - start
    return report
