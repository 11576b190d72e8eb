"""Exact joint densities of U_n / V_n and two-sample comparison reports."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import special as sps_special
from scipy import stats as sps

from .combinatorics import Permutation
from .simulate import TrialBatch, run_model
from .symbolic import signature_counts

__all__ = [
    "hypoexp_density",
    "DensitySpec",
    "density_spec",
    "joint_density",
    "ks_two_sample",
    "ks_threshold",
    "ordering_chisquare",
    "trajectory_probabilities",
    "trajectory_chisquare",
    "ComparisonReport",
    "compare_processes",
    "compare_batches",
    "derive_seed",
    "EXACT_DENSITY_MAX_N",
    "cell_probabilities",
    "density_mass",
]

EXACT_DENSITY_MAX_N = 5


def _phase_hits(rates: np.ndarray, K: int) -> np.ndarray:
    """``a[k]``: chance the uniformized phase chain sits in the last phase after k jumps."""
    lam = rates.max()
    stay = 1 - rates / lam
    move = rates[:-1] / lam
    v = np.zeros(rates.size)
    v[0] = 1.0
    out = np.empty(K + 1)
    for k in range(K + 1):
        out[k] = v[-1]
        nxt = v * stay
        nxt[1:] += v[:-1] * move
        v = nxt
    return out


def hypoexp_density(rates: Sequence[float], u):
    """Density of a sum of independent exponentials with the given rates.

    Works on the bidiagonal phase-type form with repeated rates allowed, by
    uniformization: ``exp(Tu) = sum_k Poisson(k; lam u) P^k`` with the
    non-negative ``P = I + T/lam``. Every term is non-negative, so tiny tail
    values keep full relative precision. Accepts scalar or array ``u``; zero
    for ``u < 0``.
    """
    r = np.asarray(rates, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("rates must be a non-empty sequence")
    if not np.all(r > 0):
        raise ValueError(f"rates must be positive, got {list(rates)}")
    scalar = np.ndim(u) == 0
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.zeros(uu.shape)
    pos = uu >= 0
    if pos.any():
        lam = r.max()
        x = lam * uu[pos]
        xmax = float(x.max())
        K = int(r.size + xmax + 12 * math.sqrt(xmax) + 40)
        a = _phase_hits(r, K)
        vals = np.empty(x.shape)
        small = x < 600
        if small.any():
            # Horner on sum_k a_k x^k / k!, then scale by exp(-x)
            xs = x[small]
            g = np.full(xs.shape, a[K])
            for k in range(K - 1, -1, -1):
                g = a[k] + g * xs / (k + 1)
            vals[small] = g * np.exp(-xs)
        if (~small).any():
            xl = x[~small]
            ks = np.arange(K + 1)
            with np.errstate(divide="ignore"):
                loga = np.log(a)
            logp = ks * np.log(xl)[:, None] - xl[:, None] - sps_special.gammaln(ks + 1)[None, :]
            vals[~small] = np.exp(logp + loga[None, :]).sum(axis=1)
        out[pos] = r[-1] * vals
    return float(out[0]) if scalar else out


@dataclass
class DensitySpec:
    """Path-conditional mixture for the joint density of ``U_n`` or ``V_n``.

    ``terms`` holds ``(weight, order, blocks)``: ``weight`` is the summed
    probability of every path sharing that ordering and those block degree
    multisets.
    """

    model: str
    n: int
    terms: list[tuple[float, tuple[int, ...], tuple[tuple[int, ...], ...]]]

    def total_weight(self) -> float:
        return math.fsum(w for w, _, _ in self.terms)


def density_spec(model: str, n: int) -> DensitySpec:
    model = model.upper()
    if model not in ("U", "V"):
        raise ValueError(f"model must be U or V, got {model!r}")
    if n > EXACT_DENSITY_MAX_N:
        raise MemoryError(f"exact density enumeration capped at n <= {EXACT_DENSITY_MAX_N}")
    counts = signature_counts(n, "G" if model == "U" else "F")
    terms = []
    for (order, blocks), c in sorted(counts.items()):
        prod = 1
        for block in blocks:
            for d in block:
                prod *= d
        terms.append((c / prod, order, blocks))
    return DensitySpec(model, n, terms)


def _gaps(points: np.ndarray, order: tuple[int, ...]) -> np.ndarray:
    inv = Permutation(order).inverse().oneline
    coords = points[:, [i - 1 for i in inv]]
    prev = np.concatenate([np.zeros((points.shape[0], 1)), coords[:, :-1]], axis=1)
    return coords - prev


def joint_density(spec: DensitySpec, points) -> np.ndarray | float:
    """Mixture over paths of products of block hypoexponential densities.

    The k-th block density is evaluated at the gap between the k-th and
    (k-1)-th smallest coordinates, the first gap measured from 0.
    """
    pts = np.asarray(points, dtype=float)
    scalar = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != spec.n - 1:
        raise ValueError(f"points need {spec.n - 1} coordinates")
    out = np.zeros(pts.shape[0])
    by_order: dict[tuple, list] = {}
    for w, order, blocks in spec.terms:
        by_order.setdefault(order, []).append((w, blocks))
    for order, items in by_order.items():
        gaps = _gaps(pts, order)
        live = np.all(gaps >= 0, axis=1)
        if not live.any():
            continue
        g = gaps[live]
        cache: dict[tuple, np.ndarray] = {}
        acc = np.zeros(g.shape[0])
        for w, blocks in items:
            term = np.full(g.shape[0], w)
            for k, block in enumerate(blocks):
                key = (k, block)
                if key not in cache:
                    cache[key] = hypoexp_density(block, g[:, k])
                term *= cache[key]
            acc += term
        out[live] += acc
    return float(out[0]) if scalar else out


def _gl_square(spec, a, b, c, d, nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = a + (b - a) * (x + 1) / 2
    v = c + (d - c) * (x + 1) / 2
    U, V = np.meshgrid(u, v, indexing="ij")
    vals = joint_density(spec, np.column_stack([U.ravel(), V.ravel()]))
    return float(np.outer(w, w).ravel() @ vals) * (b - a) * (d - c) / 4


def _gl_triangle(spec, a, b, nodes, upper):
    # collapsed map (s, t) -> (a + h s, a + h s t) covers {a <= y <= x <= b}
    x, w = np.polynomial.legendre.leggauss(nodes)
    s = (x + 1) / 2
    S, T = np.meshgrid(s, s, indexing="ij")
    h = b - a
    hi, lo = a + h * S.ravel(), a + h * S.ravel() * T.ravel()
    pts = np.column_stack([lo, hi] if upper else [hi, lo])
    vals = joint_density(spec, pts) * h * h * S.ravel()
    return float(np.outer(w, w).ravel() @ vals) / 4


def cell_probabilities(spec: DensitySpec, edges: Sequence[float], nodes: int = 16) -> np.ndarray:
    """Mass of each cell of the grid ``edges x edges`` for a two-coordinate density.

    The density jumps across the diagonal, so diagonal cells are split into
    two triangles, each integrated smoothly.
    """
    if spec.n != 3:
        raise ValueError("cell integration is implemented for n = 3 only")
    e = np.asarray(edges, dtype=float)
    if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0) or not np.all(np.isfinite(e)):
        raise ValueError("edges must be finite and strictly increasing")
    m = e.size - 1
    out = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            if i == j:
                out[i, j] = (_gl_triangle(spec, e[i], e[i + 1], nodes, False)
                             + _gl_triangle(spec, e[i], e[i + 1], nodes, True))
            else:
                out[i, j] = _gl_square(spec, e[i], e[i + 1], e[j], e[j + 1], nodes)
    return out


def density_mass(spec: DensitySpec, samples: int = 100_000, seed: int = 0) -> tuple[float, float]:
    """Importance-sampling estimate of the total mass, with its standard error.

    Proposal: order statistics built from a Gamma(2, 1) first gap and Exp(1)
    later gaps, with a uniformly random assignment to coordinates.
    """
    d = spec.n - 1
    gen = np.random.default_rng(seed)
    gaps = np.column_stack([gen.gamma(2.0, size=samples)]
                           + [gen.exponential(size=samples) for _ in range(d - 1)])
    sorted_pts = np.cumsum(gaps, axis=1)
    perm = np.argsort(gen.random((samples, d)), axis=1)
    pts = np.take_along_axis(sorted_pts, perm, axis=1)
    log_q = np.log(gaps[:, 0]) - gaps.sum(axis=1) - math.lgamma(d + 1)
    ratio = joint_density(spec, pts) / np.exp(log_q)
    return float(ratio.mean()), float(ratio.std(ddof=1) / math.sqrt(samples))


# -- two-sample tests --------------------------------------------------------

def ks_threshold(m: int, m2: int, alpha: float) -> float:
    c = math.sqrt(-math.log(alpha / 2) / 2)
    return c * math.sqrt((m + m2) / (m * m2))


def ks_two_sample(a, b, alpha: float = 0.01) -> tuple[float, float, bool]:
    """Sup distance between empirical CDFs, its asymptotic threshold, verdict."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    stat = float(np.max(np.abs(fa - fb)))
    thr = ks_threshold(a.size, b.size, alpha)
    return stat, thr, stat <= thr


def _order_keys(times: np.ndarray) -> list[tuple[int, ...]]:
    ranks = np.argsort(np.argsort(times, axis=1, kind="stable"), axis=1) + 1
    return [tuple(int(v) for v in row) for row in ranks]


def ordering_chisquare(a: np.ndarray, b: np.ndarray) -> dict:
    """Homogeneity test of the coordinate-ordering permutations of two samples."""
    ca, cb = Counter(_order_keys(a)), Counter(_order_keys(b))
    cats = sorted(set(ca) | set(cb))
    if len(cats) < 2:
        return {"statistic": 0.0, "dof": 0, "pvalue": 1.0, "categories": len(cats)}
    table = np.array([[ca.get(c, 0) for c in cats], [cb.get(c, 0) for c in cats]])
    stat, p, dof, _ = sps.chi2_contingency(table, correction=False)
    return {"statistic": float(stat), "dof": int(dof), "pvalue": float(p), "categories": len(cats)}


def trajectory_probabilities(model: str, n: int) -> dict[tuple[int, ...], float]:
    """``prod 1/deg`` for every path, keyed like :attr:`TrialBatch.trajectories`."""
    from .combinatorics import network_walk, staircase, syt_walk

    out = {}
    if model == "osp":
        for word, degs in network_walk(n):
            out[tuple(word)] = 1.0 / math.prod(degs)
    elif model == "growth":
        for rows, degs in syt_walk(staircase(n)):
            out[tuple(v for r in rows for v in r)] = 1.0 / math.prod(degs)
    else:
        raise ValueError(f"no trajectory law for model {model!r}")
    return out


def trajectory_chisquare(batch: TrialBatch) -> dict:
    probs = trajectory_probabilities(batch.model, batch.n)
    keys = list(probs)
    observed = Counter(batch.trajectory_keys())
    unknown = set(observed) - set(probs)
    if unknown:
        raise ValueError(f"{len(unknown)} sampled trajectories are not valid paths")
    obs = np.array([observed.get(k, 0) for k in keys], dtype=float)
    exp = np.array([probs[k] for k in keys]) * len(batch)
    stat, p = sps.chisquare(obs, exp)
    return {"statistic": float(stat), "dof": len(keys) - 1, "pvalue": float(p)}


# -- process comparison ------------------------------------------------------

def derive_seed(seed: int, side: int) -> int:
    return int(np.random.SeedSequence([int(seed), side]).generate_state(1, np.uint64)[0])


@dataclass
class ComparisonReport:
    model_a: str
    model_b: str
    n: int
    trials: int
    seed: int
    alpha: float
    marginals: list[dict] = field(default_factory=list)
    ordering: dict | None = None
    absorb: dict | None = None
    moments: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        ok = all(m["pass"] for m in self.marginals)
        if self.ordering is not None:
            ok = ok and self.ordering["pass"]
        if self.absorb is not None:
            ok = ok and self.absorb["pass"]
        return ok

    def to_json(self) -> dict:
        return {
            "a": self.model_a, "b": self.model_b, "n": self.n, "trials": self.trials,
            "seed": self.seed, "alpha": self.alpha, "marginals": self.marginals,
            "ordering": self.ordering, "absorb": self.absorb, "moments": self.moments,
            "verdict": "pass" if self.verdict else "fail",
        }

    def lines(self) -> list[str]:
        out = []
        for m in self.marginals:
            out.append(f"KS t{m['k']}: D={m['statistic']:.5f} thr={m['threshold']:.5f} "
                       f"{'pass' if m['pass'] else 'FAIL'}")
        if self.ordering is not None:
            o = self.ordering
            out.append(f"ordering chi2={o['statistic']:.2f} dof={o['dof']} p={o['pvalue']:.4f} "
                       f"{'pass' if o['pass'] else 'FAIL'}")
        if self.absorb is not None:
            a = self.absorb
            out.append(f"KS absorb: D={a['statistic']:.5f} thr={a['threshold']:.5f} "
                       f"{'pass' if a['pass'] else 'FAIL'}")
        out.append("verdict: " + ("pass" if self.verdict else "FAIL"))
        return out


def _moments(a: np.ndarray, b: np.ndarray) -> dict:
    ma, mb = a.mean(axis=0), b.mean(axis=0)
    se = np.sqrt(a.var(axis=0, ddof=1) / len(a) + b.var(axis=0, ddof=1) / len(b))
    ca, cb = np.atleast_2d(np.cov(a, rowvar=False)), np.atleast_2d(np.cov(b, rowvar=False))
    return {
        "mean_a": ma.tolist(), "mean_b": mb.tolist(), "mean_se": se.tolist(),
        "mean_z": ((ma - mb) / se).tolist(),
        "cov_a": ca.tolist(), "cov_b": cb.tolist(),
        "cov_max_abs_diff": float(np.max(np.abs(ca - cb))),
    }


def compare_batches(a: TrialBatch, b: TrialBatch, alpha: float = 0.01,
                    checks: Sequence[str] = ("marginals", "ordering", "absorb"),
                    seed: int = 0) -> ComparisonReport:
    if a.n != b.n:
        raise ValueError("samples have different n")
    rep = ComparisonReport(a.model, b.model, a.n, len(a), seed, alpha)
    if "marginals" in checks:
        for k in range(a.n - 1):
            stat, thr, ok = ks_two_sample(a.times[:, k], b.times[:, k], alpha)
            rep.marginals.append({"k": k + 1, "statistic": stat, "threshold": thr, "pass": ok})
    if "ordering" in checks:
        o = ordering_chisquare(a.times, b.times)
        o["pass"] = o["pvalue"] > alpha
        rep.ordering = o
    if "absorb" in checks:
        stat, thr, ok = ks_two_sample(a.absorb, b.absorb, alpha)
        rep.absorb = {"statistic": stat, "threshold": thr, "pass": ok}
    rep.moments = _moments(a.times, b.times)
    return rep


def compare_processes(model_a: str, model_b: str, n: int, trials: int, seed: int,
                      alpha: float = 0.01,
                      checks: Sequence[str] = ("marginals", "ordering", "absorb"),
                      workers: int = 1) -> ComparisonReport:
    """Sample both models on independent streams and compare them."""
    a = run_model(model_a, n, trials, derive_seed(seed, 0), workers)
    b = run_model(model_b, n, trials, derive_seed(seed, 1), workers)
    return compare_batches(a, b, alpha, checks, seed)
