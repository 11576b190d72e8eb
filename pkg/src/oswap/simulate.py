"""Samplers for the oriented swap process, corner growth and dual LPP.

Randomness is counter based: trial ``i`` under master seed ``s`` reads its
uniforms from a Philox stream keyed by ``s`` with counter block ``i``, so a
trial is reproduced bit for bit whatever batch or worker produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .combinatorics import SortingNetwork, Tableau, YoungDiagram
from .lpp import dual_corners_batch, lpp_batch, staircase_boxes

__all__ = [
    "RngStream",
    "TrialRecord",
    "TrialBatch",
    "uniforms",
    "sample_weights",
    "sample_osp",
    "sample_corner_growth",
    "sample_dual",
    "osp_batch",
    "growth_batch",
    "dual_batch",
    "osp_from_events",
    "growth_from_weights",
    "osp_naive_batch",
    "run_model",
    "MODELS",
]

MODELS = ("osp", "growth", "dual")


def _key(seed: int) -> int:
    return int(seed) & 0xFFFF_FFFF_FFFF_FFFF


@dataclass(frozen=True)
class RngStream:
    seed: int
    index: int = 0

    def generator(self) -> np.random.Generator:
        bits = np.random.Philox(key=_key(self.seed), counter=[0, int(self.index), 0, 0])
        return np.random.Generator(bits)


def uniforms(seed: int, start: int, count: int, width: int) -> np.ndarray:
    """``(count, width)`` uniforms; row ``r`` belongs to trial ``start + r``."""
    out = np.empty((count, width))
    for r in range(count):
        out[r] = RngStream(seed, start + r).generator().random(width)
    return out


def _exp(u, rate=1.0):
    return -np.log1p(-u) / rate


@dataclass(frozen=True)
class TrialRecord:
    times: tuple[float, ...]
    trajectory: SortingNetwork | Tableau | None

    @property
    def absorb(self) -> float:
        return max(self.times)


@dataclass
class TrialBatch:
    """Trials ``start .. start+T-1`` of one model, column-stacked."""

    model: str
    n: int
    start: int
    times: np.ndarray
    trajectories: np.ndarray | None = None  # words (osp) or row-major SYT entries (growth)
    event_times: np.ndarray | None = None  # osp only: clock time of each swap

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def absorb(self) -> np.ndarray:
        return self.times.max(axis=1)

    def record(self, r: int) -> TrialRecord:
        times = tuple(float(v) for v in self.times[r])
        traj = None
        if self.trajectories is not None:
            row = [int(v) for v in self.trajectories[r]]
            if self.model == "osp":
                traj = SortingNetwork(self.n, tuple(row))
            else:
                traj = _tableau_from_flat(self.n, row)
        return TrialRecord(times, traj)

    def trajectory_keys(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.trajectories]


def _tableau_from_flat(n: int, flat: Sequence[int]) -> Tableau:
    rows, pos = [], 0
    for length in range(n - 1, 0, -1):
        rows.append(tuple(flat[pos:pos + length]))
        pos += length
    return Tableau(tuple(rows))


def sample_weights(shape: YoungDiagram, law: str = "exponential", param: float = 1.0,
                   rng: RngStream | np.random.Generator | None = None) -> Tableau:
    """I.i.d. weights on ``shape``: ``exponential`` (rate) or ``geometric`` (p)."""
    if law == "exponential":
        if not param > 0:
            raise ValueError(f"exponential rate must be positive, got {param}")
    elif law == "geometric":
        if not 0 < param < 1:
            raise ValueError(f"geometric parameter must lie in (0, 1), got {param}")
    else:
        raise ValueError(f"unknown law {law!r}")
    gen = rng.generator() if isinstance(rng, RngStream) else (rng or np.random.default_rng())
    u = gen.random(shape.size)
    if law == "exponential":
        vals = [float(v) for v in _exp(u, param)]
    else:
        vals = [int(v) for v in np.floor(np.log1p(-u) / math.log1p(-param))]
    rows, pos = [], 0
    for length in shape.rows:
        rows.append(tuple(vals[pos:pos + length]))
        pos += length
    return Tableau(tuple(rows))


# -- oriented swap process ---------------------------------------------------

def _osp_core(n: int, waits_u: np.ndarray, choice_u: np.ndarray):
    """Jump chain: hold ``Exp(#ascents)``, then swap a uniform ascent."""
    T, N = waits_u.shape
    perm = np.tile(np.arange(1, n + 1), (T, 1))
    now = np.zeros(T)
    U = np.zeros((T, n - 1))
    words = np.zeros((T, N), dtype=np.int64)
    steps = np.zeros((T, N))
    rows = np.arange(T)
    for k in range(N):
        asc = perm[:, :-1] < perm[:, 1:]
        cnt = asc.sum(axis=1)
        now = now + _exp(waits_u[:, k]) / cnt
        pick = np.minimum((choice_u[:, k] * cnt).astype(np.int64), cnt - 1)
        pos = np.argmax(np.cumsum(asc, axis=1) > pick[:, None], axis=1)
        left = perm[rows, pos].copy()
        perm[rows, pos] = perm[rows, pos + 1]
        perm[rows, pos + 1] = left
        U[rows, pos] = now
        words[:, k] = pos + 1
        steps[:, k] = now
    return U, words, steps


def osp_batch(n: int, trials: int, seed: int, start: int = 0) -> TrialBatch:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    N = n * (n - 1) // 2
    u = uniforms(seed, start, trials, 2 * N)
    U, words, steps = _osp_core(n, u[:, :N], u[:, N:])
    return TrialBatch("osp", n, start, U, words, steps)


def sample_osp(n: int, rng: RngStream) -> TrialRecord:
    return osp_batch(n, 1, rng.seed, rng.index).record(0)


def osp_from_events(n: int, events: Sequence[tuple[float, int]]) -> TrialRecord:
    """Replay given ``(holding time, swapped position)`` pairs."""
    perm = list(range(1, n + 1))
    U = [0.0] * (n - 1)
    now = 0.0
    word = []
    for wait, pos in events:
        if not perm[pos - 1] < perm[pos]:
            raise ValueError(f"position {pos} is not an ascent of {perm}")
        now += wait
        perm[pos - 1], perm[pos] = perm[pos], perm[pos - 1]
        U[pos - 1] = now
        word.append(pos)
    if perm != list(range(n, 0, -1)):
        raise ValueError("events do not reach the reverse permutation")
    return TrialRecord(tuple(U), SortingNetwork(n, tuple(word)))


def osp_naive_batch(n: int, trials: int, seed: int) -> np.ndarray:
    """Last-swap times from ``n-1`` independent rate-1 clocks, futile rings included.

    Validation mode only; draws from one generator per call.
    """
    gen = np.random.Generator(np.random.Philox(key=_key(seed)))
    perm = np.tile(np.arange(1, n + 1), (trials, 1))
    target = np.arange(n, 0, -1)
    ring = gen.exponential(size=(trials, n - 1))
    U = np.zeros((trials, n - 1))
    rows = np.arange(trials)
    active = np.ones(trials, dtype=bool)
    while active.any():
        idx = rows[active]
        clock = np.argmin(ring[idx], axis=1)
        t = ring[idx, clock]
        ok = perm[idx, clock] < perm[idx, clock + 1]
        sw, c = idx[ok], clock[ok]
        left = perm[sw, c].copy()
        perm[sw, c] = perm[sw, c + 1]
        perm[sw, c + 1] = left
        U[sw, c] = t[ok]
        ring[idx, clock] += gen.exponential(size=len(idx))
        active[idx] = ~(perm[idx] == target).all(axis=1)
    return U


# -- corner growth and dual LPP ----------------------------------------------

def _corner_values(L: np.ndarray, n: int) -> np.ndarray:
    return np.stack([L[:, n - k - 1, k - 1] for k in range(1, n)], axis=1)


def growth_from_weights(weights: np.ndarray, n: int) -> TrialBatch:
    """Corner growth driven by given ``(T, N)`` staircase weights."""
    weights = np.atleast_2d(np.asarray(weights, dtype=float))
    L = lpp_batch(weights, n)
    boxes = staircase_boxes(n)
    flat = np.stack([L[:, i, j] for i, j in boxes], axis=1)
    # a box's entry in the standard tableau is the rank of its arrival time
    ranks = np.argsort(np.argsort(flat, axis=1, kind="stable"), axis=1) + 1
    return TrialBatch("growth", n, 0, _corner_values(L, n), ranks)


def growth_batch(n: int, trials: int, seed: int, start: int = 0) -> TrialBatch:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    w = _exp(uniforms(seed, start, trials, n * (n - 1) // 2))
    out = growth_from_weights(w, n)
    out.start = start
    return out


def dual_batch(n: int, trials: int, seed: int, start: int = 0) -> TrialBatch:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    w = _exp(uniforms(seed, start, trials, n * (n - 1) // 2))
    return TrialBatch("dual", n, start, dual_corners_batch(w, n), None)


def sample_corner_growth(n: int, rng: RngStream) -> TrialRecord:
    return growth_batch(n, 1, rng.seed, rng.index).record(0)


def sample_dual(n: int, rng: RngStream) -> TrialRecord:
    return dual_batch(n, 1, rng.seed, rng.index).record(0)


_BATCH = {"osp": osp_batch, "growth": growth_batch, "dual": dual_batch}


def _run_chunk(args):
    model, n, trials, seed, start = args
    return _BATCH[model](n, trials, seed, start)


def run_model(model: str, n: int, trials: int, seed: int, workers: int = 1,
              chunk: int = 20_000) -> TrialBatch:
    """All ``trials`` of ``model``; output does not depend on ``workers``."""
    if model not in _BATCH:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(model, n, min(chunk, trials - s), seed, s) for s in range(0, trials, chunk)]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    times = np.concatenate([p.times for p in parts])
    traj = events = None
    if parts[0].trajectories is not None:
        traj = np.concatenate([p.trajectories for p in parts])
    if parts[0].event_times is not None:
        events = np.concatenate([p.event_times for p in parts])
    return TrialBatch(model, n, 0, times, traj, events)
