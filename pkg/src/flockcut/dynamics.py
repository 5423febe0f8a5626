"""Heading-alignment dynamics on a graph.

Each vertex carries a D-dimensional velocity vector. One step renormalizes
every vector to unit length and pulls it toward the mean heading of its
neighbors:

    v_i(t+1) = (1 - alpha) * vhat_i(t) + alpha * mean_{j ~ i} vhat_j(t)

with vhat = v / ||v||. For alpha in (0, 0.5) the updated norms stay in
(1 - 2*alpha, 1], so the renormalization is always defined. Isolated
vertices keep their unit heading unchanged.

The per-edge misalignment coefficient is the city-block distance between
the two endpoint headings, bounded by 2*sqrt(D). A batch kernel evolves all
runs of a removal round in one call; its per-run arithmetic is ordered
exactly like the single-run path, so batching never changes results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph

_REASONS = {0: "t_max", 1: "converged", 2: "floor"}


@dataclass(frozen=True)
class DynParams:
    """Dynamics controls.

    conv_tol > 0 stops a run once the largest per-component change of the
    normalized vectors falls below it; floor_tol > 0 stops once the mean
    edge misalignment drops under it (numerical floor guard). Either check
    is disabled at 0.
    """

    alpha: float = 0.1
    d: int = 3
    t_max: int = 100
    conv_tol: float = 0.0
    floor_tol: float = 1e-12

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 0.5):
            raise ValueError("alpha must lie in (0, 0.5)")
        if self.d < 2:
            raise ValueError("dimension must be at least 2")
        if self.t_max < 1:
            raise ValueError("t_max must be at least 1")
        if self.conv_tol < 0.0 or self.floor_tol < 0.0:
            raise ValueError("tolerances must be non-negative")


@dataclass(eq=False)
class VelocityState:
    """Raw (unnormalized) velocity vectors after t steps."""

    vectors: np.ndarray
    t: int = 0

    def __post_init__(self) -> None:
        vectors = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2:
            raise ValueError("vectors must have shape (n, d)")
        self.vectors = vectors

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    @property
    def normalized(self) -> np.ndarray:
        norms = self.norms
        if np.any(norms == 0.0):
            raise ValueError("state contains a zero vector")
        return self.vectors / norms[:, None]


@dataclass(eq=False)
class MisalignmentTable:
    """Per-edge misalignment, aligned with a graph's live edge ids."""

    edge_ids: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        self.edge_ids = np.asarray(self.edge_ids, dtype=np.int64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.edge_ids.shape != self.values.shape:
            raise ValueError("edge_ids and values must align")

    def __add__(self, other: "MisalignmentTable") -> "MisalignmentTable":
        if not np.array_equal(self.edge_ids, other.edge_ids):
            raise ValueError("tables address different edge sets")
        return MisalignmentTable(self.edge_ids, self.values + other.values)

    def top(self, k: int) -> np.ndarray:
        """Ids of the k most misaligned edges; ties favor the smaller id."""
        k = min(int(k), self.edge_ids.shape[0])
        order = np.lexsort((self.edge_ids, -self.values))
        return self.edge_ids[order[:k]]

    def as_dict(self) -> dict[int, float]:
        return {int(e): float(v) for e, v in zip(self.edge_ids, self.values)}


def _as_seedseq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def run_seeds(seed, n_runs: int) -> list[np.random.SeedSequence]:
    """Per-run seeds used by `aggregate_runs`, split from a master seed."""
    return _as_seedseq(seed).spawn(n_runs)


def init_state(g: Graph, d: int = 3, seed=0) -> VelocityState:
    """Unit vectors drawn uniformly on the d-sphere, one per vertex."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    rng = np.random.default_rng(_as_seedseq(seed))
    vec = rng.standard_normal((g.n, d))
    norms = np.linalg.norm(vec, axis=1)
    while True:
        # degenerate draws are astronomically rare; resample for safety
        bad = norms < 1e-8
        if not bad.any():
            break
        vec[bad] = rng.standard_normal((int(bad.sum()), d))
        norms[bad] = np.linalg.norm(vec[bad], axis=1)
    return VelocityState(vec / norms[:, None], t=0)


@njit(cache=True)
def _evolve(v, indptr, indices, eu, ev, alpha, t_max, conv_tol, floor_tol):
    """Advance every run in `v` (shape (R, n, d), modified in place).

    Lanes layout: headings live in (n, R*d) arrays so the neighbor gather
    is shared by all runs. Lane r*d+c never mixes with other runs, and per
    lane the accumulation order matches a single-run call bitwise.

    Returns (t_stop, reason) per run; reason 0 = t_max, 1 = converged,
    2 = floor, -1 = a vector collapsed to zero norm (caller raises).
    """
    runs, n, d = v.shape
    m = eu.shape[0]
    lanes = runs * d
    vhat = np.empty((n, lanes))
    vhat_new = np.empty((n, lanes))
    work = np.empty((n, lanes))
    t_stop = np.zeros(runs, dtype=np.int64)
    reason = np.zeros(runs, dtype=np.int64)
    for i in range(n):
        for r in range(runs):
            s = 0.0
            for c in range(d):
                s += v[r, i, c] * v[r, i, c]
            nrm = np.sqrt(s)
            for c in range(d):
                vhat[i, r * d + c] = v[r, i, c] / nrm
    active = np.ones(runs, dtype=np.bool_)
    n_active = runs
    for t in range(1, t_max + 1):
        for i in range(n):
            lo, hi = indptr[i], indptr[i + 1]
            deg = hi - lo
            if deg == 0:
                for l in range(lanes):
                    work[i, l] = vhat[i, l]
            else:
                for l in range(lanes):
                    work[i, l] = 0.0
                for p in range(lo, hi):
                    j = indices[p]
                    for l in range(lanes):
                        work[i, l] += vhat[j, l]
                kf = float(deg)
                for l in range(lanes):
                    work[i, l] = (1.0 - alpha) * vhat[i, l] + alpha * (work[i, l] / kf)
        for i in range(n):
            for r in range(runs):
                base = r * d
                if not active[r]:
                    for c in range(d):
                        vhat_new[i, base + c] = vhat[i, base + c]
                    continue
                s = 0.0
                for c in range(d):
                    x = work[i, base + c]
                    s += x * x
                nrm = np.sqrt(s)
                if nrm == 0.0:
                    for rr in range(runs):
                        if active[rr]:
                            reason[rr] = -1
                            t_stop[rr] = t
                    return t_stop, reason
                for c in range(d):
                    vhat_new[i, base + c] = work[i, base + c] / nrm
        for r in range(runs):
            if not active[r]:
                continue
            base = r * d
            stopped = False
            if conv_tol > 0.0:
                mx = 0.0
                for i in range(n):
                    for c in range(d):
                        diff = abs(vhat_new[i, base + c] - vhat[i, base + c])
                        if diff > mx:
                            mx = diff
                if mx < conv_tol:
                    reason[r] = 1
                    stopped = True
            if not stopped and floor_tol > 0.0:
                mean = 0.0
                if m > 0:
                    tot = 0.0
                    for e in range(m):
                        a, b = eu[e], ev[e]
                        for c in range(d):
                            tot += abs(vhat_new[a, base + c] - vhat_new[b, base + c])
                    mean = tot / m
                if mean < floor_tol:
                    reason[r] = 2
                    stopped = True
            if stopped or t == t_max:
                if not stopped:
                    reason[r] = 0
                t_stop[r] = t
                for i in range(n):
                    for c in range(d):
                        v[r, i, c] = work[i, base + c]
                active[r] = False
                n_active -= 1
        tmp = vhat
        vhat = vhat_new
        vhat_new = tmp
        if n_active == 0:
            break
    return t_stop, reason


def _check_state(g: Graph, state: VelocityState) -> None:
    if state.n != g.n:
        raise ValueError("state size does not match vertex count")
    if np.any(state.norms == 0.0):
        raise ValueError("state contains a zero vector")


def step(g: Graph, state: VelocityState, alpha: float) -> VelocityState:
    """One update of the alignment dynamics."""
    if not (0.0 < alpha < 0.5):
        raise ValueError("alpha must lie in (0, 0.5)")
    _check_state(g, state)
    indptr, indices = g.csr()
    eu, ev = g.endpoints
    v = state.vectors[None, :, :].copy()
    _, reason = _evolve(v, indptr, indices, eu, ev, float(alpha), 1, 0.0, 0.0)
    if reason[0] < 0:
        raise RuntimeError("velocity norm collapsed to zero")
    return VelocityState(v[0], t=state.t + 1)


def run(g: Graph, params: DynParams, seed=0) -> tuple[VelocityState, int, str]:
    """Evolve from a fresh seeded state until t_max or a stop rule fires.

    Returns (final state, iterations executed, stop reason), where the
    reason is one of "t_max", "converged", "floor".
    """
    state = init_state(g, params.d, seed)
    indptr, indices = g.csr()
    eu, ev = g.endpoints
    v = state.vectors[None, :, :].copy()
    t_stop, reason = _evolve(
        v, indptr, indices, eu, ev,
        params.alpha, params.t_max, params.conv_tol, params.floor_tol,
    )
    if reason[0] < 0:
        raise RuntimeError("velocity norm collapsed to zero")
    return VelocityState(v[0], t=int(t_stop[0])), int(t_stop[0]), _REASONS[int(reason[0])]


def misalignment(g: Graph, state: VelocityState) -> MisalignmentTable:
    """City-block distance between endpoint headings, per live edge."""
    _check_state(g, state)
    vhat = state.normalized
    eu, ev = g.endpoints
    values = np.abs(vhat[eu] - vhat[ev]).sum(axis=1)
    return MisalignmentTable(g.edge_ids.copy(), values)


def energy(g: Graph, state: VelocityState) -> float:
    """Alignment energy: half the sum of squared heading differences over edges.

    Zero exactly when every connected pair of vertices shares a heading.
    """
    _check_state(g, state)
    vhat = state.normalized
    eu, ev = g.endpoints
    diff = vhat[eu] - vhat[ev]
    return float(0.5 * np.sum(diff * diff))


def aggregate_runs(g: Graph, params: DynParams, n_runs: int, seed=0) -> MisalignmentTable:
    """Sum of the final-state misalignment tables of n_runs seeded runs.

    Per-run seeds come from `run_seeds(seed, n_runs)`; tables are summed in
    run-index order, so the result is bitwise reproducible regardless of
    how the batch is executed.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    seeds = run_seeds(seed, n_runs)
    v = np.empty((n_runs, g.n, params.d))
    for r, child in enumerate(seeds):
        v[r] = init_state(g, params.d, child).vectors
    indptr, indices = g.csr()
    eu, ev = g.endpoints
    _, reason = _evolve(
        v, indptr, indices, eu, ev,
        params.alpha, params.t_max, params.conv_tol, params.floor_tol,
    )
    if np.any(reason < 0):
        raise RuntimeError("velocity norm collapsed to zero")
    norms = np.linalg.norm(v, axis=2)
    vhat = v / norms[:, :, None]
    diffs = np.abs(vhat[:, eu, :] - vhat[:, ev, :]).sum(axis=2)
    values = np.zeros(eu.shape[0])
    for r in range(n_runs):
        values += diffs[r]
    return MisalignmentTable(g.edge_ids.copy(), values)
