"""Reference detectors: greedy modularity agglomeration and seeded
two-phase local moves. Both are deterministic (the latter per seed) and
evaluate their result with the exact modularity routine, not the running
bookkeeping.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .dynamics import _as_seedseq
from .graph import Graph, Partition
from .metrics import modularity


@dataclass(frozen=True)
class MergeStep:
    round: int
    pair: tuple[int, int]
    delta_q: float
    q_after: float


def _labels_from_merges(n: int, merges: list[tuple[int, int]]) -> np.ndarray:
    parent = np.arange(n)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return int(x)

    for c, d in merges:
        rc, rd = find(c), find(d)
        if rc != rd:
            parent[max(rc, rd)] = min(rc, rd)
    labels = np.empty(n, dtype=np.int64)
    root_label: dict[int, int] = {}
    for i in range(n):
        r = find(i)
        if r not in root_label:
            root_label[r] = len(root_label)
        labels[i] = root_label[r]
    return labels


def cfg_with_trace(g: Graph) -> tuple[Partition, float, list[MergeStep]]:
    """Greedy agglomeration: repeatedly merge the connected community pair
    with the largest modularity gain (ties: smallest id pair), then return
    the highest-modularity cut of the whole merge sequence.
    """
    m = g.m
    if m == 0:
        raise ValueError("agglomeration is undefined on an edgeless graph")
    n = g.n
    deg_sum = g.degrees.astype(np.float64)
    weight: list[dict[int, int]] = [dict() for _ in range(n)]
    eu, ev = g.endpoints
    for u, v in zip(eu, ev):
        u, v = int(u), int(v)
        weight[u][v] = weight[u].get(v, 0) + 1
        weight[v][u] = weight[v].get(u, 0) + 1
    alive = np.ones(n, dtype=bool)
    two_m = 2.0 * m

    def gain(c: int, d: int) -> float:
        return weight[c][d] / m - deg_sum[c] * deg_sum[d] / (two_m * m)

    version: dict[tuple[int, int], int] = {}
    heap: list[tuple[float, int, int, int]] = []
    for c in range(n):
        for d in weight[c]:
            if c < d:
                version[(c, d)] = 0
                heap.append((-gain(c, d), c, d, 0))
    heapq.heapify(heap)

    q = float(-np.sum((deg_sum / two_m) ** 2))
    merges: list[tuple[int, int]] = []
    steps: list[MergeStep] = []
    best_q = q
    best_len = 0
    while heap:
        neg_dq, c, d, ver = heapq.heappop(heap)
        key = (c, d)
        if not (alive[c] and alive[d]) or version.get(key) != ver:
            continue
        dq = -neg_dq
        q += dq
        merges.append(key)
        steps.append(MergeStep(len(merges), key, dq, q))
        # fold d into c
        for x, w_dx in weight[d].items():
            if x == c:
                continue
            weight[c][x] = weight[c].get(x, 0) + w_dx
            weight[x][c] = weight[c][x]
            del weight[x][d]
        weight[c].pop(d, None)
        weight[d].clear()
        alive[d] = False
        deg_sum[c] += deg_sum[d]
        for x in weight[c]:
            pair = (c, x) if c < x else (x, c)
            ver_new = version.get(pair, -1) + 1
            version[pair] = ver_new
            heapq.heappush(heap, (-gain(pair[0], pair[1]), pair[0], pair[1], ver_new))
        if q > best_q:
            best_q = q
            best_len = len(merges)
    partition = Partition(_labels_from_merges(n, merges[:best_len]))
    return partition, modularity(g, partition), steps


def cfg(g: Graph) -> tuple[Partition, float]:
    partition, q, _ = cfg_with_trace(g)
    return partition, q


def louvain(g: Graph, seed=0) -> tuple[Partition, float]:
    """Two-phase heuristic: seeded-order local moves, then aggregation,
    repeated until the modularity gain between levels drops below 1e-9.
    """
    m = g.m
    if m == 0:
        raise ValueError("louvain is undefined on an edgeless graph")
    rng = np.random.default_rng(_as_seedseq(seed))
    two_m = 2.0 * m

    adj: list[dict[int, float]] = [dict() for _ in range(g.n)]
    eu, ev = g.endpoints
    for u, v in zip(eu, ev):
        u, v = int(u), int(v)
        adj[u][v] = adj[u].get(v, 0.0) + 1.0
        adj[v][u] = adj[v].get(u, 0.0) + 1.0
    self_w = np.zeros(g.n)
    mapping = np.arange(g.n)

    q_prev = -np.inf
    flat_prev: np.ndarray | None = None
    while True:
        level_n = len(adj)
        strength = np.array([sum(nbrs.values()) for nbrs in adj]) + 2.0 * self_w
        comm = np.arange(level_n)
        s_tot = strength.copy()
        order = rng.permutation(level_n)
        moved = True
        while moved:
            moved = False
            for i in order:
                i = int(i)
                c0 = int(comm[i])
                wc: dict[int, float] = {}
                for j, w_ij in adj[i].items():
                    cj = int(comm[j])
                    wc[cj] = wc.get(cj, 0.0) + w_ij
                s_tot[c0] -= strength[i]
                best_c = c0
                best_gain = wc.get(c0, 0.0) - strength[i] * s_tot[c0] / two_m
                for cand in sorted(wc):
                    if cand == c0:
                        continue
                    g_cand = wc[cand] - strength[i] * s_tot[cand] / two_m
                    if g_cand > best_gain:
                        best_gain = g_cand
                        best_c = cand
                comm[i] = best_c
                s_tot[best_c] += strength[i]
                if best_c != c0:
                    moved = True
        flat = comm[mapping]
        partition = Partition(flat).canonical()
        q_new = modularity(g, partition)
        if q_new - q_prev < 1e-9:
            if flat_prev is not None and q_prev >= q_new:
                final = Partition(flat_prev).canonical()
                return final, modularity(g, final)
            return partition, q_new
        q_prev = q_new
        flat_prev = flat
        # aggregate communities into supernodes
        _, compact = np.unique(comm, return_inverse=True)
        k = int(compact.max()) + 1
        new_adj: list[dict[int, float]] = [dict() for _ in range(k)]
        new_self = np.zeros(k)
        for i in range(level_n):
            ci = int(compact[i])
            new_self[ci] += self_w[i]
            for j, w_ij in adj[i].items():
                if j < i:
                    continue
                cj = int(compact[j])
                if ci == cj:
                    new_self[ci] += w_ij
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w_ij
                    new_adj[cj][ci] = new_adj[ci][cj]
        adj = new_adj
        self_w = new_self
        mapping = compact[mapping]
