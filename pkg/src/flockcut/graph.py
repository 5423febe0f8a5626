"""Undirected simple graphs on dense integer vertices, with stable edge ids.

Edge ids are assigned once when the graph is first built and never change:
removing edges produces a new Graph that shares the endpoint arrays and
carries a smaller live-edge mask, so a misalignment table recorded against
one round's graph still addresses the same edges after further removals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit


@dataclass(eq=False)
class Partition:
    """Vertex -> community label map. Labels are arbitrary non-negative ints."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if labels.size and labels.min() < 0:
            raise ValueError("labels must be non-negative")
        self.labels = labels

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def n_communities(self) -> int:
        return int(np.unique(self.labels).size)

    def sizes(self) -> dict[int, int]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.labels):
            out.setdefault(int(c), []).append(i)
        return [out[c] for c in sorted(out)]

    def canonical(self) -> "Partition":
        """Relabel communities 0..c-1 in order of first appearance."""
        return Partition(_canonical_labels(self.labels))

    def same_grouping(self, other: "Partition") -> bool:
        if self.n != other.n:
            return False
        return bool(
            np.array_equal(_canonical_labels(self.labels), _canonical_labels(other.labels))
        )


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inverse]


class Graph:
    """Immutable undirected simple graph.

    Vertices are 0..n-1. Endpoint arrays are indexed by edge id; `_alive`
    marks which ids are still present. Derived views (live endpoints,
    degrees, CSR adjacency) are built lazily and cached, so the compaction
    cost is paid once per removal round.
    """

    __slots__ = ("n", "_eu", "_ev", "_alive", "_cache")

    def __init__(self, n: int, eu: np.ndarray, ev: np.ndarray, alive: np.ndarray):
        self.n = int(n)
        self._eu = eu
        self._ev = ev
        self._alive = alive
        self._cache: dict[str, object] = {}

    # -- basic views -------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self._alive.sum())

    @property
    def n_edge_ids(self) -> int:
        """Size of the id space (edges ever created, live or removed)."""
        return self._eu.shape[0]

    @property
    def edge_ids(self) -> np.ndarray:
        ids = self._cache.get("edge_ids")
        if ids is None:
            ids = np.flatnonzero(self._alive)
            self._cache["edge_ids"] = ids
        return ids  # type: ignore[return-value]

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Live endpoint arrays (eu, ev), aligned with `edge_ids`."""
        pair = self._cache.get("endpoints")
        if pair is None:
            ids = self.edge_ids
            pair = (self._eu[ids], self._ev[ids])
            self._cache["endpoints"] = pair
        return pair  # type: ignore[return-value]

    @property
    def degrees(self) -> np.ndarray:
        deg = self._cache.get("degrees")
        if deg is None:
            eu, ev = self.endpoints
            deg = np.bincount(eu, minlength=self.n) + np.bincount(ev, minlength=self.n)
            self._cache["degrees"] = deg
        return deg  # type: ignore[return-value]

    def edge_endpoints(self, edge_id: int) -> tuple[int, int]:
        if not (0 <= edge_id < self._eu.shape[0]) or not self._alive[edge_id]:
            raise ValueError(f"edge id {edge_id} is not a live edge")
        return int(self._eu[edge_id]), int(self._ev[edge_id])

    def edges(self):
        """Yield (edge_id, u, v) for live edges in ascending id order."""
        eu, ev = self.endpoints
        for eid, u, v in zip(self.edge_ids, eu, ev):
            yield int(eid), int(u), int(v)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency as (indptr, indices). Neighbor order is deterministic."""
        pair = self._cache.get("csr")
        if pair is None:
            eu, ev = self.endpoints
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(self.degrees, out=indptr[1:])
            both = np.concatenate([eu, ev])
            order = np.argsort(both, kind="stable")
            indices = np.concatenate([ev, eu])[order]
            pair = (indptr, indices)
            self._cache["csr"] = pair
        return pair  # type: ignore[return-value]

    def neighbors(self, i: int) -> np.ndarray:
        indptr, indices = self.csr()
        return indices[indptr[i] : indptr[i + 1]]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, pairs) -> Graph:
    """Build a simple graph from vertex pairs.

    Self-loops are dropped and duplicate pairs (in either orientation)
    collapse to one edge. Edge ids follow first-seen order.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    seen: dict[tuple[int, int], int] = {}
    eu_list: list[int] = []
    ev_list: list[int] = []
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex pair ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen[key] = len(eu_list)
        eu_list.append(key[0])
        ev_list.append(key[1])
    eu = np.asarray(eu_list, dtype=np.int64)
    ev = np.asarray(ev_list, dtype=np.int64)
    alive = np.ones(eu.shape[0], dtype=bool)
    return Graph(n, eu, ev, alive)


def remove_edges(g: Graph, edge_ids) -> Graph:
    """Return a copy of `g` with the given live edge ids removed.

    All other edge ids are unchanged, so tables recorded against `g`
    still address the surviving edges of the result.
    """
    ids = np.asarray(edge_ids, dtype=np.int64)
    if ids.size != np.unique(ids).size:
        raise ValueError("duplicate edge ids in removal set")
    if ids.size:
        if ids.min() < 0 or ids.max() >= g._eu.shape[0] or not g._alive[ids].all():
            raise ValueError("removal set contains ids that are not live edges")
    alive = g._alive.copy()
    alive[ids] = False
    return Graph(g.n, g._eu, g._ev, alive)


@njit(cache=True)
def _component_labels(n: int, eu: np.ndarray, ev: np.ndarray) -> np.ndarray:
    parent = np.arange(n)
    for e in range(eu.shape[0]):
        ru = eu[e]
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rv = ev[e]
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    labels = np.empty(n, dtype=np.int64)
    root_label = np.full(n, -1, dtype=np.int64)
    c = 0
    for i in range(n):
        r = i
        while parent[r] != r:
            r = parent[r]
        if root_label[r] < 0:
            root_label[r] = c
            c += 1
        labels[i] = root_label[r]
    return labels


def connected_components(g: Graph) -> Partition:
    """Connected components, labeled 0..c-1 by smallest contained vertex."""
    eu, ev = g.endpoints
    return Partition(_component_labels(g.n, eu, ev))
