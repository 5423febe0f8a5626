"""Planted-partition benchmark networks.

Every vertex draws k_des/2 connection targets: with probability p_in the
target is uniform over the vertex's own community (itself included), else
uniform over all vertices outside it. The drawn pairs then pass through
graph simplification (self-loops dropped, duplicates collapsed), which is
why realized mean degree lands slightly below k_des.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition, build_graph


@dataclass(frozen=True)
class PlantedSpec:
    community_sizes: tuple[int, ...]
    k_des: int = 10
    p_in: float = 0.66

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.community_sizes)
        object.__setattr__(self, "community_sizes", sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("community sizes must be positive")
        if self.k_des < 0 or self.k_des % 2 != 0:
            raise ValueError("desired degree must be a non-negative even integer")
        if not (0.0 <= self.p_in <= 1.0):
            raise ValueError("p_in must lie in [0, 1]")
        if self.p_in < 1.0 and len(sizes) < 2:
            raise ValueError("an outside draw needs at least two communities")

    @property
    def n(self) -> int:
        return sum(self.community_sizes)

    def labels(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.community_sizes)), self.community_sizes)


def planted_pairs(spec: PlantedSpec, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Raw target draws, before simplification. Self-pairs may occur."""
    n = spec.n
    starts = np.concatenate([[0], np.cumsum(spec.community_sizes)])
    labels = spec.labels()
    draws = spec.k_des // 2
    pairs: list[tuple[int, int]] = []
    for i in range(n):
        c = labels[i]
        start, size = int(starts[c]), spec.community_sizes[c]
        for _ in range(draws):
            if rng.random() < spec.p_in:
                j = start + int(rng.integers(size))
            else:
                j = int(rng.integers(n - size))
                if j >= start:
                    j += size
            pairs.append((i, j))
    return pairs


def planted_partition(spec: PlantedSpec, seed=0) -> tuple[Graph, Partition]:
    """Seeded benchmark graph plus its ground-truth community partition."""
    rng = np.random.default_rng(seed)
    g = build_graph(spec.n, planted_pairs(spec, rng))
    return g, Partition(spec.labels())
