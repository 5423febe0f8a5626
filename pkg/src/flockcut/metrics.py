"""Partition quality and agreement scores: modularity, ARI, NMI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition


def _labels(p) -> np.ndarray:
    if isinstance(p, Partition):
        return p.labels
    return Partition(np.asarray(p)).labels


@dataclass(eq=False)
class ContingencyTable:
    """Joint cluster counts of two labelings over the same n items.

    Only non-zero cells are stored: `rows[k]`, `cols[k]`, `counts[k]` give
    one cell each; `a_sizes` / `b_sizes` are the marginals over the compacted
    label sets.
    """

    n: int
    a_sizes: np.ndarray
    b_sizes: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    counts: np.ndarray


def contingency(a, b) -> ContingencyTable:
    la, lb = _labels(a), _labels(b)
    if la.shape[0] != lb.shape[0]:
        raise ValueError("partitions cover different numbers of items")
    n = la.shape[0]
    _, a_inv = np.unique(la, return_inverse=True)
    _, b_inv = np.unique(lb, return_inverse=True)
    k_a = int(a_inv.max()) + 1 if n else 0
    k_b = int(b_inv.max()) + 1 if n else 0
    a_sizes = np.bincount(a_inv, minlength=k_a)
    b_sizes = np.bincount(b_inv, minlength=k_b)
    joint = a_inv.astype(np.int64) * max(k_b, 1) + b_inv
    cells, counts = np.unique(joint, return_counts=True)
    rows = cells // max(k_b, 1)
    cols = cells % max(k_b, 1)
    return ContingencyTable(n, a_sizes, b_sizes, rows, cols, counts)


def modularity(g: Graph, p) -> float:
    """Newman modularity of a partition, evaluated on `g`.

    Q = sum over communities of [ L_c / m - (D_c / 2m)^2 ], with L_c the
    intra-community edge count and D_c the community degree sum.
    """
    m = g.m
    if m == 0:
        raise ValueError("modularity is undefined on an edgeless graph")
    labels = _labels(p)
    if labels.shape[0] != g.n:
        raise ValueError("partition size does not match vertex count")
    eu, ev = g.endpoints
    lu, lv = labels[eu], labels[ev]
    k = int(labels.max()) + 1
    intra = np.bincount(lu[lu == lv], minlength=k).astype(np.float64)
    deg_sum = np.bincount(labels, weights=g.degrees.astype(np.float64), minlength=k)
    return float(np.sum(intra / m - (deg_sum / (2.0 * m)) ** 2))


def _comb2(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.int64)
    return x * (x - 1) // 2


def adjusted_rand_index(a, b) -> float:
    """Adjusted Rand index (permutation-model correction).

    When the correction degenerates (both partitions all-singletons or both
    a single cluster) the score is 1.0 for identical groupings, else 0.0.
    """
    table = contingency(a, b)
    n = table.n
    total_pairs = n * (n - 1) // 2
    index = int(_comb2(table.counts).sum())
    sum_a = int(_comb2(table.a_sizes).sum())
    sum_b = int(_comb2(table.b_sizes).sum())
    degenerate = (sum_a == 0 and sum_b == 0) or (
        sum_a == total_pairs and sum_b == total_pairs
    )
    if degenerate:
        pa, pb = Partition(_labels(a)), Partition(_labels(b))
        return 1.0 if pa.same_grouping(pb) else 0.0
    expected = sum_a * sum_b / total_pairs
    max_index = (sum_a + sum_b) / 2.0
    return float((index - expected) / (max_index - expected))


def _entropy(sizes: np.ndarray, n: int) -> float:
    p = sizes[sizes > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(a, b) -> float:
    """Mutual information normalized by the mean of the two entropies.

    Natural logarithm; 0 * log 0 is 0. Returns 1.0 when both partitions are
    single clusters (identical, zero entropy).
    """
    table = contingency(a, b)
    n = table.n
    if n == 0:
        raise ValueError("nmi is undefined for empty partitions")
    h_a = _entropy(table.a_sizes, n)
    h_b = _entropy(table.b_sizes, n)
    denom = 0.5 * (h_a + h_b)
    if denom == 0.0:
        return 1.0
    pc = table.counts / n
    pa = table.a_sizes[table.rows] / n
    pb = table.b_sizes[table.cols] / n
    info = float((pc * np.log(pc / (pa * pb))).sum())
    if info < 0.0:
        info = 0.0
    return info / denom
