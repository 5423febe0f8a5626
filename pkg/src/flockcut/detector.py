"""Community detection by repeated removal of the most misaligned edges.

Each round evolves a batch of independently seeded runs on the current
pruned graph, sums the per-edge misalignment over the runs, removes the
top-ranked edges, and scores the resulting connected components against
the ORIGINAL graph's modularity. The best-scoring round's components are
the detected communities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DynParams, aggregate_runs, _as_seedseq
from .graph import Graph, Partition, connected_components, remove_edges
from .metrics import adjusted_rand_index, modularity, nmi


@dataclass(frozen=True)
class DetectorConfig:
    """Removal-loop controls.

    Exactly one of remove_count / remove_fraction must be set; a fraction
    is re-applied to the current edge count each round (at least one edge
    always goes). stop="exhaust" runs until no edges remain; "patience"
    stops after `patience` consecutive rounds scoring strictly below the
    running best modularity.
    """

    dyn: DynParams = field(default_factory=DynParams)
    runs_per_round: int = 10
    remove_count: int | None = 1
    remove_fraction: float | None = None
    stop: str = "patience"
    patience: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if (self.remove_count is None) == (self.remove_fraction is None):
            raise ValueError("set exactly one of remove_count / remove_fraction")
        if self.remove_count is not None and self.remove_count < 1:
            raise ValueError("remove_count must be at least 1")
        if self.remove_fraction is not None and not (0.0 < self.remove_fraction <= 1.0):
            raise ValueError("remove_fraction must lie in (0, 1]")
        if self.runs_per_round < 1:
            raise ValueError("runs_per_round must be at least 1")
        if self.stop not in ("exhaust", "patience"):
            raise ValueError('stop must be "exhaust" or "patience"')
        if self.patience < 1:
            raise ValueError("patience must be at least 1")


@dataclass(eq=False)
class RoundRecord:
    round: int
    removed_edge_ids: np.ndarray
    n_components: int
    q: float
    cum_removed: int
    labels: np.ndarray
    ari: float | None = None
    nmi: float | None = None


@dataclass(eq=False)
class DetectionTrace:
    rows: list[RoundRecord]
    best_round: int | None
    best_partition: Partition | None


def detect(
    g: Graph, cfg: DetectorConfig, truth: Partition | None = None
) -> tuple[Partition, DetectionTrace]:
    """Run the removal loop on `g` and return the best-modularity partition.

    Modularity is always evaluated on the original graph; components come
    from the pruned one. When `truth` is given, every round also records
    ARI and NMI against it.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if g.m == 0:
        return Partition(np.arange(g.n)), DetectionTrace([], None, None)
    master = _as_seedseq(cfg.seed)
    g_cur = g
    rows: list[RoundRecord] = []
    best_q = -math.inf
    best_round: int | None = None
    best_labels: np.ndarray | None = None
    below = 0
    cum = 0
    r = 0
    while g_cur.m > 0:
        r += 1
        table = aggregate_runs(g_cur, cfg.dyn, cfg.runs_per_round, master.spawn(1)[0])
        if cfg.remove_count is not None:
            k = min(cfg.remove_count, g_cur.m)
        else:
            k = min(math.ceil(cfg.remove_fraction * g_cur.m), g_cur.m)
        removed = table.top(k)
        g_cur = remove_edges(g_cur, removed)
        cum += removed.shape[0]
        comps = connected_components(g_cur)
        q = modularity(g, comps)
        row = RoundRecord(
            round=r,
            removed_edge_ids=removed,
            n_components=comps.n_communities,
            q=q,
            cum_removed=cum,
            labels=comps.labels,
        )
        if truth is not None:
            row.ari = adjusted_rand_index(comps, truth)
            row.nmi = nmi(comps, truth)
        rows.append(row)
        if q > best_q:
            best_q, best_round, best_labels = q, r, comps.labels
            below = 0
        elif q < best_q:
            below += 1
        else:
            below = 0
        if cfg.stop == "patience" and below >= cfg.patience:
            break
    assert best_labels is not None
    best = Partition(best_labels)
    return best, DetectionTrace(rows, best_round, best)


def best_partition_from_trace(trace: DetectionTrace) -> Partition:
    """Partition of the highest-modularity round (first round on ties)."""
    if not trace.rows:
        raise ValueError("trace has no rounds")
    qs = np.array([row.q for row in trace.rows])
    return Partition(trace.rows[int(np.argmax(qs))].labels)
