"""Community detection by removing persistently misaligned edges.

Unit heading vectors on the vertices relax toward their neighbors'
average direction; edges whose endpoints keep disagreeing across
independently seeded runs are removed round by round, and the resulting
components are scored by modularity on the untouched input graph.
"""

from .baselines import MergeStep, cfg, cfg_with_trace, louvain
from .detector import DetectionTrace, DetectorConfig, RoundRecord, best_partition_from_trace, detect
from .dynamics import (
    DynParams,
    MisalignmentTable,
    VelocityState,
    aggregate_runs,
    energy,
    init_state,
    misalignment,
    run,
    run_seeds,
    step,
)
from .generators import PlantedSpec, planted_pairs, planted_partition
from .graph import Graph, Partition, build_graph, connected_components, remove_edges
from .io import (
    Dataset,
    ParseError,
    read_csv,
    read_edge_list,
    read_gml_subset,
    read_lfr_community,
    write_csv,
    write_edge_list,
    write_partition,
    write_trace_csv,
)
from .metrics import ContingencyTable, adjusted_rand_index, contingency, modularity, nmi

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Partition",
    "build_graph",
    "remove_edges",
    "connected_components",
    "modularity",
    "adjusted_rand_index",
    "nmi",
    "contingency",
    "ContingencyTable",
    "DynParams",
    "VelocityState",
    "MisalignmentTable",
    "init_state",
    "step",
    "run",
    "run_seeds",
    "misalignment",
    "energy",
    "aggregate_runs",
    "DetectorConfig",
    "DetectionTrace",
    "RoundRecord",
    "detect",
    "best_partition_from_trace",
    "PlantedSpec",
    "planted_pairs",
    "planted_partition",
    "cfg",
    "cfg_with_trace",
    "louvain",
    "MergeStep",
    "Dataset",
    "ParseError",
    "read_edge_list",
    "write_edge_list",
    "read_gml_subset",
    "read_lfr_community",
    "write_partition",
    "read_csv",
    "write_csv",
    "write_trace_csv",
    "__version__",
]
