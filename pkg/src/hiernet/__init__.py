"""Random block-hierarchical networks as node-link trees.

The package generates regular and irregular networks whose adjacency is
implied by a partition tree with per-vertex link bitmaps, and computes
exact structural statistics (degrees, cycle counts, distances, components)
by traversing that tree.  The `oracle` module is the only place where the
full adjacency structure is ever expanded, and exists for verification.
"""

__version__ = "0.1.0"

from .core import (
    ClusterRef,
    FORMAT_MAGIC,
    HierarchyShape,
    HiernetError,
    InvalidPairError,
    InvalidRefError,
    LinkTable,
    NetworkModel,
    ParamError,
    ParseError,
    PathEntry,
    cluster_size,
    deserialize,
    node_path,
    pair_index,
    psi,
    serialize,
    validate,
)
from .gen import (
    GenParams,
    MAX_NODES,
    RngStream,
    generate_links,
    generate_network,
    generate_shape_by_levels,
    generate_shape_by_nodes,
    generate_shape_regular,
)
from .analytics import (
    ClusterAggregates,
    Histogram,
    cluster_aggregates,
    clustering_coefficient,
    clustering_values,
    component_sizes,
    degree_distribution,
    diameter,
    distance,
    distance_distribution,
    edge_count,
    four_cycle_count,
    node_degree,
    node_degrees,
    triangle_count,
    triangles_at_all_nodes,
    triangles_at_node,
    wedge_count,
)
from .ensemble import (
    EnsembleSpec,
    PROPERTIES,
    compute_properties,
    report_csv,
    report_json,
    run_copy,
    run_ensemble,
    summary_json,
)

__all__ = [
    "__version__",
    "ClusterRef",
    "FORMAT_MAGIC",
    "HierarchyShape",
    "HiernetError",
    "InvalidPairError",
    "InvalidRefError",
    "LinkTable",
    "NetworkModel",
    "ParamError",
    "ParseError",
    "PathEntry",
    "cluster_size",
    "deserialize",
    "node_path",
    "pair_index",
    "psi",
    "serialize",
    "validate",
    "GenParams",
    "MAX_NODES",
    "RngStream",
    "generate_links",
    "generate_network",
    "generate_shape_by_levels",
    "generate_shape_by_nodes",
    "generate_shape_regular",
    "ClusterAggregates",
    "Histogram",
    "cluster_aggregates",
    "clustering_coefficient",
    "clustering_values",
    "component_sizes",
    "degree_distribution",
    "diameter",
    "distance",
    "distance_distribution",
    "edge_count",
    "four_cycle_count",
    "node_degree",
    "node_degrees",
    "triangle_count",
    "triangles_at_all_nodes",
    "triangles_at_node",
    "wedge_count",
    "EnsembleSpec",
    "PROPERTIES",
    "compute_properties",
    "report_csv",
    "report_json",
    "run_copy",
    "run_ensemble",
    "summary_json",
]
