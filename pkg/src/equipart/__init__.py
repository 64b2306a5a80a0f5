"""equipart: certified graph partitioning at desk scale.

Scooping partitions, budgeted uniform partitions, sparse/dense
equitable refinements, Ramsey-style cluster grouping, judicious
bipartitions, and the balanced edge-spread functional, each paired with
brute-force oracles and recomputable postcondition certificates.
"""

from .bipartition import (
    BipartitionError,
    CutResult,
    JudiciousResult,
    PhiInequalityReport,
    PhiResult,
    balanced_cut_search,
    exhaustive_balanced_cut,
    judicious_bipartition,
    phi,
    phi_inequality_check,
)
from .counting import (
    count_cliques,
    count_induced,
    naive_count_cliques,
    naive_count_induced,
)
from .estimators import (
    BalancedCutPartitioner,
    JudiciousBipartitioner,
    ScoopPartitioner,
    SparseDensePartitioner,
    SparseEquitablePartitioner,
    SparseUniformPartitioner,
    UniformityPartitioner,
    as_graph,
)
from .exact import as_fraction
from .generators import (
    GeneratorSpec,
    all_nonisomorphic_graphs,
    blowup,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    generate,
    gnm,
    gnp,
    planted_blocks,
    shuffled,
    turan,
)
from .graph import (
    Graph,
    GraphError,
    build_graph,
    complement,
    edge_count_between,
    edge_count_within,
    induced_subgraph,
    pair_density,
)
from .graph_io import LoadReport, load_edge_list, save_edge_list
from .magnitude import Magnitude, MagnitudeError, mag_max, mag_min
from .partition import (
    Certificate,
    ClassCertificate,
    Partition,
    PartitionError,
    certify,
    load_partition,
    partition_from_json,
    partition_to_json,
    recheck_certificate,
    save_partition,
)
from .patterns import (
    PatternGraph,
    complete_pattern,
    cycle_pattern,
    empty_pattern,
    named_pattern,
    path_pattern,
    pattern_from_edges,
)
from .pipelines import (
    ClusterColoring,
    PipelineError,
    PipelineParams,
    PipelineResult,
    RamseyGrouping,
    UniformPartitionResult,
    ramsey_group_clusters,
    refine_mixed_partition,
    sparse_dense_partition,
    sparse_equitable_partition,
    sparse_uniform_partition,
    uniform_partition,
)
from .schedules import (
    FeasibilityReport,
    ScheduleError,
    feasibility_report,
    ramsey_two_color_bound,
    schedule,
    sul_bound,
)
from .scooping import (
    ScoopError,
    ScoopResult,
    average_bound,
    min_edge_subset,
    scoop,
)
from .uniformity import (
    PairVerdict,
    PartitionUniformityReport,
    RSetCount,
    SliceAudit,
    UniformityError,
    UniformityParams,
    Witness,
    check_pair,
    check_partition,
    count_low_common_rsets,
    count_low_induced_witness_rsets,
    count_shrinking_rsets,
    slice_bound,
    verify_slice_bound,
)
from .experiments import SCENARIOS, ExperimentReport, run_scenario

__version__ = "0.1.0"
