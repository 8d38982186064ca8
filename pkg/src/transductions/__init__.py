"""
TRANSDUCTIONS - First-Order Transductions of Finite Colored Graphs
==================================================================

Executable copy / color / interpret pipelines, a brute-force first-order
evaluator, every explicit encoding construction with a verifier, an
Ehrenfeucht-Fraisse game solver and exact small-scale graph parameters.

Modules:
    - graph_core: graphs, colored graphs and the graph algebra
    - logic: formulas, parser, evaluator, localization
    - transduction: interpretations, pipelines, gluing, copying facts
    - perturbation: subset complementations and their partition dual
    - encodings: host constructions packaged as verified artifacts
    - games: q-round game solver
    - params: exact width parameters and star colorings
    - loaders: JSON / DOT serialisation

Usage:
------
from transductions import parse_formula, Interpretation, Pipeline, Interpret
from transductions import encode_grid, duplicator_wins, pathwidth
"""

# Errors
from .errors import (
    TransductionError,
    GraphError,
    FormulaSyntaxError,
    EvaluationError,
    InterpretationError,
    PipelineError,
    BudgetExceededError,
    PerturbationError,
    EncodingError,
    VerificationError,
    GameError,
)

# Graph Core
from .graph_core import (
    INF,
    Graph,
    ColoredGraph,
    VertexTag,
    build_graph,
    build_colored,
    disjoint_union,
    complete_join,
    power,
    complement,
    induced_subgraph,
    pair_subgraph,
    ball,
    relabel,
    distance,
    distances_from,
    is_isomorphic,
    empty_graph,
    complete_graph,
    path_graph,
    cycle_graph,
    star_graph,
    grid_graph,
    to_networkx,
    from_networkx,
    max_degree,
    connected_components,
    is_subgraph,
)

# Logic
from .logic import (
    Formula,
    parse_formula,
    formula_to_text,
    evaluate,
    compile_formula,
    free_variables,
    quantifier_rank,
    t_localize,
    check_r_local,
    check_strongly_local,
    LocalityReport,
)

# Transduction
from .transduction import (
    Interpretation,
    Copy,
    ColorWitness,
    ColorSearch,
    Interpret,
    Perturb,
    Pipeline,
    copy,
    interpret,
    apply_pipeline,
    enumerate_images,
    member_check,
    glue,
    glued_interpretation,
    monotone_closure_witness,
    edge_coloring_witness,
    pendant_selfcopy,
    copy_commute_check,
    hereditary,
    check_immersive,
)

# Perturbation
from .perturbation import (
    Perturbation,
    FlipPartition,
    subset_complement,
    apply_sequence,
    sets_to_partition,
    partition_to_sets,
    apply_partition_flip,
)

# Encodings
from .encodings import (
    IntervalFamily,
    HostArtifact,
    CompressedCaterpillar,
    CubicEncoding,
    encode_interval,
    encode_grid,
    grid_unit_interval_model,
    encode_pathwidth_planar,
    planar_host,
    interval_model_from_order,
    encode_bounded_components,
    encode_cubic,
    compress_caterpillar,
    expand_caterpillar,
    encode_caterpillar_in_path,
    path_selfcopy,
    pathpower_embedding,
)

# Games
from .games import (
    GamePosition,
    duplicator_wins,
    distinguishing_rank,
    caterpillar_clone_check,
)

# Parameters
from .params import (
    BasicParams,
    pathwidth,
    treewidth,
    treedepth,
    bandwidth,
    star_chromatic_number,
    is_star_coloring,
    basic_params,
    dilation_profile,
)

# Loaders
from .loaders import (
    graph_to_json,
    graph_from_json,
    graph_to_dot,
    load_graph,
    save_json,
)

__all__ = [
    # Errors
    'TransductionError',
    'GraphError',
    'FormulaSyntaxError',
    'EvaluationError',
    'InterpretationError',
    'PipelineError',
    'BudgetExceededError',
    'PerturbationError',
    'EncodingError',
    'VerificationError',
    'GameError',
    # Graph Core
    'INF',
    'Graph',
    'ColoredGraph',
    'VertexTag',
    'build_graph',
    'build_colored',
    'disjoint_union',
    'complete_join',
    'power',
    'complement',
    'induced_subgraph',
    'pair_subgraph',
    'ball',
    'relabel',
    'distance',
    'distances_from',
    'is_isomorphic',
    'empty_graph',
    'complete_graph',
    'path_graph',
    'cycle_graph',
    'star_graph',
    'grid_graph',
    'to_networkx',
    'from_networkx',
    'max_degree',
    'connected_components',
    'is_subgraph',
    # Logic
    'Formula',
    'parse_formula',
    'formula_to_text',
    'evaluate',
    'compile_formula',
    'free_variables',
    'quantifier_rank',
    't_localize',
    'check_r_local',
    'check_strongly_local',
    'LocalityReport',
    # Transduction
    'Interpretation',
    'Copy',
    'ColorWitness',
    'ColorSearch',
    'Interpret',
    'Perturb',
    'Pipeline',
    'copy',
    'interpret',
    'apply_pipeline',
    'enumerate_images',
    'member_check',
    'glue',
    'glued_interpretation',
    'monotone_closure_witness',
    'edge_coloring_witness',
    'pendant_selfcopy',
    'copy_commute_check',
    'hereditary',
    'check_immersive',
    # Perturbation
    'Perturbation',
    'FlipPartition',
    'subset_complement',
    'apply_sequence',
    'sets_to_partition',
    'partition_to_sets',
    'apply_partition_flip',
    # Encodings
    'IntervalFamily',
    'HostArtifact',
    'CompressedCaterpillar',
    'CubicEncoding',
    'encode_interval',
    'encode_grid',
    'grid_unit_interval_model',
    'encode_pathwidth_planar',
    'planar_host',
    'interval_model_from_order',
    'encode_bounded_components',
    'encode_cubic',
    'compress_caterpillar',
    'expand_caterpillar',
    'encode_caterpillar_in_path',
    'path_selfcopy',
    'pathpower_embedding',
    # Games
    'GamePosition',
    'duplicator_wins',
    'distinguishing_rank',
    'caterpillar_clone_check',
    # Parameters
    'BasicParams',
    'pathwidth',
    'treewidth',
    'treedepth',
    'bandwidth',
    'star_chromatic_number',
    'is_star_coloring',
    'basic_params',
    'dilation_profile',
    # Loaders
    'graph_to_json',
    'graph_from_json',
    'graph_to_dot',
    'load_graph',
    'save_json',
]

__version__ = '1.0.0'
