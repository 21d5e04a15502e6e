# core/__init__.py

from .robdd import (
    DyadicCore,
    Robdd,
    Vertex,
    build_robdd,
    canonical_order,
    edge_relations,
    evaluate,
    expand,
    is_dyadic,
    quasi_reduced_vertex_count,
    relabel,
    robdd_from_relations,
    validate_robdd,
)
from .levelstrings import (
    EntryType,
    LevelDecomposition,
    LevelStrings,
    LevelSymbol,
    build_v_sequences,
    decompose_level,
    generate_levels,
    level_order,
    level_skeleton,
    rebuild_graph,
    symbol_index,
)
from .enumerative import (
    Composition,
    code_width,
    entropy_H,
    first_appearance_cost,
    first_strike,
    multinomial,
    rank_multiset_perm,
    unrank_multiset_perm,
)
from .bitstream import BitStream, elias_gamma, elias_gamma_decode
from .coder import SectionBudget, decode_level, encode_level, section_budgets
from .container import ContainerTrace, analyze, codeword_length, decode, encode
from .source import (
    MarkovSource,
    RedundancyRecord,
    load_source_config,
    log_prob,
    measure_redundancy,
    parse_preset,
    sample,
    theorem_bound,
    theorem_budget,
)

__all__ = [
    'BitStream', 'Composition', 'ContainerTrace', 'DyadicCore', 'EntryType',
    'LevelDecomposition', 'LevelStrings', 'LevelSymbol', 'MarkovSource',
    'RedundancyRecord', 'Robdd', 'SectionBudget', 'Vertex',
    'analyze', 'build_robdd', 'build_v_sequences', 'canonical_order', 'code_width',
    'codeword_length', 'decode', 'decode_level', 'decompose_level', 'edge_relations',
    'elias_gamma', 'elias_gamma_decode', 'encode', 'encode_level', 'entropy_H', 'evaluate',
    'expand', 'first_appearance_cost', 'first_strike', 'generate_levels', 'is_dyadic',
    'level_order', 'level_skeleton', 'load_source_config', 'log_prob', 'measure_redundancy',
    'multinomial', 'parse_preset', 'quasi_reduced_vertex_count', 'rank_multiset_perm',
    'rebuild_graph', 'relabel', 'robdd_from_relations', 'sample', 'section_budgets',
    'symbol_index', 'theorem_bound', 'theorem_budget', 'unrank_multiset_perm', 'validate_robdd',
]
