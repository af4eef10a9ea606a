"""Algebraic linear orderings: recursion schemes, prefix grammars,
scatteredness analysis and Cantor-normal-form ordinals."""

from .analysis import (
    AnalysisReport,
    Decomposition,
    DecompositionBucket,
    NonterminalAnalysis,
    NoWitnessWithinBound,
    PrefixVerdict,
    RefutedDenseTriple,
    RefutedIncomparable,
    RootCheck,
    analyze,
    check_prefix_property,
    decompose_LR,
    decomposition_violations,
    detect_left_recursion,
    double_self_embedding,
    inline_singletons,
    primitive_root_of,
    pumping_prefixes,
    rank_bound_report,
    refute_scattered,
    sccs_and_heights,
)
from .closure import (
    ordinal_layout,
    scheme_for_ordinal,
    scheme_geometric,
    scheme_product,
    scheme_sum,
)
from .errors import (
    ArityError,
    InconclusiveError,
    InputError,
    OutOfRangeError,
    ParseError,
    UndefinedSymbolError,
)
from .grammar import (
    Grammar,
    NormalizeReport,
    empty_grammar,
    enumerate_words,
    format_grammar,
    intersect_lex_interval,
    language_table,
    normalize,
    normalized,
    parse_grammar,
    reverse_order,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    cnf_add,
    cnf_compare,
    cnf_mul,
    format_ordinal,
    is_below_tower,
    m_alpha,
    omega_pow,
    parse_ordinal,
    rank_geometric_bound,
    rank_gensum_bound,
    rank_of_omega_power,
    rank_product_bound,
    rank_sum_bound,
    rank_union_bound,
)
from .scheme import (
    DELTA,
    Call,
    Equation,
    Param,
    PartialTree,
    Pending,
    RankedAlphabet,
    RecursionScheme,
    Sym,
    branch_words,
    complete_omega,
    format_scheme,
    frontier,
    is_regular,
    parse_scheme,
    unfold,
    validate,
)
from .translate import ClaimMismatch, ClaimVerdict, check_claim, frontier_grammar, scheme_to_prefix_grammar
from .words import (
    BINARY,
    LexOrder,
    OrderedAlphabet,
    PrefixRelation,
    embed_into_rationals,
    in_rationals,
    is_prefix_free,
    lex_compare,
    prefix_compare,
    primitive_root,
)

__version__ = "0.1.0"
