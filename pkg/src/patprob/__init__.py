"""Exact occurrence probabilities of a fixed pattern in random words."""

from .budget import DEFAULT_ENUM_BUDGET, EnumerationBudgetError
from .markov import (
    ChainComparison,
    ChainSpec,
    LemmaReport,
    ReachTable,
    chain_prob_table,
    check_lemmas,
    compare_chains,
    reach_table,
    transition_matrix,
)
from .numerics import ExactProb, compare
from .oracle import (
    CounterexampleReport,
    McConfig,
    McResult,
    OccurrenceCounts,
    PatternAutomaton,
    automaton_counts,
    automaton_matches_class_chain,
    automaton_prob_table,
    chain_coincidence_census,
    counterexample_check,
    enum_counts,
    monte_carlo,
)
from .patterns import (
    BifixIndicator,
    CensusClass,
    Ordering,
    SWord,
    Word,
    bifix_indicator,
    census,
    compare_indicators,
    compare_swords,
    comparison_threshold,
    k0_of_pair,
    k0_sharp,
    s_from_h,
)
from .recursions import (
    ProbTable,
    SeriesResult,
    P_at,
    P_table,
    expected_wait_closed,
    expected_wait_series,
    iter_P,
    p_table_long,
    p_table_short,
)

__version__ = "0.1.0"

__all__ = [
    "BifixIndicator",
    "CensusClass",
    "ChainComparison",
    "ChainSpec",
    "CounterexampleReport",
    "DEFAULT_ENUM_BUDGET",
    "EnumerationBudgetError",
    "ExactProb",
    "LemmaReport",
    "McConfig",
    "McResult",
    "OccurrenceCounts",
    "Ordering",
    "PatternAutomaton",
    "ProbTable",
    "ReachTable",
    "SeriesResult",
    "SWord",
    "Word",
    "P_at",
    "P_table",
    "automaton_counts",
    "automaton_prob_table",
    "automaton_matches_class_chain",
    "bifix_indicator",
    "census",
    "chain_coincidence_census",
    "chain_prob_table",
    "check_lemmas",
    "compare",
    "compare_chains",
    "compare_indicators",
    "compare_swords",
    "comparison_threshold",
    "counterexample_check",
    "enum_counts",
    "expected_wait_closed",
    "expected_wait_series",
    "iter_P",
    "k0_of_pair",
    "k0_sharp",
    "monte_carlo",
    "p_table_long",
    "p_table_short",
    "reach_table",
    "s_from_h",
    "transition_matrix",
]
