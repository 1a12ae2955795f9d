"""Waiting times for DNA words at a locus, in a segment, and in a population.

The package has five layers:

  * :mod:`wordwait.markov` — exact O(n) numerics for birth-death chains;
  * :mod:`wordwait.mutation` — the match-count mutation chain of a target word;
  * :mod:`wordwait.words` — word self-overlap statistics and Chen-Stein
    Poisson-approximation bounds, with exhaustive scans;
  * :mod:`wordwait.segment` — seeded Monte Carlo of word appearance in a
    circular segment;
  * :mod:`wordwait.population` — Moran-model excursions, shortcut
    probabilities, the killed fixation chain, and year conversions.

The ``wordwait`` console script reproduces the reference tables, figure
datasets, and headline estimates; see the README.
"""

from .markov import (
    BirthDeathChain,
    condition_on_hitting,
    expected_hitting_time,
    greens_function,
    hitting_probability,
    kac_return_time,
    mean_return_time,
    stationary_distribution,
)
from .mutation import (
    MutationChainSummary,
    build_match_chain,
    chain_summary,
    exponential_error_bound,
    match_stationary,
    relaxation_time,
    return_probability,
)
from .words import (
    ALPHABET,
    ChenSteinReport,
    DnaWord,
    OverlapProfile,
    WordScan,
    clump_size,
    declumped_count_bound,
    expected_almost_matches,
    index_to_word,
    initial_condition_bounds,
    overlap_class_census,
    overlap_profile,
    repetitive_words,
    scan_all_words,
    time_T_bounds,
    word_to_index,
)
from .segment import (
    InitialMatchDistribution,
    SimConfig,
    SimResult,
    StepCapExceeded,
    export_histogram,
    initial_match_distribution,
    simulate_segment_waiting,
)
from .population import (
    CoalescentSummary,
    ExcursionStats,
    KillProbabilities,
    KilledChainResult,
    LocusWaitingTime,
    MoranSimResult,
    PopulationParams,
    TripleMutationEstimate,
    TurnoverRates,
    coalescent_quantities,
    double_mutation_rate_per_excursion,
    double_mutation_shortcut,
    fermi_binding,
    fixed_locus_waiting_time,
    killed_fixation_chain_sim,
    match_minus_one_turnover,
    mixture_mean_years,
    moran_exact_visits,
    moran_excursion_births,
    moran_excursion_simulate,
    segment_kill_probabilities,
    triple_mutation_shortcut,
)

__version__ = "0.1.0"
