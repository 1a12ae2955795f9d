"""Population-level waiting times under neutral Moran dynamics.

A population of N diploids is represented by 2N haploid copies.  Because
the coalescent keeps the population nearly monomorphic at these parameter
values, evolution is tracked through the fixation chain: the sequence of
states the population passes through at successive fixations, with each
fixation acting as a uniform single-letter substitution.  This module
provides

  * exact excursion statistics of the Moran mutant-count walk (expected
    mutant births and per-state visit counts, conditioned on loss or
    fixation), with a chunked Monte Carlo validator;
  * the shortcut probabilities by which double and triple mutations can
    beat the next fixation, and the resulting stop-rule waiting time for
    a word at a fixed W-letter locus;
  * the killed fixation chain for a whole L-letter segment: stop when a
    window matches all but one letter, kill each step with the two-off
    window coins;
  * coalescent arithmetic (tree length, mutation counts, site-frequency
    mean), mixture-of-exponential year estimates, and the logistic
    mismatch-to-binding map.

Analytic functions are pure; simulations take explicit seeds and are
deterministic across thread counts.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels, _rng
from .markov import expected_hitting_time, greens_function
from .mutation import build_match_chain, match_stationary
from .segment import StepCapExceeded
from .words import DnaWord, as_word

__all__ = [
    "PopulationParams",
    "ExcursionStats",
    "MoranSimResult",
    "moran_exact_visits",
    "moran_excursion_births",
    "moran_excursion_simulate",
    "double_mutation_rate_per_excursion",
    "double_mutation_shortcut",
    "TripleMutationEstimate",
    "triple_mutation_shortcut",
    "LocusWaitingTime",
    "fixed_locus_waiting_time",
    "KillProbabilities",
    "segment_kill_probabilities",
    "KilledChainResult",
    "killed_fixation_chain_sim",
    "mixture_mean_years",
    "CoalescentSummary",
    "coalescent_quantities",
    "TurnoverRates",
    "match_minus_one_turnover",
    "fermi_binding",
]

_MORAN_CHUNK = 16384
_KILLED_BLOCK = 512


@dataclass(frozen=True)
class PopulationParams:
    """Shared parameters: diploid size N, per-nucleotide per-generation
    mutation probability mu, word length W, segment length L, and years
    per generation."""

    N: int = 10_000
    mu: float = 1e-8
    W: int = 8
    L: int = 1000
    generation_years: float = 25.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not 0.0 < self.mu < 1.0:
            raise ValueError("mu must lie in (0, 1)")
        if self.W < 1:
            raise ValueError("W must be >= 1")
        if self.L < self.W:
            raise ValueError("L must be >= W")
        if self.generation_years <= 0:
            raise ValueError("generation_years must be positive")


# ---------------------------------------------------------------------------
# Moran excursions
# ---------------------------------------------------------------------------

def moran_exact_visits(N: int, k: int, condition: str) -> float:
    """Expected jump-chain visits to state k of an excursion from 1.

    Conditioned on loss: 2 (2N - k)^2 / (2N (2N - 1)).  Conditioned on
    fixation the reach probability is 1, so the mean is the reciprocal
    escape probability 2 k (2N - k) / 2N.
    """
    twoN = 2 * N
    if not 1 <= k <= twoN - 1:
        raise ValueError("need 1 <= k <= 2N - 1")
    if condition == "loss":
        return 2.0 * (twoN - k) ** 2 / (twoN * (twoN - 1))
    if condition == "fixation":
        return 2.0 * k * (twoN - k) / twoN
    raise ValueError("condition must be 'loss' or 'fixation'")


@dataclass(frozen=True)
class ExcursionStats:
    """Mutant-birth statistics of excursions from one copy, one condition.

    mean_births counts events that create a mutant (self-copies plus
    upward jumps).  per_state_visits[k] is E(N_k | condition) over jump
    chain states; entries 0 and 2N are zero.  For simulated statistics,
    n_excursions and the sample variances are filled in.
    """

    condition: str
    mean_births: float
    asymptote: float
    per_state_visits: np.ndarray | None = None
    n_excursions: int | None = None
    births_variance: float | None = None
    per_state_visits_variance: np.ndarray | None = None


def moran_excursion_births(N: int, condition: str) -> ExcursionStats:
    """Exact conditional mean of mutant births in one excursion.

    Sums, over interior states k, the expected self-copy events (visits
    times the k/(4N - 2k) geometric mean) and the expected upward jumps.
    The large-N asymptotes are N (loss) and 2 N^2 (fixation).
    """
    if N < 2:
        raise ValueError("need N >= 2")
    twoN = 2 * N
    k = np.arange(1, twoN, dtype=float)
    self_copy_mean = k / (4.0 * N - 2.0 * k)
    visits = np.array([moran_exact_visits(N, int(x), condition) for x in range(1, twoN)])
    if condition == "loss":
        up_jumps = (twoN - k) / (k * (twoN - 1)) * ((k + 1) * (twoN - k) / twoN - 1.0)
        asym = float(N)
    elif condition == "fixation":
        up_jumps = (k + 1) * (twoN - k) / twoN
        asym = 2.0 * N * N
    else:
        raise ValueError("condition must be 'loss' or 'fixation'")
    per_state = np.zeros(twoN + 1)
    per_state[1:twoN] = visits
    return ExcursionStats(
        condition=condition,
        mean_births=float(np.sum(visits * self_copy_mean + up_jumps)),
        asymptote=asym,
        per_state_visits=per_state,
    )


@dataclass(frozen=True)
class MoranSimResult:
    loss: ExcursionStats
    fixation: ExcursionStats
    replications: int
    seed: int
    fixation_fraction: float


def moran_excursion_simulate(N: int, replications: int, seed: int,
                             track_visits: bool = False) -> MoranSimResult:
    """Simulate excursions of the mutant-count walk from one copy.

    The jump chain is a fair walk (up and down replacement rates match);
    self-copy events between jumps are geometric with the published jump
    probability (4N - 2k)/(4N - k), so they are drawn in bulk instead of
    event by event.  Replications run in fixed chunks with per-chunk
    streams; results do not depend on scheduling.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    if replications < 1:
        raise ValueError("need at least one replication")
    twoN = 2 * N
    births = np.empty(replications, dtype=np.int64)
    fixed = np.empty(replications, dtype=bool)
    visit_rows = (
        np.zeros((replications, twoN + 1), dtype=np.int32) if track_visits else None
    )
    for chunk, lo in enumerate(range(0, replications, _MORAN_CHUNK)):
        hi = min(lo + _MORAN_CHUNK, replications)
        g = _rng.stream(seed, _rng.MORAN_EXCURSIONS, chunk)
        _moran_chunk(N, g, births[lo:hi], fixed[lo:hi],
                     visit_rows[lo:hi] if track_visits else None)
    out = {}
    for condition, mask in (("loss", ~fixed), ("fixation", fixed)):
        n = int(mask.sum())
        b = births[mask]
        pv = pvv = None
        if track_visits and n > 0:
            rows = visit_rows[mask]
            pv = rows.mean(axis=0)
            pvv = rows.var(axis=0, ddof=1) if n > 1 else np.zeros(twoN + 1)
        out[condition] = ExcursionStats(
            condition=condition,
            mean_births=float(b.mean()) if n else math.nan,
            asymptote=float(N) if condition == "loss" else 2.0 * N * N,
            per_state_visits=pv,
            n_excursions=n,
            births_variance=float(b.var(ddof=1)) if n > 1 else math.nan,
            per_state_visits_variance=pvv,
        )
    return MoranSimResult(
        loss=out["loss"],
        fixation=out["fixation"],
        replications=replications,
        seed=seed,
        fixation_fraction=float(fixed.mean()),
    )


def _moran_chunk(N: int, g: np.random.Generator, births: np.ndarray,
                 fixed: np.ndarray, visits: np.ndarray | None) -> None:
    twoN = 2 * N
    size = births.shape[0]
    state = np.ones(size, dtype=np.int64)
    births[:] = 0
    alive = np.arange(size)
    while alive.size:
        k = state[alive]
        p_jump = (4.0 * N - 2.0 * k) / (4.0 * N - k)
        births[alive] += g.geometric(p_jump) - 1  # self-copy events this sojourn
        if visits is not None:
            np.add.at(visits, (alive, k), 1)
        up = g.integers(0, 2, size=alive.size).astype(bool)
        births[alive] += up
        state[alive] = k + np.where(up, 1, -1)
        now = state[alive]
        done = (now == 0) | (now == twoN)
        if done.any():
            finished = alive[done]
            fixed[finished] = state[finished] == twoN
            alive = alive[~done]


# ---------------------------------------------------------------------------
# Shortcut probabilities and the fixed-locus stop rule
# ---------------------------------------------------------------------------

def double_mutation_rate_per_excursion(params: PopulationParams) -> float:
    """Expected completions of the word by a second mutation, per lost excursion: 2 N mu / 9W."""
    return 2.0 * params.N * params.mu / (9.0 * params.W)


def double_mutation_shortcut(params: PopulationParams) -> float:
    """Probability a double mutation wins before the next fixation, from two mismatches.

    With x = 4 N^2 mu / 9W, the race between shortcut and fixation gives
    x / (1 + x).
    """
    x = 4.0 * params.N**2 * params.mu / (9.0 * params.W)
    return x / (1.0 + x)


@dataclass(frozen=True)
class TripleMutationEstimate:
    per_interval: float
    expected_visits: float
    total: float


def triple_mutation_shortcut(params: PopulationParams) -> TripleMutationEstimate:
    """Expected good triple mutations before the stop rule ends.

    Per fixation interval the expectation is 4 N^3 mu^2 / 9W; the total
    weights it by the expected visits to the three-mismatch state before
    first reaching one mismatch.
    """
    if params.W < 3:
        raise ValueError("need W >= 3")
    per = 4.0 * params.N**3 * params.mu**2 / (9.0 * params.W)
    chain = build_match_chain(params.W)
    visits = greens_function(chain, 0, params.W - 3, params.W - 1)
    return TripleMutationEstimate(
        per_interval=per, expected_visits=visits, total=per * visits
    )


@dataclass(frozen=True)
class LocusWaitingTime:
    """Stop-rule waiting time for the word at a fixed W-letter locus.

    stop_rule_steps is in fixation-chain steps, averaged over the
    stationary start; by_state gives the per-start expectations.
    """

    stop_rule_steps: float
    by_state: np.ndarray
    shortcut_probability: float
    generations: float
    years: float


def fixed_locus_waiting_time(params: PopulationParams) -> LocusWaitingTime:
    """Expected fixation-chain steps until one mismatch (or a winning double mutation).

    The stop rule S ends at the first step with one mismatch, or with two
    mismatches when an independent coin of probability rho succeeds.
    From two mismatches the closed form is

        E S = (1 - rho)(p_up + p_down E tau) / (1 - (1 - rho)(1 - p_up)),

    with tau the return time to two mismatches from three; states further
    out add their expected passage to two mismatches.  Warns when
    N^3 mu^2 is large enough for triple mutations to matter.
    """
    W = params.W
    if W < 3:
        raise ValueError("need W >= 3")
    regime = params.N**3 * params.mu**2
    if regime > 0.01:
        warnings.warn(
            f"N^3 mu^2 = {regime:.3g}; triple mutations are not negligible and "
            "the stop-rule estimate loses accuracy",
            stacklevel=2,
        )
    rho = double_mutation_shortcut(params)
    chain = build_match_chain(W)
    tau = expected_hitting_time(chain, W - 2)
    p_up = chain.up[W - 2]
    p_dn = chain.down[W - 2]
    e_tau = tau[W - 3]
    es_w2 = (1.0 - rho) * (p_up + p_dn * e_tau) / (1.0 - (1.0 - rho) * (1.0 - p_up))
    by_state = np.zeros(W + 1)
    by_state[W - 2] = es_w2
    by_state[: W - 2] = tau[: W - 2] + es_w2
    steps = float(match_stationary(W) @ by_state)
    generations = steps / (W * params.mu)
    return LocusWaitingTime(
        stop_rule_steps=steps,
        by_state=by_state,
        shortcut_probability=rho,
        generations=generations,
        years=generations * params.generation_years,
    )


@dataclass(frozen=True)
class KillProbabilities:
    """Chances the target appears before the next segment fixation.

    match_minus_1: from a window with one mismatch, 1 / (1 + 3L/2N).
    match_minus_2: from two mismatches, r / (1 + r) with
    rate_ratio r = 4 N^2 mu / 9L.
    """

    match_minus_1: float
    match_minus_2: float
    rate_ratio: float


def segment_kill_probabilities(params: PopulationParams) -> KillProbabilities:
    rho1 = 1.0 / (1.0 + 3.0 * params.L / (2.0 * params.N))
    r = 4.0 * params.N**2 * params.mu / (9.0 * params.L)
    return KillProbabilities(match_minus_1=rho1, match_minus_2=r / (r + 1.0), rate_ratio=r)


# ---------------------------------------------------------------------------
# Killed fixation chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KilledChainResult:
    """Death times of the killed segment fixation chain.

    samples holds every replication's stopping step; mean_years converts
    the conditional mean through the fixation rate L mu and the
    generation time.
    """

    word: DnaWord
    params: PopulationParams
    replications: int
    seed: int
    samples: np.ndarray
    atom_at_zero: float
    conditional_mean: float
    mean_years: float


def killed_fixation_chain_sim(word, params: PopulationParams, replications: int,
                              seed: int, threads: int = 1,
                              step_cap: int = 10**9,
                              match_minus_1_stop_prob: float = 1.0,
                              match_minus_2_kill_prob: float | None = None,
                              ) -> KilledChainResult:
    """Simulate the killed fixation chain on a circular L-letter segment.

    Each replication starts from a fresh uniform sequence.  The chain
    stops immediately at step 0 if a window already matches all but one
    letter (or fully); each two-off window flips an independent kill coin
    at every step including step 0.  A step is one fixation: a uniform
    position fixes one of the three other letters; the checks then rerun.

    match_minus_1_stop_prob below 1 enables the exact-rate stop mode, in
    which a near-match step stops only with that probability (one extra
    uniform consumed per near-match step).  match_minus_2_kill_prob
    overrides the default coin from segment_kill_probabilities; 0 (with
    stop prob 0) degenerates to plain exact-match waiting.
    """
    word = as_word(word)
    W = word.length
    if params.L <= 2 * W:
        raise ValueError("need L > 2W")
    if replications < 1:
        raise ValueError("need at least one replication")
    if match_minus_2_kill_prob is None:
        match_minus_2_kill_prob = segment_kill_probabilities(params).match_minus_2
    if not 0.0 <= match_minus_2_kill_prob < 1.0:
        raise ValueError("kill probability must lie in [0, 1)")
    L = params.L
    codes = word.codes()
    # chance at least one of k two-off windows kills
    kill_table = 1.0 - (1.0 - match_minus_2_kill_prob) ** np.arange(L + 1, dtype=float)
    samples = np.empty(replications, dtype=np.int64)

    def run_range(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            g = _rng.stream(seed, _rng.KILLED_CHAIN, i)
            samples[i] = _killed_replication(
                codes, L, g, kill_table, match_minus_1_stop_prob, step_cap, i
            )

    if threads <= 1 or replications < 2:
        run_range(0, replications)
    else:
        workers = min(threads, replications)
        bounds = np.linspace(0, replications, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_range, lo, hi)
                for lo, hi in zip(bounds[:-1], bounds[1:])
            ]
            for f in futures:
                f.result()
    atom = float(np.count_nonzero(samples == 0) / replications)
    positive = samples[samples > 0]
    cond_mean = float(positive.mean()) if positive.size else math.nan
    return KilledChainResult(
        word=word,
        params=params,
        replications=replications,
        seed=seed,
        samples=samples,
        atom_at_zero=atom,
        conditional_mean=cond_mean,
        mean_years=cond_mean / (L * params.mu) * params.generation_years,
    )


def _killed_replication(codes: np.ndarray, L: int, g: np.random.Generator,
                        kill_table: np.ndarray, mm1_stop: float, cap: int,
                        index: int) -> int:
    W = codes.size
    seq = g.integers(0, 4, size=L, dtype=np.int8)
    counts, best, k2 = _kernels.window_counts(seq, codes)
    if best == W:
        return 0
    if best == W - 1:
        if mm1_stop >= 1.0 or g.random() < mm1_stop:
            return 0
    elif g.random() < kill_table[k2]:
        return 0
    step = 0
    while True:
        moves = g.integers(0, 3 * L, size=_KILLED_BLOCK, dtype=np.int16)
        kill_unifs = g.random(size=_KILLED_BLOCK)
        stop_unifs = g.random(size=_KILLED_BLOCK) if mm1_stop < 1.0 else kill_unifs
        stop, used, k2 = _kernels.run_killed_block(
            seq, counts, codes, moves, kill_unifs, stop_unifs,
            kill_table, mm1_stop, k2, step, cap,
        )
        if stop >= 0:
            return stop
        if stop == _kernels.CAP_SENTINEL:
            raise StepCapExceeded(index, cap)
        step += used


# ---------------------------------------------------------------------------
# Mixtures, coalescent arithmetic, binding
# ---------------------------------------------------------------------------

def mixture_mean_years(base_years: float, poisson_mean: float,
                       divisor: float = 1.0) -> float:
    """Mean of base_years/divisor divided by a positive Poisson count.

    Computes (base/divisor) sum_{k>=1} e^-m m^k / k! * (1/k); the series
    stops once a term falls below 1e-12 of the running sum past the mode.
    The zero cell carries no mass, matching the published arithmetic.
    """
    if base_years <= 0 or poisson_mean <= 0 or divisor <= 0:
        raise ValueError("inputs must be positive")
    m = poisson_mean
    total = 0.0
    pmf = math.exp(-m) * m  # k = 1 term
    k = 1
    while True:
        term = pmf / k
        total += term
        k += 1
        pmf *= m / k
        if k > m and (total == 0.0 or pmf / k < 1e-12 * total):
            break
    return base_years / divisor * total


@dataclass(frozen=True)
class CoalescentSummary:
    """Genealogy-scale quantities for the whole population.

    tree_length is the exact expected total tree length 4N H(2N-1);
    tree_length_log_form is the 4N ln(2N) form that the mutation-count
    and turnover arithmetic uses.  site_frequency_mean_fraction is the
    expected fraction of the population carrying a mutant nucleotide
    given one mutation, 1/ln(2N).
    """

    tree_length: float
    tree_length_log_form: float
    expected_mutations_word: float
    expected_mutations_segment: float
    site_frequency_mean_fraction: float


def coalescent_quantities(params: PopulationParams) -> CoalescentSummary:
    twoN = 2 * params.N
    harmonic = float(np.sum(1.0 / np.arange(1, twoN, dtype=float))) if twoN > 1 else 0.0
    exact = 4.0 * params.N * harmonic
    log_form = 4.0 * params.N * math.log(twoN)
    return CoalescentSummary(
        tree_length=exact,
        tree_length_log_form=log_form,
        expected_mutations_word=params.W * params.mu * log_form,
        expected_mutations_segment=params.L * params.mu * log_form,
        site_frequency_mean_fraction=1.0 / math.log(twoN),
    )


@dataclass(frozen=True)
class TurnoverRates:
    """Expected near-match gains and losses from standing variation."""

    disruption_rate: float
    creation_rate: float


def match_minus_one_turnover(params: PopulationParams, em1: float,
                             em2: float) -> TurnoverRates:
    """Expected one-off windows destroyed and created by tree mutations.

    em1 one-off windows cover em1 * W sites, each mutating with the
    per-site tree expectation; each of em2 two-off windows is upgraded by
    2 of its sites times the 1/3 chance of the right letter.
    """
    per_site = params.mu * 4.0 * params.N * math.log(2 * params.N)
    return TurnoverRates(
        disruption_rate=em1 * params.W * per_site,
        creation_rate=em2 * 2.0 * (1.0 / 3.0) * per_site,
    )


def fermi_binding(mismatches, threshold: float, epsilon: float):
    """Binding probability 1 / (1 + exp(epsilon (r - r0))) for mismatch count r."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    r = np.asarray(mismatches, dtype=float)
    with np.errstate(over="ignore"):
        out = 1.0 / (1.0 + np.exp(epsilon * (r - threshold)))
    return float(out) if np.isscalar(mismatches) or out.ndim == 0 else out
