"""From one genome to a population: the headline year estimates.

A neutral population of ten thousand diploids is nearly always
monomorphic, so evolution reduces to the fixation chain, occasionally
short-circuited by double mutations.  This script reproduces the chain of
reasoning: excursion statistics, shortcut probabilities, the fixed-locus
stop rule, the killed segment chain, and the mixture-of-exponentials year
estimates.
"""

import numpy as np

from wordwait import (
    PopulationParams,
    coalescent_quantities,
    double_mutation_shortcut,
    expected_almost_matches,
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

params = PopulationParams()  # N=10^4, mu=1e-8, W=8, L=1000, 25-year generations

print("--- Moran excursions from a single mutant copy ---")
sim = moran_excursion_simulate(N=50, replications=20_000, seed=7, track_visits=True)
for stats in (sim.loss, sim.fixation):
    exact = moran_excursion_births(50, stats.condition).mean_births
    print(f"  births | {stats.condition:8}: simulated {stats.mean_births:9.2f}  "
          f"exact {exact:9.2f}  (asymptote {stats.asymptote:.0f})")
print(f"  fixation fraction: {sim.fixation_fraction:.5f} (martingale: 1/2N = 0.01)")
print(f"  visits to state 1 given loss: sim {sim.loss.per_state_visits[1]:.3f}, "
      f"exact {moran_exact_visits(50, 1, 'loss'):.3f}")

print("\n--- coalescent scale ---")
co = coalescent_quantities(params)
print(f"  tree length (exact sum): {co.tree_length:,.0f}")
print(f"  expected mutations, 8-letter word / kilobase: "
      f"{co.expected_mutations_word:.4f} / {co.expected_mutations_segment:.2f}")
turn = match_minus_one_turnover(PopulationParams(W=6),
                                em1=expected_almost_matches(6, 1024, 1),
                                em2=expected_almost_matches(6, 1024, 2))
print(f"  near-match turnover per tree: -{turn.disruption_rate:.4f} "
      f"/ +{turn.creation_rate:.4f}")

print("\n--- shortcut probabilities ---")
print(f"  double mutation beats fixation (fixed locus): "
      f"{double_mutation_shortcut(params):.6f} (= 1/19)")
triple = triple_mutation_shortcut(params)
print(f"  good triple mutations before stopping: {triple.total:.3e}")
kp = segment_kill_probabilities(params)
print(f"  segment near-match stop: {kp.match_minus_1:.4f}, "
      f"two-off kill coin: {kp.match_minus_2:.6f}")

print("\n--- fixed-locus stop rule ---")
for W in (6, 8):
    lw = fixed_locus_waiting_time(PopulationParams(W=W))
    print(f"  W={W}: {lw.stop_rule_steps:7.2f} fixation steps "
          f"= {lw.years / 1e9:6.1f} billion years at a single locus")

print("\n--- killed segment chain (small run; see the CLI for full runs) ---")
res = killed_fixation_chain_sim("ACAGCTGT", params, replications=10_000, seed=9,
                                threads=2)
print(f"  atom at zero {res.atom_at_zero:.4f}, conditional mean "
      f"{res.conditional_mean:.1f} fixations "
      f"= {res.mean_years / 1e6:.0f} million years")

print("\n--- year estimates ---")
base = params.generation_years * 3.0 / (2.0 * params.N * params.mu)
print(f"  one near-match present: {base:,.0f} years")
eq9 = mixture_mean_years(base, expected_almost_matches(6, 1024, 1), 1)
print(f"  6-letter word, anywhere in a kilobase: {eq9:,.0f} years")
eq10 = mixture_mean_years(base, round(expected_almost_matches(8, 1024, 2), 2), 2)
print(f"  8-letter word when a 7/8 match suffices: {eq10:,.0f} years")

print("\n--- binding is not all-or-nothing ---")
r = np.arange(0, 5)
print("  mismatches:", r)
print("  binding prob (threshold 1.5, steepness 2):",
      np.round(fermi_binding(r, 1.5, 2.0), 4))
