"""How long until a target word appears at a fixed W-letter locus?

Walk through the match-count chain: its transition rule, stationary law,
return probability, and the exact waiting-time summaries, then the
conditioned (success-path) hitting times.
"""

import numpy as np

from wordwait import (
    build_match_chain,
    chain_summary,
    condition_on_hitting,
    expected_hitting_time,
    exponential_error_bound,
    greens_function,
    hitting_probability,
    kac_return_time,
    match_stationary,
)

np.set_printoptions(precision=6, suppress=True)

for W in (6, 8):
    chain = build_match_chain(W)
    print(f"=== word length W = {W} ===")
    print("stationary law (Binomial(W, 1/4)):", match_stationary(W))
    print("mean return time to a full match: 4^W =", kac_return_time(chain, W))

    h = hitting_probability(chain, 0, W)
    print("chance of completing the word before losing every match, by state:")
    print(" ", h[1:W])
    print("return probability a = h(W-1) =", h[W - 1])

    s = chain_summary(W)
    print(f"waiting time from scratch      E_0 T_W = {s.mean_from_zero:.2f}")
    print(f"waiting time from equilibrium  E_pi T_W = {s.mean_stationary:.2f}")
    print(f"clumping-heuristic estimate    4^W/(1-a) = {s.clump_mean_formula:.2f}")
    print(f"exponential-approximation error bound: {exponential_error_bound(W):.2e}")
    print()

# The success path is fast: conditioned on reaching the full match before
# losing everything, the journey takes only a few dozen mutations.
W = 8
chain = build_match_chain(W)
up = expected_hitting_time(condition_on_hitting(chain, W, 0), W)
print("conditioned hitting times E_x(T_8 | T_8 < T_0):")
for x in range(W + 1):
    print(f"  from {x}: {up[x]:10.6f}")

print("\nexpected visits to 6 before first reaching 7, from 0:",
      greens_function(chain, 0, 6, 7))
print("expected visits to 5 before first reaching 7, from 0:",
      greens_function(chain, 0, 5, 7))
