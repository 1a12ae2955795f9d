"""Self-overlap structure decides how Poisson-like occurrence counts are.

Words that match their own shifts (ACACAC) clump; words that do not
(ACGTAG) behave like independent trials.  The Chen-Stein machinery turns
the overlap profile into explicit total-variation bounds and an expected
clump size.
"""

from wordwait import (
    clump_size,
    declumped_count_bound,
    expected_almost_matches,
    initial_condition_bounds,
    overlap_class_census,
    overlap_profile,
    repetitive_words,
    scan_all_words,
    time_T_bounds,
)

print("overlap profiles (shift set, per-shift match counts):")
for word in ("ACACAC", "ACAACA", "AACGAA", "ACGTAG", "AACCGT"):
    prof = overlap_profile(word)
    print(f"  {word}: shifts {prof.shift_set or '-'} m = {list(prof.m)}")

print("\nfresh random sequence, L = 1024:")
for word in ("ACACAC", "AACGAA", "ACGTAG"):
    rep = initial_condition_bounds(word, 1024)
    print(f"  {word}: gamma = {rep.lam:.4f}  b2/gamma = {rep.b2 / rep.lam:.5f}  "
          f"tv bound = {rep.tv_bound:.5f}")

print("\ncounts by a fixed time (lambda = 1), L = 1024:")
for word in ("AACCGT", "ACACAC", "ACAGCTGT", "ACACACAC"):
    rep = time_T_bounds(word, 1024, 1.0)
    print(f"  {word}: tv bound = {rep.tv_bound:.6f}  clump size = {rep.clump_size:.4f}")

print("\ndeclumped counting removes the word dependence:")
for W in (6, 8):
    print(f"  W={W}: bound {declumped_count_bound(W, 1024, 1.0):.5f}")

print("\nexhaustive scans:")
for W in (6, 8):
    sc = scan_all_words(W, 1024, 1.0)
    print(f"  W={W}: best {sc.best_word} ({sc.tv.min():.6f}), "
          f"worst nonconstant {sc.worst_word}")

census = overlap_class_census(6)
print("\nW=6 overlap classes (shift set: count):")
for shifts, (count, example) in sorted(census.items(), key=lambda kv: -kv[1][0]):
    print(f"  {shifts or '-'}: {count} (e.g. {example})")
print("repetitive exclusion list size:", len(repetitive_words(6)))

print("\nexpected near-match windows in a random kilobase:")
for W in (6, 8):
    for i in (1, 2):
        print(f"  W={W}, {i} mismatch(es): {expected_almost_matches(W, 1024, i)}")

print("\nclump sizes once more, the quantity that corrects the naive rate:")
for word in ("AACCGT", "ACACAC", "ACAGCTGT", "ACACACAC"):
    print(f"  {word}: {clump_size(word):.4f}")
