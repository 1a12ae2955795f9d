"""Compiled inner loops for the sequence simulations.

The kernels are deliberately RNG-free: they consume blocks of pre-drawn
values from the calling replication's own stream, so reproducibility is
owned entirely by the caller.  A move value v in [0, 3L) encodes position
v // 3 and replacement offset v % 3 (the new letter is old + 1 + offset
mod 4, uniform over the three other letters).  Window match counts are
maintained incrementally: a substitution at position p touches only the
W windows covering p.

All kernels release the GIL; replications are independent, so threading
is safe and does not change results.
"""

from __future__ import annotations

import numpy as np
from numba import njit

CAP_SENTINEL = -2
EXHAUSTED_SENTINEL = -1


@njit(cache=True, nogil=True)
def window_counts(seq, word):
    """Match counts of every circular window; returns (counts, best, n_two_off).

    ``best`` is the maximum count, ``n_two_off`` the number of windows
    matching all but two letters.
    """
    L = seq.shape[0]
    W = word.shape[0]
    counts = np.zeros(L, dtype=np.int8)
    best = 0
    n_two_off = 0
    for s in range(L):
        c = 0
        for j in range(W):
            p = s + j
            if p >= L:
                p -= L
            if seq[p] == word[j]:
                c += 1
        counts[s] = c
        if c > best:
            best = c
        if c == W - 2:
            n_two_off += 1
    return counts, best, n_two_off


@njit(cache=True, nogil=True)
def run_waiting_block(seq, counts, word, moves, start_step, cap):
    """Apply substitutions until some window matches exactly.

    Returns (hit_step, used): hit_step is the 1-based step of the first
    full match, EXHAUSTED_SENTINEL if the block ran out, CAP_SENTINEL if
    the step cap was reached.
    """
    L = seq.shape[0]
    W = word.shape[0]
    step = start_step
    for t in range(moves.shape[0]):
        v = moves[t]
        pos = v // 3
        off = v % 3
        old = seq[pos]
        new = (old + 1 + off) % 4
        seq[pos] = new
        step += 1
        hit = False
        for d in range(W):
            s = pos - d
            if s < 0:
                s += L
            tgt = word[d]
            c = counts[s]
            if new == tgt:
                c += 1
            if old == tgt:
                c -= 1
            counts[s] = c
            if c == W:
                hit = True
        if hit:
            return step, t + 1
        if step >= cap:
            return CAP_SENTINEL, t + 1
    return EXHAUSTED_SENTINEL, moves.shape[0]


@njit(cache=True, nogil=True)
def run_killed_block(seq, counts, word, moves, kill_unifs, stop_unifs,
                     kill_table, mm1_stop_prob, k2_in, start_step, cap):
    """Killed-chain steps: stop on a near-match, or by per-window kill coins.

    After each substitution: a full match always stops; a window matching
    all but one letter stops with probability 1 when mm1_stop_prob >= 1,
    else with probability mm1_stop_prob using stop_unifs.  When no window
    is that close, one uniform against kill_table[k2] (the chance at
    least one of the k2 two-off windows kills) may end the process.
    Returns (stop_step, used, k2): stop_step as in run_waiting_block.
    """
    L = seq.shape[0]
    W = word.shape[0]
    step = start_step
    k2 = k2_in
    for t in range(moves.shape[0]):
        v = moves[t]
        pos = v // 3
        off = v % 3
        old = seq[pos]
        new = (old + 1 + off) % 4
        seq[pos] = new
        step += 1
        near = False
        full = False
        for d in range(W):
            s = pos - d
            if s < 0:
                s += L
            tgt = word[d]
            c0 = counts[s]
            c = c0
            if new == tgt:
                c += 1
            if old == tgt:
                c -= 1
            if c != c0:
                counts[s] = c
                if c0 == W - 2:
                    k2 -= 1
                if c == W - 2:
                    k2 += 1
                if c >= W - 1:
                    near = True
                    if c == W:
                        full = True
        if full:
            return step, t + 1, k2
        if near:
            if mm1_stop_prob >= 1.0 or stop_unifs[t] < mm1_stop_prob:
                return step, t + 1, k2
        elif kill_unifs[t] < kill_table[k2]:
            return step, t + 1, k2
        if step >= cap:
            return CAP_SENTINEL, t + 1, k2
    return EXHAUSTED_SENTINEL, moves.shape[0], k2
