"""Word autocorrelation and Poisson-approximation machinery.

How well a word overlaps its own shifts controls how strongly nearby
window occurrences attract each other, and therefore how far the count of
occurrences in a circular L-letter sequence sits from Poisson.  This
module computes, for a word w of length W:

  * the overlap profile: for each shift k, whether w matches its k-shift
    exactly on the overlap (y_k) and how many overlap letters match (m_k);
  * Chen-Stein total-variation bounds on the occurrence count, both for a
    fresh random sequence and for the count accumulated by a fixed time;
  * the expected clump size, the mean number of occurrences per cluster
    of overlapping hits;
  * exhaustive scans of all 4^W words, fast enough to be interactive.

Counts are over all L windows of the circular sequence (wrap-around
included).  The alphabet is {A, C, G, T}, encoded 0..3; a word's scan
index packs its letters two bits each, first letter most significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .mutation import build_match_chain, return_probability
from .markov import hitting_probability

__all__ = [
    "ALPHABET",
    "DnaWord",
    "OverlapProfile",
    "ChenSteinReport",
    "overlap_profile",
    "initial_condition_bounds",
    "time_T_bounds",
    "clump_size",
    "declumped_count_bound",
    "expected_almost_matches",
    "WordScan",
    "scan_all_words",
    "overlap_class_census",
    "repetitive_words",
    "word_to_index",
    "index_to_word",
]

ALPHABET = "ACGT"
_CODE = {c: i for i, c in enumerate(ALPHABET)}

MAX_WORD_LENGTH = 16


@dataclass(frozen=True)
class DnaWord:
    """A fixed word over {A, C, G, T}, 1..16 letters."""

    letters: str

    def __post_init__(self):
        w = self.letters.upper()
        if not 1 <= len(w) <= MAX_WORD_LENGTH:
            raise ValueError(f"word length must be 1..{MAX_WORD_LENGTH}")
        if any(c not in _CODE for c in w):
            raise ValueError(f"letters must come from {ALPHABET}")
        object.__setattr__(self, "letters", w)

    @property
    def length(self) -> int:
        return len(self.letters)

    def codes(self) -> np.ndarray:
        """Letters as int8 codes, A=0, C=1, G=2, T=3."""
        return np.array([_CODE[c] for c in self.letters], dtype=np.int8)

    def __str__(self) -> str:
        return self.letters


def as_word(word) -> DnaWord:
    return word if isinstance(word, DnaWord) else DnaWord(str(word))


def word_to_index(word) -> int:
    """Pack a word into an integer, 2 bits per letter, first letter most significant."""
    idx = 0
    for c in as_word(word).letters:
        idx = (idx << 2) | _CODE[c]
    return idx


def index_to_word(idx: int, W: int) -> str:
    return "".join(ALPHABET[(idx >> (2 * (W - 1 - j))) & 3] for j in range(W))


@dataclass(frozen=True)
class OverlapProfile:
    """Self-overlap data of a word; entry i corresponds to shift k = i + 1.

    y[i] is 1 when the word matches its (i+1)-shift exactly on the overlap
    and m[i] counts the matching letters inside that overlap.
    """

    y: np.ndarray
    m: np.ndarray

    @property
    def shift_set(self) -> tuple[int, ...]:
        """Shifts k with an exact overlap match (Table-2-style category)."""
        return tuple(int(k + 1) for k in np.flatnonzero(self.y))


def overlap_profile(word) -> OverlapProfile:
    """Compare a word against each of its shifts over the overlap positions."""
    codes = as_word(word).codes()
    W = codes.size
    m = np.empty(max(W - 1, 0), dtype=np.int64)
    for k in range(1, W):
        m[k - 1] = int(np.count_nonzero(codes[: W - k] == codes[k:]))
    y = (m == (W - 1 - np.arange(W - 1))).astype(np.int64)
    return OverlapProfile(y=y, m=m)


@dataclass(frozen=True)
class ChenSteinReport:
    """Poisson-approximation bundle for one word.

    ``lam`` is the expected occurrence count (L/4^W for a fresh random
    sequence, caller-supplied otherwise), b1/b2 the Chen-Stein bound
    terms, ``tv_bound`` = 2 (b1 + b2) (1 - e^-lam)/lam, and ``clump_size``
    the expected occurrences per clump.  ``q0``, ``q`` and ``s_overlap``
    are the overlap sums feeding b2.
    """

    lam: float
    b1: float
    b2: float
    tv_bound: float
    clump_size: float
    q0: float
    q: float
    s_overlap: float


def _binom_quarter_pmf(k: int) -> np.ndarray:
    """P(Binomial(k, 1/4) = j) for j = 0..k, by the direct product formula."""
    return np.array(
        [math.comb(k, j) * 0.25**j * 0.75 ** (k - j) for j in range(k + 1)]
    )


@lru_cache(maxsize=None)
def _z_table(W: int) -> np.ndarray:
    """z(m, k): chance of completing a neighboring hit from m overlap matches.

    z(m, k) = sum_j P(Binomial(k, 1/4) = j) h(m + j) 1{m + j < W}, where h
    is the match chain's probability of reaching W before 0.  Entry [k, m]
    is filled for 1 <= k < W, 0 <= m <= W - k.
    """
    h = hitting_probability(build_match_chain(W), 0, W)
    z = np.zeros((W, W + 1))
    for k in range(1, W):
        r = _binom_quarter_pmf(k)
        for m in range(W - k + 1):
            j = np.arange(k + 1)
            keep = (m + j) < W
            z[k, m] = float(r[keep] @ h[m + j[keep]])
    return z


def _overlap_sums(word) -> tuple[float, float, float]:
    """(Q0, Q, S): the overlap sums entering b2 and the clump size."""
    word = as_word(word)
    W = word.length
    prof = overlap_profile(word)
    k = np.arange(1, W)
    q0 = float(np.sum(prof.y * 4.0 ** (-k)))
    q = float(np.sum(prof.y * 4.0 ** (-k) * (W - k) / W))
    z = _z_table(W)
    s = float(sum(z[kk, prof.m[kk - 1]] for kk in range(1, W)))
    return q0, q, s


def initial_condition_bounds(word, L: int) -> ChenSteinReport:
    """Poisson bound for the occurrence count in a fresh random circular sequence.

    With gamma = L/4^W: b1 = gamma (2W - 1)/4^W and b2 = 2 gamma Q0 where
    Q0 sums 4^-k over the exact self-overlap shifts.
    """
    word = as_word(word)
    W = word.length
    if L <= 2 * W:
        raise ValueError("need L > 2W")
    gamma = L / 4.0**W
    q0, q, s = _overlap_sums(word)
    b1 = gamma * (2 * W - 1) / 4.0**W
    b2 = 2.0 * gamma * q0
    tv = 2.0 * (b1 + b2) * (1.0 - math.exp(-gamma)) / gamma
    return ChenSteinReport(
        lam=gamma, b1=b1, b2=b2, tv_bound=tv,
        clump_size=_clump_from_sums(W, q, s), q0=q0, q=q, s_overlap=s,
    )


def time_T_bounds(word, L: int, lam: float) -> ChenSteinReport:
    """Poisson bound for the count of windows hit by a fixed time.

    b1 = lam^2 (2W - 1)/L; b2 <= lam^2 (4W - 4)/L + lam (2Q + 4S) where Q
    collects simultaneous completions of overlapping windows and S the
    chance a neighboring window completes before its match count dies out.
    """
    word = as_word(word)
    W = word.length
    if L <= 2 * W:
        raise ValueError("need L > 2W")
    if lam <= 0:
        raise ValueError("lam must be positive")
    q0, q, s = _overlap_sums(word)
    b1 = lam * lam * (2 * W - 1) / L
    b2 = lam * lam * (4 * W - 4) / L + lam * (2.0 * q + 4.0 * s)
    tv = 2.0 * (b1 + b2) * (1.0 - math.exp(-lam)) / lam
    return ChenSteinReport(
        lam=lam, b1=b1, b2=b2, tv_bound=tv,
        clump_size=_clump_from_sums(W, q, s), q0=q0, q=q, s_overlap=s,
    )


def _clump_from_sums(W: int, q: float, s: float) -> float:
    return (1.0 + 2.0 * (s + q)) / (1.0 - return_probability(W))


def clump_size(word) -> float:
    """Expected occurrences per clump: (1 + 2(S + Q)) / (1 - a)."""
    word = as_word(word)
    _, q, s = _overlap_sums(word)
    return _clump_from_sums(word.length, q, s)


def declumped_count_bound(W: int, L: int, lam_bar: float) -> float:
    """Word-independent Poisson bound for the declumped occurrence count.

    Counting only the first hit of each clump, the total-variation
    distance to Poisson(lam_bar) is at most
    2 (4W - 3)/L * lam_bar (1 - e^-lam_bar).
    """
    if W < 1 or L <= 0 or lam_bar < 0:
        raise ValueError("need W >= 1, L > 0, lam_bar >= 0")
    return 2.0 * (4 * W - 3) / L * lam_bar * (1.0 - math.exp(-lam_bar))


def expected_almost_matches(W: int, L: int, i: int) -> float:
    """Expected number of circular windows disagreeing with the target in exactly i letters."""
    if not 0 <= i <= W:
        raise ValueError("need 0 <= i <= W")
    return L * math.comb(W, i) * 0.75**i * 0.25 ** (W - i)


def _all_word_codes(W: int) -> np.ndarray:
    """(4^W, W) int8 matrix of every word, row index = packed word index."""
    idx = np.arange(4**W, dtype=np.int64)
    shifts = 2 * np.arange(W - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 3).astype(np.int8)


def _profiles_matrix(codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-word m_k and y_k for all rows at once; columns are shifts 1..W-1."""
    n, W = codes.shape
    m = np.empty((n, W - 1), dtype=np.int64)
    for k in range(1, W):
        m[:, k - 1] = (codes[:, : W - k] == codes[:, k:]).sum(axis=1)
    y = m == (W - np.arange(1, W))
    return m, y


@dataclass(frozen=True)
class WordScan:
    """Chen-Stein scan over every word of one length.

    Arrays are indexed by the packed word index.  ``b1`` is shared by all
    words of the same length.
    """

    W: int
    L: int
    lam: float
    b1: float
    b2: np.ndarray
    tv: np.ndarray
    clump: np.ndarray
    is_constant: np.ndarray
    best_word: str
    worst_word: str

    def word(self, idx: int) -> str:
        return index_to_word(idx, self.W)


def scan_all_words(W: int, L: int, lam: float) -> WordScan:
    """Time-T bounds and clump sizes for all 4^W words (constant words flagged).

    Best and worst refer to the tv bound among nonconstant words.
    """
    if W > 10:
        raise ValueError("scan limited to W <= 10")
    if L <= 2 * W:
        raise ValueError("need L > 2W")
    codes = _all_word_codes(W)
    m, y = _profiles_matrix(codes)
    k = np.arange(1, W)
    q = (y * 4.0 ** (-k) * (W - k) / W).sum(axis=1)
    z = _z_table(W)
    s = np.zeros(len(codes))
    for kk in range(1, W):
        s += z[kk, m[:, kk - 1]]
    a = return_probability(W)
    b1 = lam * lam * (2 * W - 1) / L
    b2 = lam * lam * (4 * W - 4) / L + lam * (2.0 * q + 4.0 * s)
    tv = 2.0 * (b1 + b2) * (1.0 - math.exp(-lam)) / lam
    clump = (1.0 + 2.0 * (s + q)) / (1.0 - a)
    is_constant = (codes == codes[:, :1]).all(axis=1)
    masked = np.where(is_constant, np.inf, tv)
    best = index_to_word(int(np.argmin(masked)), W)
    masked = np.where(is_constant, -np.inf, tv)
    worst = index_to_word(int(np.argmax(masked)), W)
    return WordScan(
        W=W, L=L, lam=lam, b1=b1, b2=b2, tv=tv, clump=clump,
        is_constant=is_constant, best_word=best, worst_word=worst,
    )


def overlap_class_census(W: int) -> dict[tuple[int, ...], tuple[int, str]]:
    """Count words by exact-overlap shift set; maps set -> (count, example word).

    The example is the lowest-index word in the class.
    """
    codes = _all_word_codes(W)
    _, y = _profiles_matrix(codes)
    census: dict[tuple[int, ...], tuple[int, str]] = {}
    packed = y @ (1 << np.arange(W - 1))
    for key_bits in np.unique(packed):
        rows = np.flatnonzero(packed == key_bits)
        key = tuple(int(k + 1) for k in range(W - 1) if (int(key_bits) >> k) & 1)
        census[key] = (rows.size, index_to_word(int(rows[0]), W))
    return census


def repetitive_words(W: int = 6) -> list[str]:
    """The published repetitive-word exclusion list for the initial-count bound.

    Constant words, plus the two worst overlap classes (period 2, and
    period 3 with the end letter closing the period), plus period-3 words
    whose three period letters are pairwise distinct.  For W = 6 this
    reproduces the published census of 52 words, which is asserted here;
    the full first-three-category union is larger (76 words) and can be
    recovered from :func:`overlap_class_census`.
    """
    if W < 6:
        raise ValueError("exclusion list defined for W >= 6")
    codes = _all_word_codes(W)
    _, y = _profiles_matrix(codes)
    constant = (codes == codes[:, :1]).all(axis=1)
    y2 = y[:, 1]
    y3 = y[:, 2]
    y5 = y[:, 4]
    distinct3 = (
        (codes[:, 0] != codes[:, 1])
        & (codes[:, 1] != codes[:, 2])
        & (codes[:, 0] != codes[:, 2])
    )
    mask = constant | y2 | (y3 & y5) | (y3 & distinct3)
    out = [index_to_word(int(i), W) for i in np.flatnonzero(mask)]
    if W == 6 and len(out) != 52:
        raise AssertionError(f"repetitive-word census changed: {len(out)} != 52")
    return out
