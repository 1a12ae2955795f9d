"""Exact numerics for finite nearest-neighbor (birth-death) Markov chains.

Everything here works on chains over states 0..n whose only moves are one
step up, one step down, or a self-loop.  For such chains the harmonic and
hitting-time equations are tridiagonal, so every quantity is computed with
O(n) difference recursions instead of dense solves: hitting probabilities
from the telescoping difference recursion anchored at the upper boundary,
expected hitting times from the successive-difference iteration seeded at
the reflecting boundary.  Self-loops are handled analytically through the
identity 1 - p(x,x) = p(x,x+1) + p(x,x-1).

All functions are pure; chains are validated once and frozen.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BirthDeathChain",
    "stationary_distribution",
    "hitting_probability",
    "expected_hitting_time",
    "greens_function",
    "condition_on_hitting",
    "kac_return_time",
    "mean_return_time",
]

_ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class BirthDeathChain:
    """Nearest-neighbor transition kernel on states 0..n.

    Parameters
    ----------
    up, down, stay : array_like
        Per-state probabilities of moving to x+1, to x-1, and of staying,
        each of length n+1.  Rows must sum to 1 within 1e-12, all entries
        must lie in [0, 1], and the boundaries must not leak
        (down[0] == 0, up[n] == 0).
    """

    up: np.ndarray
    down: np.ndarray
    stay: np.ndarray

    def __post_init__(self):
        up = np.asarray(self.up, dtype=float).copy()
        down = np.asarray(self.down, dtype=float).copy()
        stay = np.asarray(self.stay, dtype=float).copy()
        if up.ndim != 1 or up.shape != down.shape or up.shape != stay.shape:
            raise ValueError("up, down, stay must be 1-d arrays of equal length")
        if up.size < 2:
            raise ValueError("need at least two states")
        for name, arr in (("up", up), ("down", down), ("stay", stay)):
            if np.any(arr < 0) or np.any(arr > 1):
                raise ValueError(f"{name} entries must lie in [0, 1]")
        rows = up + down + stay
        if np.any(np.abs(rows - 1.0) > _ROW_SUM_TOL):
            raise ValueError("rows must sum to 1 within 1e-12")
        if down[0] != 0.0:
            raise ValueError("down[0] must be 0")
        if up[-1] != 0.0:
            raise ValueError("up[n] must be 0")
        for arr in (up, down, stay):
            arr.setflags(write=False)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)
        object.__setattr__(self, "stay", stay)

    @property
    def n(self) -> int:
        """Highest state index."""
        return self.up.size - 1

    @property
    def n_states(self) -> int:
        return self.up.size


def _require_state(chain: BirthDeathChain, x: int, name: str = "state") -> int:
    x = int(x)
    if not 0 <= x <= chain.n:
        raise ValueError(f"{name} {x} outside 0..{chain.n}")
    return x


def stationary_distribution(chain: BirthDeathChain) -> np.ndarray:
    """Stationary law from detailed balance: pi(x+1)/pi(x) = up(x)/down(x+1).

    Requires the chain to be irreducible (all interior up/down rates
    positive).
    """
    n = chain.n
    if np.any(chain.up[:-1] == 0) or np.any(chain.down[1:] == 0):
        raise ValueError("chain not irreducible; stationary law undefined")
    ratios = chain.up[:-1] / chain.down[1:]
    pi = np.ones(n + 1)
    pi[1:] = np.cumprod(ratios)
    pi /= pi.sum()
    return pi


def hitting_probability(chain: BirthDeathChain, lower: int, upper: int) -> np.ndarray:
    """Probability h(x) of hitting ``upper`` before ``lower`` from each state.

    h solves the harmonic equation with h(lower) = 0 and h(upper) = 1.  It
    is computed by the telescoping difference recursion: with
    D(x) = h(x+1) - h(x),

        D(x-1) = D(x) * up(x) / down(x),

    iterated downward from the upper boundary, then normalized so the
    differences sum to 1 across the interval.  States below ``lower`` get 0
    (they must pass through ``lower`` first), states above ``upper`` get 1.
    """
    lower = _require_state(chain, lower, "lower")
    upper = _require_state(chain, upper, "upper")
    if lower >= upper:
        raise ValueError("need lower < upper")
    interior = np.arange(lower + 1, upper)
    if np.any(chain.up[interior] == 0) or np.any(chain.down[interior] == 0):
        raise ValueError("not irreducible on interval")
    width = upper - lower
    delta = np.empty(width)
    delta[-1] = 1.0
    for x in range(upper - 1, lower, -1):
        delta[x - lower - 1] = delta[x - lower] * chain.up[x] / chain.down[x]
    delta /= delta.sum()
    h = np.zeros(chain.n + 1)
    h[lower + 1 : upper + 1] = np.cumsum(delta)
    h[upper:] = 1.0
    return h


def expected_hitting_time(chain: BirthDeathChain, target: int) -> np.ndarray:
    """Expected number of steps u(x) = E_x T_target for every state.

    Below the target, the successive differences d(x) = u(x) - u(x+1)
    satisfy d(0) = 1/up(0) and d(x) = (1 + down(x) d(x-1)) / up(x); the
    mirror recursion runs down from the top boundary for states above the
    target.  Raises if the target is unreachable from some state.
    """
    target = _require_state(chain, target, "target")
    n = chain.n
    u = np.zeros(n + 1)
    if target > 0:
        if np.any(chain.up[:target] == 0):
            raise ValueError("target unreachable from below")
        d = np.empty(target)
        d[0] = 1.0 / chain.up[0]
        for x in range(1, target):
            d[x] = (1.0 + chain.down[x] * d[x - 1]) / chain.up[x]
        u[:target] = np.cumsum(d[::-1])[::-1]
    if target < n:
        if np.any(chain.down[target + 1 :] == 0):
            raise ValueError("target unreachable from above")
        e = np.empty(n - target)
        e[-1] = 1.0 / chain.down[n]
        for x in range(n - 1, target, -1):
            e[x - target - 1] = (1.0 + chain.up[x] * e[x - target]) / chain.down[x]
        u[target + 1 :] = np.cumsum(e)
    return u


def greens_function(chain: BirthDeathChain, start: int, at: int, stop: int) -> float:
    """Expected visits to ``at`` starting from ``start`` before hitting ``stop``.

    Uses the ratio of the reach probability to the per-visit escape
    probability,

        G_stop(start, at) = P_start(T_at < T_stop) / P_at(T_at^+ > T_stop),

    where the escape probability factors as the one-step move toward
    ``stop`` times the probability of reaching ``stop`` before returning.
    ``start`` and ``at`` must sit on the same side of ``stop``.
    """
    start = _require_state(chain, start, "start")
    at = _require_state(chain, at, "at")
    stop = _require_state(chain, stop, "stop")
    if start == stop or at == stop:
        return 0.0
    if (start < stop) != (at < stop):
        raise ValueError("stop lies between start and at; no visits possible")
    if at < stop:
        h = hitting_probability(chain, lower=at, upper=stop)
        reach = 1.0 if start <= at else 1.0 - h[start]
        escape = chain.up[at] * h[at + 1]
    else:
        h = hitting_probability(chain, lower=stop, upper=at)
        reach = 1.0 if start >= at else h[start]
        escape = chain.down[at] * (1.0 - h[at - 1])
    if escape == 0.0:
        raise ValueError("stop unreachable from at; visit count diverges")
    return reach / escape


def condition_on_hitting(chain: BirthDeathChain, target: int, avoid: int) -> BirthDeathChain:
    """Doob h-transform: the chain conditioned to hit ``target`` before ``avoid``.

    Interior rows become q(x, y) = p(x, y) h(y) / h(x) where
    h(x) = P_x(T_target < T_avoid); self-loop probabilities are unchanged.
    The ``target`` row is made absorbing.  The ``avoid`` row is the
    conditional law given no immediate return, which forces the single
    step toward ``target`` (useful for conditioned return times).  ``avoid``
    is unreachable from every other state.  ``target`` and ``avoid`` may be
    given in either order on the state axis.
    """
    target = _require_state(chain, target, "target")
    avoid = _require_state(chain, avoid, "avoid")
    if target == avoid:
        raise ValueError("target and avoid must differ")
    if target > avoid:
        h = hitting_probability(chain, lower=avoid, upper=target)
        toward = 1
    else:
        h = 1.0 - hitting_probability(chain, lower=target, upper=avoid)
        toward = -1
    lo, hi = min(target, avoid), max(target, avoid)
    if np.any(h[lo + 1 : hi] == 0.0):
        raise ValueError("conditioning probability vanishes on an interior state")
    up = chain.up.copy()
    down = chain.down.copy()
    stay = chain.stay.copy()
    for x in range(lo + 1, hi):
        up[x] = chain.up[x] * h[x + 1] / h[x]
        down[x] = chain.down[x] * h[x - 1] / h[x]
        stay[x] = 1.0 - up[x] - down[x]
    up[target], down[target], stay[target] = 0.0, 0.0, 1.0
    up[avoid] = 1.0 if toward == 1 else 0.0
    down[avoid] = 1.0 if toward == -1 else 0.0
    stay[avoid] = 0.0
    return BirthDeathChain(up=up, down=down, stay=stay)


def kac_return_time(chain: BirthDeathChain, x: int, stationary: np.ndarray | None = None) -> float:
    """Mean return time to x via the Kac identity E_x T_x^+ = 1/pi(x)."""
    x = _require_state(chain, x)
    pi = stationary_distribution(chain) if stationary is None else np.asarray(stationary, float)
    if pi.shape != (chain.n + 1,):
        raise ValueError("stationary vector has wrong length")
    if pi[x] <= 0.0:
        raise ValueError("stationary mass at x is zero")
    return 1.0 / pi[x]


def mean_return_time(chain: BirthDeathChain, x: int) -> float:
    """Mean return time to x by first-step analysis (oracle for the Kac identity)."""
    x = _require_state(chain, x)
    u = expected_hitting_time(chain, x)
    out = 1.0
    if x < chain.n:
        out += chain.up[x] * u[x + 1]
    if x > 0:
        out += chain.down[x] * u[x - 1]
    return out
