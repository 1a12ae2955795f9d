"""Reproducible random-stream derivation for replication-parallel Monte Carlo.

Each replication (or fixed-size chunk) owns a stream derived from
(master_seed, purpose, index) through numpy's SeedSequence, so results are
bit-identical however replications are scheduled across threads.  The
purpose tag keeps streams of different experiments sharing one master
seed from colliding.
"""

from __future__ import annotations

import numpy as np

SEGMENT_WAITING = 0
INITIAL_MATCHES = 1
KILLED_CHAIN = 2
MORAN_EXCURSIONS = 3
MATCH_CHAIN = 4


def stream(master_seed: int, purpose: int, index: int) -> np.random.Generator:
    """Independent generator for one replication of one experiment."""
    return np.random.default_rng(
        np.random.SeedSequence((int(master_seed), int(purpose), int(index)))
    )
