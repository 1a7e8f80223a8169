from __future__ import annotations

from fractions import Fraction

import numpy as np
from kacss.arb import ArborescenceSet, ConvexCombination

SEED_LIMIT = 2**64
_UNIT = Fraction(1, SEED_LIMIT)


def check_seed(seed: int) -> int:
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def uniform_point(seed: int, stream: int = 0) -> Fraction:
    """Exact rational in [0, 1) from one 64-bit draw of the PRNG stream labelled `stream`"""
    rng = np.random.default_rng(np.random.SeedSequence(check_seed(seed), spawn_key=(stream,)))
    draw = int(rng.integers(0, np.iinfo(np.uint64).max, dtype=np.uint64, endpoint=True))
    return draw * _UNIT


def sample_index(combination: ConvexCombination, seed: int, stream: int = 0) -> int:
    if not combination.terms:
        raise ValueError("cannot sample from an empty combination")
    point = uniform_point(seed, stream)
    cumulative = Fraction(0)
    for index, weight in enumerate(combination.weights):
        cumulative += weight
        if point < cumulative:
            return index
    return len(combination.terms) - 1


def sample_term(combination: ConvexCombination, seed: int, stream: int = 0) -> ArborescenceSet:
    """Term i with probability lambda_i; deterministic in (seed, stream)"""
    return combination.term(sample_index(combination, seed, stream))
