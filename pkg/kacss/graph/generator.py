from __future__ import annotations

import logging
from typing import List, Optional, Set, Tuple

import numpy as np
from kacss.config import GeneratorSettings
from kacss.errors import GenerationError

from .instance import Instance

logger = logging.getLogger(__name__)


def _hamiltonian_cycle(rng: np.random.Generator, n: int) -> List[Tuple[int, int]]:
    order = [int(v) for v in rng.permutation(n)]
    return [(order[i], order[(i + 1) % n]) for i in range(n)]


def _pack_cycles(rng: np.random.Generator, n: int, k: int, max_attempts: int) -> List[Tuple[int, int]]:
    """Union of k pairwise arc-disjoint random Hamiltonian cycles, repacked from scratch on any collision"""
    for attempt in range(1, max_attempts + 1):
        used: Set[Tuple[int, int]] = set()
        arcs: List[Tuple[int, int]] = []
        for _ in range(k):
            cycle = _hamiltonian_cycle(rng, n)
            # on two vertices the only cycle is the 2-cycle, parallel copies are allowed
            if n > 2 and used.intersection(cycle):
                break
            used.update(cycle)
            arcs.extend(cycle)
        else:
            logger.debug(f"Packed {k} Hamiltonian cycles on {n} vertices after {attempt} attempt(s)")
            return arcs
    raise GenerationError(
        f"could not pack {k} arc-disjoint Hamiltonian cycles on {n} vertices in {max_attempts} attempts"
    )


def random_k_connected(
    n: int, k: int, extra: int, seed: int, settings: Optional[GeneratorSettings] = None
) -> Instance:
    """Random unit-cost k-arc-connected instance: k arc-disjoint Hamiltonian cycles plus `extra` distinct arcs.

    On two vertices any k is accepted and the cycles become parallel copies of the 2-cycle.
    """
    settings = settings or GeneratorSettings()
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    if k < 1:
        raise ValueError(f"connectivity requirement must be at least 1, got {k}")
    if n > 2 and k > n - 1:
        raise ValueError(f"k={k} exceeds n-1={n - 1}")
    if extra < 0:
        raise ValueError(f"extra arc count must be non-negative, got {extra}")

    rng = np.random.default_rng(seed)
    arcs = _pack_cycles(rng, n, k, settings.max_attempts)

    if extra > 0:
        present = set(arcs)
        candidates = [(u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in present]
        if extra > len(candidates):
            raise ValueError(f"only {len(candidates)} distinct arcs can be added, {extra} requested")
        chosen = rng.choice(len(candidates), size=extra, replace=False)
        arcs.extend(candidates[int(i)] for i in chosen)

    logger.info(f"Generated instance with n={n}, k={k}, {len(arcs)} arcs from seed {seed}")
    return Instance.from_pairs(n, arcs, k=k)
