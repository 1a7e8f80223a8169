import pytest

from kacss.config import GeneratorSettings
from kacss.errors import GenerationError
from kacss.flow import is_k_arc_connected
from kacss.graph import random_k_connected
from tests.unit import oracles


def test_random_instance_size_and_connectivity() -> None:
    instance = random_k_connected(8, 2, 4, seed=11)
    assert instance.m == 20
    assert instance.k == 2
    assert instance.is_unit_cost
    assert is_k_arc_connected(instance, instance.all_arcs, 2)


def test_random_instance_is_deterministic() -> None:
    assert random_k_connected(7, 3, 5, seed=3) == random_k_connected(7, 3, 5, seed=3)


@pytest.mark.parametrize("seed", range(5))
def test_random_instance_matches_cut_oracle(seed: int) -> None:
    instance = random_k_connected(5, 2, 2, seed=seed)
    assert oracles.k_arc_connected(instance, list(range(instance.m)), 2)
    pairs = [(arc.tail, arc.head) for arc in instance.arcs]
    assert len(set(pairs)) == len(pairs)


def test_two_vertices_allow_parallel_cycles() -> None:
    instance = random_k_connected(2, 3, 0, seed=0)
    assert instance.m == 6
    assert is_k_arc_connected(instance, instance.all_arcs, 3)


@pytest.mark.parametrize("n,k,extra", [(1, 1, 0), (4, 0, 0), (4, 4, 0), (4, 1, -1), (3, 1, 10)])
def test_random_instance_rejects_bad_arguments(n: int, k: int, extra: int) -> None:
    with pytest.raises(ValueError):
        random_k_connected(n, k, extra, seed=0)


def test_cycle_packing_gives_up() -> None:
    # on three vertices the second cycle must be the reverse of the first, so single attempts fail half the time
    with pytest.raises(GenerationError):
        for seed in range(50):
            random_k_connected(3, 2, 0, seed=seed, settings=GeneratorSettings(max_attempts=1))
