import random

import pytest

from sigmaample.catalog import catalog_entry, catalog_names


@pytest.fixture
def wehler():
    return catalog_entry("wehler_k3")


@pytest.fixture
def abelian():
    return catalog_entry("abelian_square")


@pytest.fixture(params=catalog_names())
def entry(request):
    return catalog_entry(request.param)


def random_divisors(rank, count, seed=0, span=9):
    """Deterministic sample of integer divisor classes, zero excluded."""
    from sigmaample.lattice import DivisorClass

    rng = random.Random(seed + 1000 * rank)
    out = []
    while len(out) < count:
        coords = tuple(rng.randint(-span, span) for _ in range(rank))
        if any(coords):
            out.append(DivisorClass.of(*coords))
    return out
