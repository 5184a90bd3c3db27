import random

import pytest

from dualpair import Curve, count_points, find_anomalous
from dualpair.fields import Fp

SEED = 0x5EED


def first_anomalous_by_scan(p: int) -> Curve | None:
    """Oracle: lexicographically first (A, B) with #E(F_p) = p, by full scan."""
    field = Fp(p)
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b**2) % p == 0:
                continue
            c = Curve(field, a, b)
            if count_points(c) == p:
                return c
    return None


@pytest.fixture(scope="session")
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def tiny_anomalous():
    """The lexicographically smallest anomalous curve (p = 5 if one exists)."""
    for p in (5, 7, 11, 13):
        c = first_anomalous_by_scan(p)
        if c is not None:
            return c
    raise RuntimeError("no tiny anomalous curve")


@pytest.fixture(scope="session")
def tiny_anomalous_all():
    """One anomalous curve per prime p <= 13 admitting one."""
    out = []
    for p in (5, 7, 11, 13):
        c = first_anomalous_by_scan(p)
        if c is not None:
            out.append(c)
    return out


@pytest.fixture(scope="session")
def small_pool():
    """Anomalous curves with p up to a few thousand (search is fast there)."""
    return find_anomalous(5, 4000, count=10, seed=SEED)


@pytest.fixture(scope="session")
def medium_pool():
    """Anomalous curves in the 10^3..10^4 range."""
    return find_anomalous(1_000, 10_000, count=5, seed=SEED + 1)


@pytest.fixture(scope="session")
def large_pool():
    """Anomalous curves above the scan threshold, found via order search."""
    return find_anomalous(100_000, 1_000_000, count=2, seed=SEED + 2)
