"""Shared fixtures: the crossed-ring example and small random instances.

The crossed-ring network is a 4-cycle r-s-u-w-r (numbered 1-2-3-4) with
four one-link tours whose conflict structure exercises every clause of
the tour-conflict predicate: sharing at endpoints, interference via a
neighbor of a link head, and the destination exemption that keeps f2 and
f3 conflict-free.
"""

from __future__ import annotations

import random

import pytest

from radiosim import Network, Tour, build_network, make_random_connected

# node names within the crossed ring
R, S, U, W = 1, 2, 3, 4


@pytest.fixture
def ring4() -> Network:
    return build_network(4, [(R, S), (S, U), (U, W), (W, R)])


@pytest.fixture
def ring4_tours() -> dict[str, Tour]:
    return {
        "f1": Tour(1, 1, (U, S)),
        "f2": Tour(2, 1, (R, S)),
        "f3": Tour(3, 1, (W, U)),
        "f4": Tour(4, 1, (R, W)),
    }


# the conflict edges of the crossed-ring tour set, by tour id
RING4_CONFLICT_EDGES = {(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)}


def random_simple_path(net: Network, rng: random.Random,
                       max_len: int) -> tuple[int, ...]:
    """Independent path sampler for tests (not the generator's)."""
    length = rng.randint(1, max_len)
    path = [rng.randrange(1, net.n + 1)]
    seen = {path[0]}
    while len(path) <= length:
        options = sorted(net.neighbors(path[-1]) - seen)
        if not options:
            break
        nxt = rng.choice(options)
        path.append(nxt)
        seen.add(nxt)
    return tuple(path)


def random_tours(net: Network, rng: random.Random, count: int,
                 max_len: int, injection_round: int = 1) -> list[Tour]:
    tours = []
    tid = 1
    while len(tours) < count:
        path = random_simple_path(net, rng, max_len)
        if len(path) >= 2:
            tours.append(Tour(tid, injection_round, path))
            tid += 1
    return tours


def random_network(rng: random.Random, max_n: int = 6) -> Network:
    n = rng.randint(2, max_n)
    return make_random_connected(n, rng.random(), rng.randrange(10**9))
