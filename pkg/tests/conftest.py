from __future__ import annotations

import pytest

from gicc.cover import gicc_cover, icc_to_gic
from gicc.generators import (
    gen_clique,
    gen_cycle,
    gen_demo_4gic,
    gen_icc,
    gen_random,
    gen_relay_family,
)
from gicc.structure import GicStructure, require_valid


@pytest.fixture(scope="session")
def demo():
    return gen_demo_4gic()


@pytest.fixture(scope="session")
def demo_structure(demo):
    d, inner = demo
    return require_valid(d, inner)


@pytest.fixture(scope="session")
def structure_pool() -> list[GicStructure]:
    """At least 200 validated structures of varied shape, deterministically."""
    pool: list[GicStructure] = [require_valid(*gen_demo_4gic())]
    for k in range(2, 9):
        pool.append(require_valid(*gen_relay_family(k)))
    for n in range(2, 9):
        pool.append(require_valid(gen_clique(n), frozenset(range(1, n + 1))))
        pool.append(require_valid(gen_cycle(n), frozenset({1, 2})))
    for k in (2, 3, 4):
        for seed in range(12):
            pool.append(require_valid(*icc_to_gic(gen_icc(k, seed=seed))))
    seed = 0
    while len(pool) < 210:
        seed += 1
        d = gen_random(4 + seed % 6, 0.2 + 0.04 * (seed % 6), seed)
        plan = gicc_cover(d, effort=150, seed=seed)
        pool.extend(part.structure for part in plan.parts)
    return pool
