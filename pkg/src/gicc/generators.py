"""Instance generators: benchmark families, baseline shapes, random digraphs."""

from __future__ import annotations

import random

from .cover import IccDescription
from .digraph import Digraph, VertexSet

# Lengths achieved by other known schemes on the demo digraph; kept for
# comparison tables only, none of these schemes is computed here.
DEMO_4GIC_REFERENCE_LENGTHS = {
    "composite-coding": 3.5,
    "local-chromatic": 4.0,
    "fractional-partial-clique": 4.0,
    "interlinked-cycle-cover": 4.0,
    "cycle-cover": 4.0,
    "clique-cover": 5.0,
}


def gen_relay_family(k: int) -> tuple[Digraph, VertexSet]:
    """Family member with k inner vertices and 2(k-1) relays, n = 3k-2.

    Inner vertex i caches the messages of its two relays: k+i forwards
    to the higher-labeled inner vertices and 3k-i to the lower-labeled
    ones (the end vertices 1 and k each get a single relay serving all
    the rest).  No two vertices cache each other and the relays cache
    nothing among themselves, so clique and cycle covers do badly here
    while the structure code spends only 2k-1 symbols.
    """
    if k < 2:
        raise ValueError("family needs k >= 2")
    n = 3 * k - 2
    arcs: list[tuple[int, int]] = [(1, k + 1)]
    arcs.extend((k + 1, j) for j in range(2, k + 1))
    arcs.append((k, 2 * k))
    arcs.extend((2 * k, j) for j in range(1, k))
    for i in range(2, k):
        arcs.append((i, k + i))
        arcs.append((i, 3 * k - i))
        arcs.extend((k + i, j) for j in range(i + 1, k + 1))
        arcs.extend((3 * k - i, j) for j in range(1, i))
    return Digraph.from_arcs(n, arcs), frozenset(range(1, k + 1))


def gen_demo_4gic() -> tuple[Digraph, VertexSet]:
    """Six-vertex 4-GIC on which the structure code beats both classic covers.

    Inner vertices 1..4 interlink through the two shared relays 5 and
    6; the code is three symbols against a best cycle cover of four
    and a best clique cover of five.
    """
    arcs = [
        (1, 4), (1, 5),
        (2, 1), (2, 6),
        (3, 1), (3, 2), (3, 4),
        (4, 1), (4, 5),
        (5, 2), (5, 3),
        (6, 3), (6, 4),
    ]
    return Digraph.from_arcs(6, arcs), frozenset({1, 2, 3, 4})


def gen_clique(n: int) -> Digraph:
    """Complete bidirectional digraph: everyone caches everyone else's message."""
    if n < 2:
        raise ValueError("clique needs n >= 2")
    return Digraph.from_arcs(
        n, ((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
    )


def gen_cycle(n: int) -> Digraph:
    """Directed n-cycle 1 -> 2 -> ... -> n -> 1."""
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    return Digraph.from_arcs(n, ((i, i % n + 1) for i in range(1, n + 1)))


def gen_icc(
    k: int,
    path_lengths: tuple[int, ...] | None = None,
    max_connector: int = 2,
    seed: int = 0,
) -> IccDescription:
    """Seeded interlinked-cycle description: k disjoint paths plus connectors.

    Path lengths default to seeded draws from 1..3; each ordered pair
    of paths gets a connector of 0..max_connector fresh vertices.
    Labels are assigned consecutively (paths first, then connectors in
    pair order), deterministic per seed.
    """
    if k < 2:
        raise ValueError("need at least two paths")
    rng = random.Random(seed)
    if path_lengths is None:
        lengths = tuple(rng.randint(1, 3) for _ in range(k))
    else:
        lengths = tuple(path_lengths)
        if len(lengths) != k:
            raise ValueError(f"expected {k} path lengths, got {len(lengths)}")
        if any(ln < 1 for ln in lengths):
            raise ValueError("paths need at least one vertex")
    if max_connector < 0:
        raise ValueError("max_connector must be >= 0")

    label = 1
    paths: list[tuple[int, ...]] = []
    for ln in lengths:
        paths.append(tuple(range(label, label + ln)))
        label += ln
    connectors: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            ln = rng.randint(0, max_connector)
            connectors[(i, j)] = tuple(range(label, label + ln))
            label += ln
    return IccDescription(k, tuple(paths), connectors)


def gen_random(n: int, arc_probability: float, seed: int) -> Digraph:
    """Random digraph: each ordered non-self pair becomes an arc with probability p."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if not (0.0 <= arc_probability <= 1.0):
        raise ValueError("arc probability must be in [0, 1]")
    rng = random.Random(seed)
    arcs = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and rng.random() < arc_probability
    ]
    return Digraph.from_arcs(n, arcs)
