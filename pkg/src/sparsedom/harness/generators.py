"""Seeded graph families.

Every generator draws from its own :class:`random.Random`, so a fixed
``(family, params, seed)`` always yields the identical graph.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Mapping

from ..errors import InputError
from ..graph_core import Graph


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(m: int) -> Graph:
    """``K_{1,m}`` with centre 0."""
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def grid(rows: int, cols: int) -> Graph:
    """Row-major ``rows x cols`` grid."""
    at = lambda i, j: i * cols + j  # noqa: E731
    edges = [(at(i, j), at(i, j + 1)) for i in range(rows) for j in range(cols - 1)]
    edges += [(at(i, j), at(i + 1, j)) for i in range(rows - 1) for j in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def subdivided_clique(n: int, t: int) -> Graph:
    """``K_n`` with every edge replaced by a path through ``t`` new vertices."""
    edges = []
    nxt = n
    for u, v in itertools.combinations(range(n), 2):
        chain = [u, *range(nxt, nxt + t), v]
        nxt += t
        edges += zip(chain, chain[1:])
    return Graph.from_edges(nxt, edges)


def random_tree(n: int, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_max_deg(
    n: int, max_deg: int, p: float = 0.5, seed: int = 0, connected: bool = False
) -> Graph:
    """Random graph with maximum degree ``max_deg``.

    Each of the ``C(n, 2)`` pairs is proposed in shuffled order and kept with
    probability ``p`` unless it would push an endpoint past ``max_deg``.
    With ``connected`` a random tree of degree at most ``max_deg`` is laid
    down first.
    """
    if max_deg < 0:
        raise InputError("max_deg must be nonnegative")
    if connected and n > 2 and max_deg < 2:
        raise InputError("connected graphs on more than two vertices need max_deg >= 2")
    rng = random.Random(seed)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1

    if connected:
        for v in range(1, n):
            open_ = [u for u in range(v) if deg[u] < max_deg]
            add(rng.choice(open_), v)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs:
        if (u, v) in edges or rng.random() >= p:
            continue
        if deg[u] < max_deg and deg[v] < max_deg:
            add(u, v)
    return Graph.from_edges(n, sorted(edges))


def random_digraph(n: int, p: float = 0.3, seed: int = 0) -> Graph:
    """Simple digraph, each ordered pair an arc with probability ``p``
    (antiparallel arcs allowed)."""
    rng = random.Random(seed)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Graph.from_edges(n, arcs, directed=True)


FAMILIES: dict[str, tuple[Callable[..., Graph], tuple[str, ...], bool]] = {
    # name: (builder, positional params, takes a seed)
    "path": (path, ("n",), False),
    "cycle": (cycle, ("n",), False),
    "star": (star, ("m",), False),
    "grid": (grid, ("rows", "cols"), False),
    "complete": (complete, ("n",), False),
    "subdivided_clique": (subdivided_clique, ("n", "t"), False),
    "random_tree": (random_tree, ("n",), True),
    "random_max_deg": (random_max_deg, ("n", "max_deg"), True),
    "random_digraph": (random_digraph, ("n",), True),
}


def generate(family: str, params: Mapping[str, object], seed: int = 0) -> Graph:
    """Build a member of ``family``; ``params`` are keyword arguments of its builder."""
    try:
        builder, _, seeded = FAMILIES[family]
    except KeyError:
        raise InputError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}") from None
    kw = dict(params)
    if seeded:
        kw["seed"] = seed
    try:
        return builder(**kw)
    except TypeError as exc:
        raise InputError(f"bad parameters for {family}: {exc}") from None
