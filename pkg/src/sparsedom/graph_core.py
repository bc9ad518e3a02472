"""Immutable adjacency-list graphs and the basic distance predicates.

Vertices are the dense integers ``0..n-1``.  Every routine that walks the
graph accepts an optional ``removed`` set; passing it is equivalent to running
the routine on ``G - removed`` but avoids building the subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping

from .errors import GuardError, InputError

ALL_PAIRS_LIMIT = 2**12


@dataclass(frozen=True)
class Graph:
    """Simple graph with sorted neighbour tuples.

    For ``directed=True`` the adjacency lists hold out-neighbours; directed
    graphs only appear in the degree-reduction gadget.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    directed: bool = False
    _m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise InputError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        total = 0
        for v, row in enumerate(self.adj):
            prev = -1
            for u in row:
                if not 0 <= u < self.n:
                    raise InputError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise InputError(f"self-loop at {v}")
                if u <= prev:
                    raise InputError(f"neighbour list of {v} not strictly ascending")
                prev = u
            total += len(row)
        if not self.directed:
            for v, row in enumerate(self.adj):
                for u in row:
                    if not _contains(self.adj[u], v):
                        raise InputError(f"edge {v}-{u} is not symmetric")
            total //= 2
        object.__setattr__(self, "_m", total)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], directed: bool = False
    ) -> "Graph":
        """Build a graph, rejecting self-loops, duplicates and bad ids."""
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            if v in rows[u]:
                raise InputError(f"duplicate edge ({u}, {v})")
            rows[u].add(v)
            if not directed:
                rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows), directed)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        if self.directed:
            return [(u, v) for u in range(self.n) for v in self.adj[u]]
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adj[u], v)

    def in_neighbors(self) -> list[list[int]]:
        """Reverse adjacency (only meaningful for directed graphs)."""
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            for v in self.adj[u]:
                rev[v].append(u)
        return rev


def _contains(row: tuple[int, ...], x: int) -> bool:
    lo, hi = 0, len(row)
    while lo < hi:
        mid = (lo + hi) // 2
        if row[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(row) and row[lo] == x


def check_vertex(G: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < G.n:
        raise InputError(f"vertex {v!r} out of range [0, {G.n})")


def check_set(G: Graph, X: Iterable[int]) -> frozenset[int]:
    out = frozenset(X)
    for v in out:
        check_vertex(G, v)
    return out


def bfs_distances(
    G: Graph, v: int, cap: int, removed: Collection[int] = ()
) -> dict[int, int]:
    """Distances from ``v`` to every vertex at distance at most ``cap``.

    Vertices farther than ``cap`` are omitted.  ``v`` itself must not be in
    ``removed``.
    """
    check_vertex(G, v)
    if cap < 0:
        raise InputError("cap must be nonnegative")
    if v in removed:
        raise InputError(f"source {v} lies in the removed set")
    return _bfs(G.adj, (v,), cap, removed)


def _bfs(
    adj: tuple[tuple[int, ...], ...],
    sources: Iterable[int],
    cap: int,
    removed: Collection[int] = (),
) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    frontier = list(dist)
    depth = 0
    while frontier and depth < cap:
        depth += 1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist and y not in removed:
                    dist[y] = depth
                    nxt.append(y)
        frontier = nxt
    return dist


def ball(G: Graph, v: int, d: int, removed: Collection[int] = ()) -> frozenset[int]:
    """The closed ``d``-neighbourhood of ``v``."""
    return frozenset(bfs_distances(G, v, d, removed))


def multi_ball(
    G: Graph, X: Iterable[int], d: int, removed: Collection[int] = ()
) -> frozenset[int]:
    """Union of the ``d``-balls around every member of ``X``."""
    return frozenset(_bfs(G.adj, [x for x in X if x not in removed], d, removed))


@dataclass(frozen=True)
class Subgraph:
    """Result of :func:`delete`: the compact graph plus both id tables."""

    graph: Graph
    new_to_old: tuple[int, ...]
    old_to_new: Mapping[int, int]

    def to_new(self, X: Iterable[int]) -> frozenset[int]:
        return frozenset(self.old_to_new[x] for x in X if x in self.old_to_new)

    def to_old(self, X: Iterable[int]) -> frozenset[int]:
        return frozenset(self.new_to_old[x] for x in X)


def delete(G: Graph, S: Iterable[int]) -> Subgraph:
    """Return ``G - S`` relabelled to ``0..n-|S|-1`` (order preserving)."""
    S = check_set(G, S)
    keep = tuple(v for v in range(G.n) if v not in S)
    old_to_new = {v: i for i, v in enumerate(keep)}
    adj = tuple(
        tuple(old_to_new[u] for u in G.adj[v] if u in old_to_new) for v in keep
    )
    return Subgraph(Graph(len(keep), adj, G.directed), keep, old_to_new)


def power(G: Graph, d: int) -> Graph:
    """The graph joining every pair at distance between 1 and ``d``."""
    if d < 1:
        raise InputError("power requires d >= 1")
    if d == 1:
        return G
    adj = []
    for v in range(G.n):
        reach = _bfs(G.adj, (v,), d)
        del reach[v]
        adj.append(tuple(sorted(reach)))
    return Graph(G.n, tuple(adj))


def is_scattered(
    G: Graph, A: Iterable[int], r: int, removed: Collection[int] = ()
) -> bool:
    """True iff the ``r``-balls around members of ``A`` are pairwise disjoint."""
    A = check_set(G, A)
    if r < 0:
        raise InputError("radius must be nonnegative")
    if A & frozenset(removed):
        raise InputError("scattered candidates intersect the removed set")
    owner: dict[int, int] = {}
    for a in A:
        for x in _bfs(G.adj, (a,), r, removed):
            if x in owner:
                return False
            owner[x] = a
    return True


def dominates(
    G: Graph, X: Iterable[int], W: Iterable[int], d: int
) -> bool:
    """True iff every vertex of ``W`` is within distance ``d`` of ``X``."""
    X = check_set(G, X)
    W = check_set(G, W)
    if d < 0:
        raise InputError("radius must be nonnegative")
    if not W:
        return True
    covered = _bfs(G.adj, X, d)
    return all(w in covered for w in W)


def is_connected(G: Graph, X: Iterable[int]) -> bool:
    """Whether ``G[X]`` is connected (the empty set counts as connected)."""
    X = check_set(G, X)
    if not X:
        return True
    removed = frozenset(range(G.n)) - X
    start = next(iter(X))
    return len(_bfs(G.adj, (start,), G.n, removed)) == len(X)


def all_pairs_distances(G: Graph, limit: int = ALL_PAIRS_LIMIT) -> list[dict[int, int]]:
    """Opt-in all-pairs table; refuses graphs larger than ``limit`` vertices."""
    if G.n > limit:
        raise GuardError(f"all-pairs table refused for n={G.n} > {limit}")
    return [_bfs(G.adj, (v,), G.n) for v in range(G.n)]
