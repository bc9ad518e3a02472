"""Connected, d-connected, efficient and Roman domination."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .bounds import ClassProfile
from .domination import (
    Answer,
    DominationInstance,
    SolveReport,
    core_masks,
    default_core_guard,
    iter_partitions,
    lowest,
    mask_members,
    solve,
    to_mask,
)
from .errors import GuardError, InputError
from .graph_core import Graph, _bfs, check_set, dominates, is_connected, multi_ball, power
from .wideness import ScatterFailure, find_scattered

TREE_GUARD = 8
CONNECTED_K_GUARD = 8
CLI_CONNECTED_K_GUARD = 6


@dataclass(frozen=True)
class AbstractTree:
    """A labelled tree on ``0..k-1``."""

    k: int
    edges: tuple[tuple[int, int], ...]

    def neighbours(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return out


def prufer_decode(seq: Sequence[int], k: int) -> AbstractTree:
    degree = [1] * k
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(k) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    if k >= 2:
        a, b = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.append((a, b))
    return AbstractTree(k, tuple(sorted(edges)))


def enumerate_trees(k: int, guard: int = TREE_GUARD) -> Iterator[AbstractTree]:
    """Every labelled tree on ``k`` vertices once, in Prüfer-sequence order."""
    if k < 1:
        raise InputError("trees need at least one vertex")
    if k > guard:
        raise GuardError(f"tree enumeration refused for k={k} > {guard}")
    if k == 1:
        yield AbstractTree(1, ())
        return
    for seq in itertools.product(range(k), repeat=k - 2):
        yield prufer_decode(seq, k)


@lru_cache(maxsize=None)
def _trees(k: int) -> tuple[AbstractTree, ...]:
    return tuple(enumerate_trees(k))


def spanning_trees(k: int, edges: Sequence[tuple[int, int]]) -> Iterator[AbstractTree]:
    """Spanning trees of the graph ``(range(k), edges)``, each exactly once."""
    if k == 1:
        yield AbstractTree(1, ())
        return
    edges = sorted(edges)
    chosen: list[tuple[int, int]] = []

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def connectable(start: int) -> bool:
        parent = list(range(k))
        for a, b in itertools.chain(chosen, edges[start:]):
            ra, rb = find(parent, a), find(parent, b)
            if ra != rb:
                parent[ra] = rb
        return len({find(parent, v) for v in range(k)}) == 1

    def rec(i: int) -> Iterator[AbstractTree]:
        if len(chosen) == k - 1:
            yield AbstractTree(k, tuple(chosen))
            return
        if i == len(edges) or not connectable(i):
            return
        a, b = edges[i]
        parent = list(range(k))
        for x, y in chosen:
            parent[find(parent, x)] = find(parent, y)
        if find(parent, a) != find(parent, b):
            chosen.append((a, b))
            yield from rec(i + 1)
            chosen.pop()
        yield from rec(i + 1)

    yield from rec(0)


def _tree_select(
    G: Graph, X_list: Sequence[Iterable[int]], allow_equal: bool
) -> list[int] | None:
    """Pick one vertex per set so that tree-adjacent picks are adjacent in ``G``
    (or equal, when ``allow_equal``).

    Trees using a pair of sets with no compatible vertices cannot succeed, so
    only spanning trees of the set-compatibility graph are tried; for up to
    six sets that is a filter over the Prüfer enumeration.
    """
    k = len(X_list)
    if k == 0:
        return []
    X = [set(x) for x in X_list]
    adj = [set(row) for row in G.adj]

    def supported(v: int, target: set[int]) -> bool:
        return (allow_equal and v in target) or not adj[v].isdisjoint(target)

    compat = {
        (i, j)
        for i, j in itertools.combinations(range(k), 2)
        if any(supported(x, X[j]) for x in X[i])
    }
    if k <= 6:
        trees = (t for t in _trees(k) if compat.issuperset(t.edges))
    else:
        trees = spanning_trees(k, sorted(compat))
    for tree in trees:
        nb = tree.neighbours()
        Y = [{x for x in X[i] if all(supported(x, X[j]) for j in nb[i])} for i in range(k)]
        changed = True
        while changed and all(Y):
            changed = False
            for i in range(k):
                for j in nb[i]:
                    drop = {v for v in Y[i] if not supported(v, Y[j])}
                    if drop:
                        Y[i] -= drop
                        changed = True
        if not all(Y):
            continue
        pick = [-1] * k
        pick[0] = min(Y[0])
        stack = [0]
        seen = {0}
        while stack:
            p = stack.pop()
            for c in nb[p]:
                if c in seen:
                    continue
                seen.add(c)
                opts = [y for y in Y[c] if y == pick[p] and allow_equal or y in adj[pick[p]]]
                pick[c] = min(opts)
                stack.append(c)
        if (allow_equal or len(set(pick)) == k) and is_connected(G, pick):
            return pick
    return None


def select_connected(G: Graph, X_list: Sequence[Iterable[int]]) -> frozenset[int] | None:
    """Choose ``x_i ∈ X_i`` (sets pairwise disjoint) with ``G[x_1..x_k]`` connected.

    For each labelled tree on the set indices, prune each ``X_i`` to the
    vertices with a neighbour in every tree-adjacent set, iterate to a fixed
    point, then read a selection off the tree from the root down.  The
    selection is checked for connectivity before it is returned.
    """
    sets = [check_set(G, x) for x in X_list]
    for a, b in itertools.combinations(range(len(sets)), 2):
        if sets[a] & sets[b]:
            raise InputError(f"sets {a} and {b} are not disjoint")
    pick = _tree_select(G, sets, allow_equal=False)
    return None if pick is None else frozenset(pick)


def _relation_graph(G: Graph, d: int, distance_connected: bool) -> Graph:
    if not distance_connected:
        return G
    return power(G, d) if d >= 1 else Graph.empty(G.n)


def solve_connected(
    inst: DominationInstance,
    guard: int | None = None,
    construction: str = "slots",
    exact_k: bool = False,
    distance_connected: bool = False,
    k_guard: int = CONNECTED_K_GUARD,
) -> frozenset[int] | None:
    """At most ``k`` candidates that ``d``-dominate ``W`` and induce a connected graph.

    Each partition of ``W`` into blocks with nonempty dominator sets ``X_i``
    gives one slot per block; ``0..k-l`` extra connector slots range over all
    candidates.  A tree-shaped selection in which tree neighbours are equal
    or adjacent is a connected dominating set of size at most ``k``, and every
    solution arises this way.

    ``construction="paper"`` instead partitions the block indices and selects
    from ``Y_i = ∩_{j∈B_i} N_d(X_j) - ∪_{j∉B_i} N_d(X_j)``; it is kept for
    comparison and is not complete.

    With ``distance_connected`` connectivity is measured in ``G^d``.
    """
    guard = default_core_guard() if guard is None else guard
    if len(inst.W) > guard:
        raise GuardError(f"|W|={len(inst.W)} exceeds the small-core guard {guard}")
    if inst.k > k_guard:
        raise GuardError(f"k={inst.k} exceeds the connected-variant guard {k_guard}")
    rel = _relation_graph(inst.G, inst.d, distance_connected)
    cands = sorted(inst.candidates)
    _, balls = core_masks(inst)
    seen: set[tuple[int, ...]] = set()

    def max_extra(blocks: int) -> int:
        # every candidate is a target and dominates itself, so a solution
        # vertex can always own a block: connector slots are never needed
        if inst.candidates <= inst.W:
            return 0
        return inst.k - blocks

    for _, masks in iter_partitions(balls, inst.k):
        key = tuple(sorted(masks))
        if key in seen:
            continue
        seen.add(key)
        blocks = [mask_members(mk) for mk in masks]
        if construction == "paper":
            out = _paper_select(inst, rel, blocks)
            if out is not None:
                return _finish(inst, rel, out, exact_k)
            continue
        for extra in range(max_extra(len(blocks)) + 1):
            pick = _tree_select(rel, blocks + [cands] * extra, allow_equal=True)
            if pick is not None:
                out = _finish(inst, rel, frozenset(pick), exact_k)
                if out is not None:
                    return out
    return None


def _paper_select(inst: DominationInstance, rel: Graph, blocks: list[list[int]]) -> frozenset[int] | None:
    near = [to_mask(multi_ball(inst.G, X, inst.d)) for X in blocks]
    cmask = to_mask(inst.candidates)
    l = len(blocks)
    for grouping in _set_partitions(l):
        Y = []
        for grp in grouping:
            inside = cmask
            for j in grp:
                inside &= near[j]
            for j in range(l):
                if j not in grp:
                    inside &= ~near[j]
            Y.append(mask_members(inside))
        if not all(Y):
            continue
        pick = _tree_select(rel, Y, allow_equal=False)
        if pick is not None and dominates(inst.G, pick, inst.W, inst.d):
            return frozenset(pick)
    return None


def _set_partitions(n: int) -> Iterator[list[list[int]]]:
    for blocks, _ in iter_partitions([1] * n, n):
        yield [list(b) for b in blocks]


def _finish(inst: DominationInstance, rel: Graph, X: frozenset[int], exact_k: bool) -> frozenset[int] | None:
    if exact_k and len(X) < inst.k:
        X = _grow_connected(rel, X, inst.candidates, inst.k)
        if X is None:
            return None
    assert inst.is_solution(X) and is_connected(rel, X)
    return X


def _grow_connected(rel: Graph, X: frozenset[int], cands: frozenset[int], k: int) -> frozenset[int] | None:
    out = set(X)
    frontier = sorted(X)
    while len(out) < k and frontier:
        nxt = []
        for v in frontier:
            for u in rel.adj[v]:
                if u in cands and u not in out and len(out) < k:
                    out.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(out) if len(out) == k else None


def solve_d_connected(inst: DominationInstance, **kw) -> frozenset[int] | None:
    """Like :func:`solve_connected`, with connectivity taken in ``G^d``."""
    return solve_connected(inst, distance_connected=True, **kw)


def brute_force_connected(
    inst: DominationInstance,
    distance_connected: bool = False,
    max_subsets: int = 2_000_000,
) -> frozenset[int] | None:
    """Smallest connected dominating subset by plain enumeration."""
    rel = _relation_graph(inst.G, inst.d, distance_connected)
    cands = sorted(inst.candidates)
    total = sum(math.comb(len(cands), s) for s in range(min(inst.k, len(cands)) + 1))
    if total > max_subsets:
        raise GuardError(f"{total} subsets exceed the budget {max_subsets}")
    for size in range(min(inst.k, len(cands)) + 1):
        for X in itertools.combinations(cands, size):
            if dominates(inst.G, X, inst.W, inst.d) and is_connected(rel, X):
                return frozenset(X)
    return None


def solve_connected_driver(
    inst: DominationInstance,
    profile: ClassProfile | None = None,
    mode: str = "practical",
    guard: int | None = None,
    s_cap: int = 2,
    exact_k: bool = False,
    distance_connected: bool = False,
    k_guard: int = CONNECTED_K_GUARD,
) -> SolveReport:
    """Witness reductions followed by the connected small core."""
    guard = default_core_guard() if guard is None else guard
    rel = _relation_graph(inst.G, inst.d, distance_connected)

    def core(I: DominationInstance):
        return solve_connected(
            I, guard, exact_k=exact_k, distance_connected=distance_connected, k_guard=k_guard
        )

    def fallback(I: DominationInstance):
        X = brute_force_connected(I, distance_connected)
        return X if X is None or not exact_k else _finish(I, rel, X, True)

    def verify(I: DominationInstance, X) -> bool:
        return I.is_solution(X) and is_connected(rel, X) and (not exact_k or len(X) == I.k)

    return solve(inst, profile, mode, guard, s_cap, exact_k, core, fallback, verify)


def is_efficient(G: Graph, X: Iterable[int]) -> bool:
    """Dominating set whose closed neighbourhoods are pairwise disjoint."""
    X = check_set(G, X)
    seen: set[int] = set()
    for x in X:
        closed = {x, *G.adj[x]}
        if not seen.isdisjoint(closed):
            return False
        seen |= closed
    return len(seen) == G.n


def _efficient_core(inst: DominationInstance, near2: list[int]) -> frozenset[int] | None:
    _, balls = core_masks(inst)
    k = inst.k
    for _, masks in iter_partitions(balls, k):
        if len(masks) != k:
            continue
        pick: list[int] = []

        def choose(i: int, forbidden: int) -> bool:
            if i == k:
                return True
            for x in mask_members(masks[i] & ~forbidden):
                pick.append(x)
                if choose(i + 1, forbidden | near2[x]):
                    return True
                pick.pop()
            return False

        if choose(0, 0):
            return frozenset(pick)
    return None


def brute_force_efficient(G: Graph, k: int, max_nodes: int = 2_000_000) -> frozenset[int] | None:
    """Exact search: branch on the lowest undominated vertex's closed neighbourhood."""
    closed = [to_mask([v, *G.adj[v]]) for v in range(G.n)]
    full = (1 << G.n) - 1
    nodes = 0
    chosen: list[int] = []

    def search(covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise GuardError("efficient-domination search exceeded its node budget")
        if covered == full:
            return len(chosen) == k
        if len(chosen) == k:
            return False
        u = lowest(full & ~covered)
        for c in mask_members(closed[u]):
            if closed[c] & covered == 0:
                chosen.append(c)
                if search(covered | closed[c]):
                    return True
                chosen.pop()
        return False

    return frozenset(chosen) if search(0) else None


def solve_efficient(
    G: Graph,
    k: int,
    profile: ClassProfile | None = None,
    mode: str = "practical",
    guard: int | None = None,
    s_cap: int = 2,
) -> SolveReport:
    """Exactly ``k`` vertices, dominating ``V`` with pairwise distance at least 3."""
    if k < 0:
        raise InputError("k must be nonnegative")
    inst = DominationInstance.full(G, k, 1)
    near2 = [to_mask(_bfs(G.adj, (v,), 2)) for v in range(G.n)]
    return solve(
        inst, profile, mode, guard, s_cap,
        core=lambda I: _efficient_core(I, near2),
        fallback=lambda I: brute_force_efficient(G, k),
        verify=lambda I, X: len(X) == k and is_efficient(G, X),
    )


@dataclass(frozen=True)
class RomanLabeling:
    labels: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.labels)

    def is_valid(self, G: Graph) -> bool:
        if len(self.labels) != G.n or any(x not in (0, 1, 2) for x in self.labels):
            return False
        return all(
            lab != 0 or any(self.labels[u] == 2 for u in G.adj[v])
            for v, lab in enumerate(self.labels)
        )

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.labels))


def _roman_base(
    G: Graph, twos: frozenset[int], req: frozenset[int], budget: int, max_subsets: int
) -> tuple[frozenset[int], frozenset[int]] | None:
    free = [v for v in range(G.n) if v not in twos]
    top = budget // 2
    total = sum(math.comb(len(free), t) for t in range(top + 1))
    if total > max_subsets:
        raise GuardError(f"{total} label supports exceed the budget {max_subsets}")
    for t in range(top + 1):
        for T2 in itertools.combinations(free, t):
            covered = set(T2)
            for x in T2:
                covered.update(G.adj[x])
            ones = req - covered
            if 2 * t + len(ones) <= budget:
                return twos | frozenset(T2), frozenset(ones)
    return None


def solve_roman(
    G: Graph,
    k: int,
    profile: ClassProfile | None = None,
    mode: str = "practical",
    s_cap: int = 2,
    radius: int = 2,
    max_subsets: int = 2_000_000,
) -> SolveReport:
    """Roman domination of weight at most ``k`` by bounded branching.

    Vertices already adjacent to a 2 leave the requirement set.  If the
    remaining requirements contain a set ``A`` of ``2b+1`` vertices that is
    ``radius``-scattered after deleting a bottleneck ``S`` (``b`` = remaining
    budget), some vertex of ``S`` adjacent to ``A`` must carry label 2 in any
    labelling within budget, so the search branches over those.  Otherwise
    it enumerates the remaining 2-labels directly and labels every uncovered
    requirement 1.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    branches = 0

    def rec(twos: frozenset[int], req: frozenset[int], b: int):
        nonlocal branches
        if not req:
            return twos, frozenset()
        wit = None
        if mode == "practical" or profile is None:
            for s_try in range(s_cap + 1):
                try:
                    wit = find_scattered(G, req, radius, 2 * b + 1, s_try + 2)
                    break
                except ScatterFailure:
                    continue
        else:
            try:
                wit = find_scattered(G, req, radius, 2 * b + 1, profile.h(radius), mode="paper")
            except ScatterFailure:
                wit = None
        if wit is None:
            return _roman_base(G, twos, req, b, max_subsets)
        if b < 2:
            return None
        for s in sorted(wit.S - twos):
            if wit.A.isdisjoint(G.adj[s]):
                continue
            branches += 1
            covered = {s, *G.adj[s]}
            res = rec(twos | {s}, req - covered, b - 2)
            if res is not None:
                return res
        return None

    try:
        res = rec(frozenset(), frozenset(range(G.n)), k)
    except GuardError as exc:
        return SolveReport(Answer.INCONCLUSIVE, None, [], G.n, str(exc))
    if res is None:
        return SolveReport(Answer.NO, None, [], G.n, f"{branches} branches")
    twos, ones = res
    labels = tuple(2 if v in twos else 1 if v in ones else 0 for v in range(G.n))
    lab = RomanLabeling(labels)
    assert lab.is_valid(G) and lab.weight <= k
    return SolveReport(Answer.YES, lab, [], G.n, f"{branches} branches")


def brute_force_roman(G: Graph, k: int, max_subsets: int = 2_000_000) -> RomanLabeling | None:
    """Cheapest labelling over every choice of 2-labels; ``None`` if it exceeds ``k``."""
    res = _roman_base(G, frozenset(), frozenset(range(G.n)), k, max_subsets)
    if res is None:
        return None
    twos, ones = res
    return RomanLabeling(tuple(2 if v in twos else 1 if v in ones else 0 for v in range(G.n)))
