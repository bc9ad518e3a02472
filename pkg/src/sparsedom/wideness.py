"""Bottleneck / scattered-set extraction and its brute-force oracles.

:func:`find_scattered` runs the staged construction: for ``i = 0..r-1`` it
takes an independent set of the auxiliary "touching balls" graph on ``W_i``,
pumps high-traffic vertices into the bottleneck, and keeps a subset that is
``(i+1)``-scattered in ``G - S_{i+1}``.  Whatever it returns has been checked
against the definition; it never hands out an invalid witness.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .bounds import DEFAULT_CAP, b_h, c_h
from .errors import GuardError, InputError
from .graph_core import Graph, _bfs, check_set, delete, is_scattered

log = logging.getLogger(__name__)

EXACT_FALLBACK_N = 16


@dataclass(frozen=True)
class ExtractionState:
    stage: int
    S: frozenset[int]
    W: frozenset[int]
    condition4: bool | None = None


@dataclass(frozen=True)
class ScatteredWitness:
    """``A`` is ``r``-scattered in ``host - S``."""

    S: frozenset[int]
    A: frozenset[int]
    r: int
    host: Graph = field(repr=False, compare=False)
    stages: tuple[ExtractionState, ...] = field(default=(), repr=False, compare=False)

    def verify(self, W: Iterable[int] | None = None, max_bottleneck: int | None = None) -> None:
        """Raise ``AssertionError`` unless the witness satisfies its invariants."""
        assert not (self.S & self.A), "bottleneck meets the scattered set"
        if W is not None:
            assert self.A <= frozenset(W), "scattered set escapes W"
        if max_bottleneck is not None:
            assert len(self.S) <= max_bottleneck, "bottleneck too large"
        sub = delete(self.host, self.S)
        assert is_scattered(sub.graph, sub.to_new(self.A), self.r), "A is not scattered in G - S"


class ScatterFailure(Exception):
    """No witness was produced; ``stage`` is where the surviving set ran out."""

    def __init__(self, stage: int, reason: str):
        super().__init__(f"stage {stage}: {reason}")
        self.stage = stage
        self.reason = reason


def greedy_independent(order: Iterable[int], nbrs: dict[int, set[int]]) -> list[int]:
    """Greedy independent set, lowest degree first (ties by id)."""
    taken: list[int] = []
    blocked: set[int] = set()
    for v in sorted(order, key=lambda u: (len(nbrs[u]), u)):
        if v not in blocked:
            taken.append(v)
            blocked.add(v)
            blocked.update(nbrs[v])
    return sorted(taken)


def greedy_scattered(G: Graph, cands: Iterable[int], r: int, removed=frozenset()) -> list[int]:
    """Ascending-id packing: keep a candidate if its ``r``-ball avoids all kept balls."""
    marked: set[int] = set()
    out = []
    for u in sorted(cands):
        if u in removed:
            continue
        b = _bfs(G.adj, (u,), r, removed)
        if marked.isdisjoint(b):
            out.append(u)
            marked.update(b)
    return out


def _touching_graph(G: Graph, W: list[int], i: int, removed) -> dict[int, set[int]]:
    """Join u, v in W when some edge of G links their i-balls in G - removed."""
    owner: dict[int, int] = {}
    for u in W:
        for x in _bfs(G.adj, (u,), i, removed):
            owner[x] = u
    nbrs: dict[int, set[int]] = {u: set() for u in W}
    for x, u in owner.items():
        for y in G.adj[x]:
            o = owner.get(y)
            if o is not None and o != u:
                nbrs[u].add(o)
    return nbrs


def _condition4(G: Graph, S: frozenset[int], W: Iterable[int], i: int) -> bool:
    # Read as: every bottleneck vertex has a neighbour in the i-ball of every member of W.
    for u in W:
        b = _bfs(G.adj, (u,), i, S)
        for v in S:
            if not any(w in b for w in G.adj[v]):
                return False
    return True


def find_scattered(
    G: Graph,
    W: Iterable[int],
    r: int,
    m: int,
    h: int,
    mode: Literal["paper", "practical"] = "practical",
    shrink_factor: float = 0.25,
    floor: int = 1,
    exact_fallback_n: int = EXACT_FALLBACK_N,
    check_condition4: bool = False,
    colors: str = "h+1",
) -> ScatteredWitness:
    """Compute ``S`` with ``|S| <= h-2`` and ``A ⊆ W``, ``|A| >= m``, ``A``
    ``r``-scattered in ``G - S``.

    In ``paper`` mode a vertex is pumped into the bottleneck only when it lies
    in the ``(i+1)``-balls of more than ``b_h^{h-2-j}(c_h^{r-i-1}(m))`` members
    of the current independent set.  In ``practical`` mode the threshold is
    ``max(shrink_factor * |I_j|, floor)``; every pumping prefix is scored and
    the largest scattered subset wins, the final set is re-packed directly
    from ``W - S`` when that is larger, and on graphs with at most
    ``exact_fallback_n`` vertices a failed heuristic run falls back to
    :func:`brute_force_scattered`.

    Raises :class:`ScatterFailure` when no witness is found.
    """
    W = check_set(G, W)
    if r < 0 or m < 1 or h < 2:
        raise InputError("need r >= 0, m >= 1, h >= 2")
    practical = mode == "practical"
    S: frozenset[int] = frozenset()
    cur = sorted(W)
    stages = [ExtractionState(0, S, frozenset(cur), True if check_condition4 else None)]
    for i in range(r):
        nbrs = _touching_graph(G, cur, i, S)
        I = greedy_independent(cur, nbrs)
        budget = h - 2 - len(S)
        if practical:
            best_J, best_Z = greedy_scattered(G, I, i + 1, S), []
        Z: list[int] = []
        I_j = I
        for j in range(budget):
            removed = S | frozenset(Z)
            balls = {v: _bfs(G.adj, (v,), i + 1, removed) for v in I_j}
            counts = Counter(x for b in balls.values() for x in b)
            if not counts:
                break
            z, cnt = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            if practical:
                threshold = max(shrink_factor * len(I_j), floor)
            else:
                threshold = b_h(h, c_h(h, m, r - i - 1, colors, DEFAULT_CAP), h - 2 - j, colors)
            if not cnt > threshold:
                break
            Z.append(z)
            I_j = [v for v in I_j if v != z and z in balls[v]]
            if practical:
                J = greedy_scattered(G, I_j, i + 1, S | frozenset(Z))
                if len(J) > len(best_J):
                    best_J, best_Z = J, list(Z)
        if practical:
            J, Z = best_J, best_Z
        else:
            J = greedy_scattered(G, I_j, i + 1, S | frozenset(Z))
        S_next = S | frozenset(Z)
        state = ExtractionState(
            i + 1, S_next, frozenset(J),
            _condition4(G, S_next, J, i + 1) if check_condition4 else None,
        )
        _check_stage(G, stages[-1], state, h)
        stages.append(state)
        S, cur = S_next, J
        log.debug("stage %d: |S|=%d |W|=%d", i + 1, len(S), len(cur))
    if practical:
        direct = greedy_scattered(G, W - S, r, S)
        if len(direct) > len(cur):
            cur = direct
    if len(cur) >= m:
        wit = ScatteredWitness(S, frozenset(sorted(cur)[:m]), r, G, tuple(stages))
        wit.verify(W, h - 2)
        return wit
    if practical and G.n <= exact_fallback_n:
        wit = brute_force_scattered(G, W, r, m, h - 2)
        if wit is not None:
            wit.verify(W, h - 2)
            return wit
        raise ScatterFailure(r, "exhaustive search found no witness")
    raise ScatterFailure(r, f"only {len(cur)} of {m} scattered vertices survived")


def _check_stage(G: Graph, prev: ExtractionState, state: ExtractionState, h: int) -> None:
    if not len(state.S) < h - 1:
        raise RuntimeError(f"stage {state.stage}: bottleneck of size {len(state.S)}")
    if not (prev.S <= state.S and state.W <= prev.W):
        raise RuntimeError(f"stage {state.stage}: sequences are not nested")
    if state.S & state.W or not is_scattered(G, state.W, state.stage, state.S):
        raise RuntimeError(f"stage {state.stage}: W_i is not i-scattered in G - S_i")


def brute_force_scattered(
    G: Graph,
    W: Iterable[int],
    r: int,
    m: int,
    s_max: int,
    max_subsets: int = 100_000,
    max_nodes: int = 2_000_000,
) -> ScatteredWitness | None:
    """Exhaustive witness search.

    Bottlenecks are tried by increasing size, lexicographically; for each, the
    lexicographically first ``m``-subset of ``W - S`` whose pairwise distances
    in ``G - S`` exceed ``2r`` is returned.  ``None`` means no witness exists
    with ``|S| <= s_max``.
    """
    W = check_set(G, W)
    n_subsets = sum(math.comb(G.n, i) for i in range(min(s_max, G.n) + 1))
    if n_subsets > max_subsets:
        raise GuardError(f"{n_subsets} bottleneck candidates exceed {max_subsets}")
    nodes = 0
    for size in range(min(s_max, G.n) + 1):
        for S in itertools.combinations(range(G.n), size):
            Sf = frozenset(S)
            cand = sorted(W - Sf)
            if len(cand) < m:
                continue
            pos = {v: k for k, v in enumerate(cand)}
            conflict = []
            for v in cand:
                near = _bfs(G.adj, (v,), 2 * r, Sf)
                conflict.append({pos[u] for u in near if u in pos and u != v})
            chosen: list[int] = []

            def extend(start: int, blocked: frozenset[int]) -> bool:
                nonlocal nodes
                nodes += 1
                if nodes > max_nodes:
                    raise GuardError("scattered-set search exceeded its node budget")
                if len(chosen) == m:
                    return True
                for k in range(start, len(cand)):
                    if len(cand) - k < m - len(chosen):
                        return False
                    if k in blocked:
                        continue
                    chosen.append(k)
                    if extend(k + 1, blocked | conflict[k]):
                        return True
                    chosen.pop()
                return False

            if extend(0, frozenset()):
                return ScatteredWitness(Sf, frozenset(cand[k] for k in chosen), r, G)
    return None


def shallow_clique_minor(G: Graph, h: int, r: int, limit: int = 14) -> bool:
    """Is ``K_h`` a minor of ``G`` at depth ``r``?

    Enumerates every connected vertex set that fits in some radius-``r`` ball
    of ``G``, then searches for ``h`` pairwise disjoint, pairwise adjacent
    ones.  Exponential; refuses graphs with more than ``limit`` vertices.
    """
    if G.n > limit:
        raise GuardError(f"shallow minor search refused for n={G.n} > {limit}")
    if h <= 0:
        return True
    if h > G.n:
        return False
    nmask = [sum(1 << u for u in G.adj[v]) for v in range(G.n)]
    balls = [sum(1 << u for u in _bfs(G.adj, (w,), r)) for w in range(G.n)]
    branch: list[tuple[int, int, int]] = []  # (lowest vertex, mask, neighbourhood mask)
    for mask in range(1, 1 << G.n):
        if not any(mask & ~b == 0 for b in balls):
            continue
        low = (mask & -mask).bit_length() - 1
        seen, frontier, reach = 1 << low, 1 << low, 0
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nmask[v] & mask & ~seen
            seen |= new
            frontier |= new
        if seen != mask:
            continue
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            reach |= nmask[v]
        branch.append((low, mask, reach))
    branch.sort()

    def search(start: int, used: int, chosen: list[tuple[int, int]], need: int) -> bool:
        if need == 0:
            return True
        for idx in range(start, len(branch)):
            _, mask, reach = branch[idx]
            if mask & used:
                continue
            if all(reach & other for other, _ in chosen):
                chosen.append((mask, reach))
                if search(idx + 1, used | mask, chosen, need - 1):
                    return True
                chosen.pop()
        return False

    return search(0, 0, [], h)
