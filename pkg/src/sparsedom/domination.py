"""Distance-d domination: exact core solver, witness reduction and the driver.

The driver shrinks the target set ``W`` one vertex at a time.  Each step finds
a bottleneck ``S`` and a ``d``-scattered set ``A ⊆ W`` in ``G - S`` with
``|A| >= (k+2)(d+1)^{|S|}``; by pigeonhole ``k+2`` members of ``A`` share a
truncated distance vector to ``S`` and the first of them can be dropped from
``W`` without changing which sets of at most ``k`` vertices dominate it.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

from .bounds import ClassProfile
from .errors import GuardError, InputError
from .graph_core import Graph, _bfs, check_set, check_vertex, dominates
from .wideness import ScatterFailure, ScatteredWitness, find_scattered

log = logging.getLogger(__name__)

INF = math.inf
DEFAULT_CORE_GUARD = 16
GUARD_ENV = "SPARSE_DOMSET_GUARD"


def default_core_guard() -> int:
    raw = os.environ.get(GUARD_ENV)
    return int(raw) if raw else DEFAULT_CORE_GUARD


@dataclass(frozen=True)
class DominationInstance:
    """Find at most ``k`` vertices of ``candidates`` that ``d``-dominate ``W``."""

    G: Graph
    W: frozenset[int]
    k: int
    d: int
    candidates: frozenset[int] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "W", check_set(self.G, self.W))
        cands = range(self.G.n) if self.candidates is None else self.candidates
        object.__setattr__(self, "candidates", check_set(self.G, cands))
        if self.k < 0 or self.d < 0:
            raise InputError("k and d must be nonnegative")

    @classmethod
    def full(cls, G: Graph, k: int, d: int) -> "DominationInstance":
        return cls(G, frozenset(range(G.n)), k, d)

    def with_targets(self, W: Iterable[int]) -> "DominationInstance":
        return DominationInstance(self.G, frozenset(W), self.k, self.d, self.candidates)

    def is_solution(self, X: Iterable[int]) -> bool:
        X = frozenset(X)
        return (
            len(X) <= self.k
            and X <= self.candidates
            and dominates(self.G, X, self.W, self.d)
        )


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ReductionStep:
    w: int
    s_size: int
    a_size: int


@dataclass
class SolveReport:
    answer: Answer
    solution: object = None
    trace: list[ReductionStep] = field(default_factory=list)
    remaining: int = 0
    note: str = ""

    @property
    def max_s(self) -> int:
        return max((st.s_size for st in self.trace), default=0)


def distance_vector(G: Graph, a: int, S: Sequence[int], d: int) -> tuple[float, ...]:
    """Distances from ``a`` to each ``t`` in ``S`` (in ``G``), ``INF`` beyond ``d``."""
    check_vertex(G, a)
    if a in S:
        raise InputError(f"vertex {a} belongs to the bottleneck")
    dist = _bfs(G.adj, (a,), d)
    return tuple(dist.get(t, INF) for t in S)


def iter_partitions(ball_masks: Sequence[int], k: int) -> Iterator[tuple[list[list[int]], list[int]]]:
    """Set partitions of ``range(len(ball_masks))`` into at most ``k`` blocks.

    Restricted-growth-string order; a branch is cut as soon as the
    intersection of its block's ball masks is empty.  Yields
    ``(blocks, block_masks)``; the lists are reused between yields.
    """
    n = len(ball_masks)
    blocks: list[list[int]] = []
    masks: list[int] = []

    def rec(i: int) -> Iterator[tuple[list[list[int]], list[int]]]:
        if i == n:
            yield blocks, masks
            return
        bm = ball_masks[i]
        for j in range(len(blocks)):
            nm = masks[j] & bm
            if nm:
                old = masks[j]
                masks[j] = nm
                blocks[j].append(i)
                yield from rec(i + 1)
                blocks[j].pop()
                masks[j] = old
        if len(blocks) < k and bm:
            blocks.append([i])
            masks.append(bm)
            yield from rec(i + 1)
            blocks.pop()
            masks.pop()

    yield from rec(0)


def to_mask(X: Iterable[int]) -> int:
    out = 0
    for x in X:
        out |= 1 << x
    return out


def mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def core_masks(inst: DominationInstance) -> tuple[list[int], list[int]]:
    """Sorted targets and, for each, its ``d``-ball restricted to the candidates."""
    order = sorted(inst.W)
    cmask = to_mask(inst.candidates)
    return order, [to_mask(_bfs(inst.G.adj, (w,), inst.d)) & cmask for w in order]


def _pad(inst: DominationInstance, X: set[int]) -> frozenset[int] | None:
    for c in sorted(inst.candidates):
        if len(X) >= inst.k:
            break
        X.add(c)
    return frozenset(X) if len(X) == inst.k else None


def solve_small_core(
    inst: DominationInstance, guard: int | None = None, exact_k: bool = False
) -> frozenset[int] | None:
    """Exhaustive solver over partitions of ``W``.

    For every partition of ``W`` into at most ``k`` blocks, the vertices that
    dominate a whole block are the intersection of the blocks' ``d``-balls.
    The first partition whose intersections are all nonempty yields the
    solution ``{min X_1, ..., min X_l}``.
    """
    guard = default_core_guard() if guard is None else guard
    if len(inst.W) > guard:
        raise GuardError(
            f"|W|={len(inst.W)} exceeds the small-core guard {guard}; use solve() to reduce first"
        )
    _, balls = core_masks(inst)
    for _, masks in iter_partitions(balls, inst.k):
        X = {lowest(mk) for mk in masks}
        out = _pad(inst, X) if exact_k else frozenset(X)
        if out is None:
            return None
        assert inst.is_solution(out)
        return out
    return None


def reduce_witness(inst: DominationInstance, witness: ScatteredWitness) -> int:
    """Return a vertex ``w`` of ``W`` that can be dropped without changing the
    answer for any ``X`` with ``|X| <= k``."""
    k, d = inst.k, inst.d
    S = sorted(witness.S)
    A = sorted(witness.A)
    if witness.r != d:
        raise InputError(f"witness radius {witness.r} differs from d={d}")
    if witness.host is not inst.G and witness.host != inst.G:
        raise InputError("witness was computed on a different graph")
    if not set(A) <= inst.W:
        raise InputError("witness scattered set is not inside W")
    need = (k + 2) * (d + 1) ** len(S)
    if len(A) < need:
        raise InputError(f"|A|={len(A)} below (k+2)(d+1)^|S| = {need}")
    try:
        witness.verify()
    except AssertionError as exc:
        raise InputError(f"invalid witness: {exc}") from None
    # one truncated BFS per bottleneck vertex
    dist = [_bfs(inst.G.adj, (t,), d) for t in S]
    classes: dict[tuple[float, ...], list[int]] = {}
    for a in A:
        classes.setdefault(tuple(row.get(a, INF) for row in dist), []).append(a)
    for vec in sorted(classes):
        if len(classes[vec]) >= k + 2:
            return classes[vec][0]
    raise AssertionError("pigeonhole class not found")  # unreachable given |A| >= need


def brute_force_min_domset(
    G: Graph,
    W: Iterable[int],
    d: int,
    k_max: int,
    candidates: Iterable[int] | None = None,
    max_nodes: int = 2_000_000,
) -> frozenset[int] | None:
    """Minimum ``X ⊆ candidates`` with ``|X| <= k_max`` that ``d``-dominates ``W``.

    Iterative deepening on the size bound.  Each node branches on the
    undominated target with the fewest possible dominators and prunes with
    ``ceil(|undominated| / largest ball)``.  Raises :class:`GuardError` when
    the search exceeds ``max_nodes``.
    """
    W = check_set(G, W)
    cands = sorted(check_set(G, range(G.n) if candidates is None else candidates))
    wmask = to_mask(W)
    cover = {c: to_mask(_bfs(G.adj, (c,), d)) & wmask for c in cands}
    dominators: dict[int, list[int]] = {w: [] for w in W}
    for c in cands:
        for w in mask_members(cover[c]):
            dominators[w].append(c)
    best_cover = max((m.bit_count() for m in cover.values()), default=0)
    nodes = 0

    def search(U: int, budget: int, chosen: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise GuardError(f"oracle search exceeded {max_nodes} nodes")
        if not U:
            return True
        if budget == 0 or best_cover * budget < U.bit_count():
            return False
        w = min(mask_members(U), key=lambda u: (len(dominators[u]), u))
        opts = sorted(dominators[w], key=lambda c: (-(cover[c] & U).bit_count(), c))
        for c in opts:
            chosen.append(c)
            if search(U & ~cover[c], budget - 1, chosen):
                return True
            chosen.pop()
        return False

    for size in range(k_max + 1):
        chosen: list[int] = []
        if search(wmask, size, chosen):
            return frozenset(chosen)
    return None


CoreSolver = Callable[[DominationInstance], object]


def _oracle_core(inst: DominationInstance, exact_k: bool = False) -> frozenset[int] | None:
    X = brute_force_min_domset(inst.G, inst.W, inst.d, inst.k, inst.candidates)
    if X is not None and exact_k:
        return _pad(inst, set(X))
    return X


def solve(
    inst: DominationInstance,
    profile: ClassProfile | None = None,
    mode: str = "practical",
    guard: int | None = None,
    s_cap: int = 2,
    exact_k: bool = False,
    core: CoreSolver | None = None,
    fallback: CoreSolver | None = None,
    verify: Callable[[DominationInstance, object], bool] | None = None,
) -> SolveReport:
    """Kernelize ``W`` by witness reductions, then solve the small core.

    ``practical`` mode tries bottleneck sizes ``0..s_cap`` for every step and
    trusts nothing but the verified witness; when no witness is found and
    ``W`` is still above the guard, the exhaustive ``fallback`` runs (under its
    own budget) or the report is inconclusive.  ``paper`` mode follows the
    published driver: reduce while ``|W| > N_C(d, (k+2)(d+1)^s)``.

    ``core``/``fallback``/``verify`` let the connected and efficient variants
    reuse the same loop.
    """
    guard = default_core_guard() if guard is None else guard
    core = core or (lambda I: solve_small_core(I, guard, exact_k))
    fallback = fallback or (lambda I: _oracle_core(I, exact_k))
    verify = verify or (lambda I, X: I.is_solution(X) and (not exact_k or len(X) == I.k))
    k, d = inst.k, inst.d
    W = set(inst.W)
    trace: list[ReductionStep] = []

    def step(wit: ScatteredWitness) -> None:
        cur = inst.with_targets(W)
        w = reduce_witness(cur, wit)
        W.discard(w)
        trace.append(ReductionStep(w, len(wit.S), len(wit.A)))

    if mode == "paper":
        if profile is None:
            raise InputError("paper mode needs a class profile")
        s = profile.s(d)
        m = (k + 2) * (d + 1) ** s
        N = profile.N(d, m)
        h = profile.h(d)
        while N < len(W):
            try:
                step(find_scattered(inst.G, W, d, m, h, mode="paper"))
            except (ScatterFailure, InputError) as exc:
                return SolveReport(Answer.INCONCLUSIVE, None, trace, len(W), str(exc))
    else:
        while len(W) > guard:
            reduced = False
            for s_try in range(s_cap + 1):
                m = (k + 2) * (d + 1) ** s_try
                if m > len(W):
                    break
                try:
                    wit = find_scattered(inst.G, W, d, m, s_try + 2)
                except ScatterFailure:
                    continue
                step(wit)
                reduced = True
                break
            if not reduced:
                break
    log.debug("kernel: %d -> %d targets after %d reductions", len(inst.W), len(W), len(trace))
    reduced_inst = inst.with_targets(W)
    try:
        if len(W) <= guard:
            X = core(reduced_inst)
            note = "small core"
        elif mode == "paper":
            return SolveReport(Answer.INCONCLUSIVE, None, trace, len(W), "core exceeds guard")
        else:
            X = fallback(reduced_inst)
            note = "exhaustive fallback"
    except GuardError as exc:
        return SolveReport(Answer.INCONCLUSIVE, None, trace, len(W), str(exc))
    if X is None:
        return SolveReport(Answer.NO, None, trace, len(W), note)
    if not verify(inst, X):
        raise AssertionError(f"solver produced an invalid solution {X}")
    return SolveReport(Answer.YES, X, trace, len(W), note)
