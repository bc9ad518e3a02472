import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import graphs
from sparsedom.bounds import profile_bounded_degree, profile_from_h
from sparsedom.domination import (
    INF,
    Answer,
    DominationInstance,
    brute_force_min_domset,
    distance_vector,
    iter_partitions,
    reduce_witness,
    solve,
    solve_small_core,
)
from sparsedom.errors import GuardError, InputError
from sparsedom.graph_core import Graph, dominates
from sparsedom.harness.generators import cycle, grid, path, random_max_deg, star
from sparsedom.wideness import ScatteredWitness, find_scattered


def double_star(leaves=8):
    # centres 0 and 1, leaves of 0 are 2..leaves+1, leaves of 1 follow
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(leaves)]
    edges += [(1, 2 + leaves + i) for i in range(leaves)]
    return Graph.from_edges(2 + 2 * leaves, edges)


class TestInstance:
    def test_defaults(self):
        inst = DominationInstance(path(4), {0, 3}, 1, 1)
        assert inst.candidates == frozenset(range(4))
        assert inst.is_solution({1, 2}) is False
        assert DominationInstance(path(4), {0, 3}, 2, 1).is_solution({1, 2})

    def test_rejects(self):
        with pytest.raises(InputError):
            DominationInstance(path(3), {5}, 1, 1)
        with pytest.raises(InputError):
            DominationInstance(path(3), {0}, -1, 1)


class TestDistanceVector:
    def test_path(self):
        G = path(3)  # s=0, a=1, b=2
        assert distance_vector(G, 2, [0], 2) == (2,)
        assert distance_vector(G, 2, [0], 1) == (INF,)

    def test_other_component(self):
        G = Graph.from_edges(5, [(0, 1), (3, 4)])
        assert distance_vector(G, 4, [0, 1], 3) == (INF, INF)

    def test_star(self):
        assert all(distance_vector(star(5), leaf, [0], 1) == (1,) for leaf in range(1, 6))

    def test_member_of_bottleneck(self):
        with pytest.raises(InputError):
            distance_vector(star(3), 0, [0], 1)


class TestPartitions:
    @pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 6)])
    def test_counts_match_stirling(self, n, k):
        full = (1 << n) - 1
        count = sum(1 for _ in iter_partitions([full] * n, k))
        stirling = sum(
            sum((-1) ** i * math.comb(j, i) * (j - i) ** n for i in range(j + 1)) // math.factorial(j)
            for j in range(1, k + 1)
        )
        assert count == stirling


class TestSmallCore:
    def test_star(self):
        assert solve_small_core(DominationInstance.full(star(4), 1, 1)) == {0}

    def test_p9(self):
        assert solve_small_core(DominationInstance.full(path(9), 3, 1)) == {1, 4, 7}
        assert solve_small_core(DominationInstance.full(path(9), 2, 1)) is None
        assert oracles.min_domset_size(path(9), 1) == 3

    def test_empty_targets(self):
        inst = DominationInstance(path(4), (), 2, 1)
        assert solve_small_core(inst) == frozenset()
        assert len(solve_small_core(inst, exact_k=True)) == 2

    def test_exact_k_impossible(self):
        inst = DominationInstance(path(3), range(3), 2, 1, candidates={1})
        assert solve_small_core(inst, exact_k=True) is None

    def test_guard(self):
        with pytest.raises(GuardError, match="solve"):
            solve_small_core(DominationInstance.full(path(20), 7, 1))

    def test_env_guard(self, monkeypatch):
        monkeypatch.setenv("SPARSE_DOMSET_GUARD", "4")
        with pytest.raises(GuardError):
            solve_small_core(DominationInstance.full(path(5), 2, 1))

    @given(graphs(max_n=9), st.integers(0, 4), st.integers(0, 2), st.data())
    def test_matches_oracle(self, G, k, d, data):
        W = data.draw(st.sets(st.integers(0, G.n - 1)))
        reds = data.draw(st.sets(st.integers(0, G.n - 1), min_size=1))
        X = solve_small_core(DominationInstance(G, W, k, d, reds))
        assert (X is not None) == oracles.has_domset(G, k, d, W, reds)
        if X is not None:
            assert len(X) <= k and X <= reds and dominates(G, X, W, d)


class TestReduceWitness:
    def test_star_leaves(self):
        G = star(10)
        inst = DominationInstance(G, range(1, 11), 1, 1)
        wit = ScatteredWitness(frozenset({0}), frozenset(range(1, 11)), 1, G)
        w = reduce_witness(inst, wit)
        assert w == 1
        rest = set(range(1, 11)) - {w}
        for X in itertools.chain([()], ((v,) for v in range(11))):
            assert dominates(G, X, range(1, 11), 1) == dominates(G, X, rest, 1)

    def test_single_class_returns_min(self):
        G = star(6)
        inst = DominationInstance(G, range(1, 7), 1, 1)
        wit = ScatteredWitness(frozenset({0}), frozenset({6, 4, 3, 2, 5, 1}), 1, G)
        assert reduce_witness(inst, wit) == 1

    def test_double_star(self):
        G = double_star(8)
        W = set(range(2, 18))
        inst = DominationInstance(G, W, 2, 1)
        wit = ScatteredWitness(frozenset({0, 1}), frozenset(W), 1, G)
        w = reduce_witness(inst, wit)
        for size in range(3):
            for X in itertools.combinations(range(G.n), size):
                assert dominates(G, X, W, 1) == dominates(G, X, W - {w}, 1)

    def test_precondition(self):
        G = star(5)
        inst = DominationInstance(G, range(1, 6), 1, 1)
        with pytest.raises(InputError):  # 5 < (1+2)*2
            reduce_witness(inst, ScatteredWitness(frozenset({0}), frozenset(range(1, 6)), 1, G))
        with pytest.raises(InputError):  # radius mismatch
            reduce_witness(inst, ScatteredWitness(frozenset({0}), frozenset(range(1, 6)), 2, G))
        with pytest.raises(InputError):  # not scattered without the centre
            reduce_witness(DominationInstance(G, range(6), 0, 1),
                           ScatteredWitness(frozenset(), frozenset({1, 2}), 1, G))

    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_random_reductions_are_sound(self, seed):
        rng = random.Random(seed)
        G = random_max_deg(rng.randint(8, 14), 3, 0.3, seed=seed)
        k, d = rng.randint(0, 2), rng.randint(1, 2)
        W = frozenset(range(G.n))
        for s in range(3):
            m = (k + 2) * (d + 1) ** s
            try:
                wit = find_scattered(G, W, d, m, s + 2)
            except Exception:
                continue
            w = reduce_witness(DominationInstance(G, W, k, d), wit)
            assert oracles.has_domset(G, k, d, W) == oracles.has_domset(G, k, d, W - {w})
            break


class TestBruteForce:
    def test_p5(self):
        assert brute_force_min_domset(path(5), range(5), 1, 5) == {1, 3}

    def test_empty(self):
        assert brute_force_min_domset(path(5), (), 1, 0) == frozenset()

    def test_c6(self):
        assert brute_force_min_domset(cycle(6), range(6), 1, 1) is None

    def test_candidates(self):
        assert brute_force_min_domset(path(5), range(5), 1, 3, candidates={0, 2, 4}) == {0, 2, 4}

    def test_budget(self):
        with pytest.raises(GuardError):
            brute_force_min_domset(grid(5, 5), range(25), 1, 6, max_nodes=50)

    @given(graphs(max_n=10), st.integers(0, 2))
    def test_minimum(self, G, d):
        X = brute_force_min_domset(G, range(G.n), d, G.n)
        assert len(X) == oracles.min_domset_size(G, d)


class TestSolve:
    def test_star_100(self):
        rep = solve(DominationInstance.full(star(100), 1, 1))
        assert rep.answer is Answer.YES and rep.solution == {0}
        assert len(rep.trace) == 101 - 16 and rep.remaining == 16
        assert rep.max_s == 1

    def test_p100(self):
        assert solve(DominationInstance.full(path(100), 20, 2)).answer is Answer.YES
        assert solve(DominationInstance.full(path(100), 19, 2)).answer is Answer.NO
        assert oracles.min_interval_cover(100, 2) == 20

    def test_paper_mode_bounded_degree(self):
        inst = DominationInstance.full(cycle(12), 4, 1)
        rep = solve(inst, profile_bounded_degree(2), mode="paper")
        assert rep.answer is Answer.YES and rep.trace == []
        # the verbatim formula ignores m, so N=4 and no witness of size 6 exists
        rep = solve(inst, profile_bounded_degree(2, "paper"), mode="paper")
        assert rep.answer is Answer.INCONCLUSIVE and "scattered" in rep.note

    def test_paper_mode_needs_profile(self):
        with pytest.raises(InputError):
            solve(DominationInstance.full(path(5), 2, 1), mode="paper")

    def test_paper_mode_huge_threshold(self):
        # N saturates, so the core guard is what stops the run
        rep = solve(DominationInstance.full(path(40), 14, 1), profile_from_h(lambda r: 4), mode="paper")
        assert rep.answer is Answer.INCONCLUSIVE and rep.trace == []

    def test_inconclusive_when_fallback_refuses(self):
        def refuse(_):
            raise GuardError("no")
        rep = solve(DominationInstance.full(path(40), 14, 1), fallback=refuse)
        assert rep.answer is Answer.INCONCLUSIVE

    def test_red_blue(self):
        G = path(7)
        inst = DominationInstance(G, {0, 6}, 2, 1, candidates={1, 5})
        rep = solve(inst)
        assert rep.answer is Answer.YES and rep.solution == {1, 5}
        assert solve(DominationInstance(G, {0, 6}, 1, 3, candidates={1, 5})).answer is Answer.NO

    def test_exact_k(self):
        rep = solve(DominationInstance.full(star(5), 3, 1), exact_k=True)
        assert rep.answer is Answer.YES and len(rep.solution) == 3

    @settings(max_examples=40)
    @given(graphs(min_n=10, max_n=26, max_deg=3), st.integers(0, 3), st.integers(1, 2))
    def test_matches_oracle_with_reductions(self, G, k, d):
        rep = solve(DominationInstance.full(G, k, d), guard=6)
        assert rep.answer is not Answer.INCONCLUSIVE
        expect = brute_force_min_domset(G, range(G.n), d, k) is not None
        assert (rep.answer is Answer.YES) == expect
        if rep.answer is Answer.YES:
            assert dominates(G, rep.solution, range(G.n), d) and len(rep.solution) <= k
