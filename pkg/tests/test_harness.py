import io
import json
import math
from pathlib import Path
import subprocess
import sys

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import graphs
from sparsedom.errors import InputError
from sparsedom.graph_core import Graph
from sparsedom.harness.bench import COLUMNS, BenchConfig, bench, parse_sizes, to_csv, verify_witness
from sparsedom.harness.cli import main
from sparsedom.harness.gadget import degree_reduction_gadget, disjoint_paths, total_degree
from sparsedom.harness.generators import FAMILIES, generate, grid, path, random_digraph, subdivided_clique
from sparsedom.harness.io import InstanceFile, ParseError, emit_instance, graph_instance, parse_instance


class TestParse:
    def test_p3(self):
        inst = parse_instance("p ds 3 2\nk 1\nd 1\n0 1\n1 2\n")
        assert inst.graph == path(3)
        assert inst.params == {"k": 1, "d": 1}
        assert inst.W is None and inst.red is None

    def test_out_of_range_names_line(self):
        with pytest.raises(ParseError, match="line 3") as exc:
            parse_instance("p ds 3 2\n0 1\n0 5\n")
        assert exc.value.lineno == 3

    def test_target_line(self):
        inst = parse_instance("p ds 3 2\nw 0 2\n0 1\n1 2\n")
        assert inst.W == {0, 2}

    def test_comments_and_red(self):
        inst = parse_instance("c hello\np ds 4 1\nc mid\nred 1 3\n2 3\n")
        assert inst.red == {1, 3} and inst.graph.m == 1

    @pytest.mark.parametrize("text,line", [
        ("0 1\n", 1),
        ("p ds 3 2\n0 1\n1 0\n", 3),
        ("p ds 3 1\n0 0\n", 2),
        ("p ds 3 1\nk x\n0 1\n", 2),
        ("p ds 3 1\nk 1\nk 2\n0 1\n", 3),
        ("p ds 3 2\n0 1\n", 1),
        ("p ds 3 1\n0 1 2\n", 2),
        ("p ds 3 1\nw 0 0\n0 1\n", 2),
        ("p ds 3\n", 1),
        ("p ds 3 0\np ds 3 0\n", 2),
    ])
    def test_rejections(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert exc.value.lineno == line and f"line {line}" in str(exc.value)

    def test_parse_error_is_input_error(self):
        assert issubclass(ParseError, InputError)

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_instance("c nothing here\n")

    def test_directed_kind(self):
        inst = parse_instance("p dp-dir 3 2\nt 0 2\n0 1\n1 0\n")
        assert inst.directed and inst.graph.m == 2 and inst.terminals == ((0, 2),)


class TestEmit:
    def test_canonical_layout(self):
        G = Graph.from_edges(3, [(2, 1), (1, 0)])
        inst = InstanceFile("ds", G, {"d": 1, "k": 2}, frozenset({2, 0}), frozenset({1}))
        assert emit_instance(inst) == "p ds 3 2\nk 2\nd 1\nw 0 2\nred 1\n0 1\n1 2\n"

    @given(graphs(max_n=14), st.data())
    def test_round_trip(self, G, data):
        params = data.draw(st.dictionaries(st.sampled_from("kdrm"), st.integers(0, 9)))
        W = data.draw(st.none() | st.frozensets(st.integers(0, G.n - 1)))
        red = data.draw(st.none() | st.frozensets(st.integers(0, G.n - 1)))
        text = emit_instance(InstanceFile("ds", G, params, W, red))
        back = parse_instance(text)
        assert back.graph == G and back.params == params and back.W == W and back.red == red
        assert emit_instance(back) == text

    @given(graphs(max_n=10, directed=True))
    def test_round_trip_directed(self, G):
        text = emit_instance(graph_instance(G))
        assert emit_instance(parse_instance(text)) == text

    def test_comments_are_dropped(self):
        text = "p ds 2 1\n0 1\n"
        assert emit_instance(parse_instance("c x\n" + text + "c y\n")) == text


class TestGenerators:
    def test_path(self):
        assert generate("path", {"n": 5}) == path(5)

    def test_grid_counts(self):
        G = generate("grid", {"rows": 3, "cols": 3})
        assert (G.n, G.m) == (9, 12)
        assert (grid(4, 7).n, grid(4, 7).m) == (28, 2 * 4 * 7 - 4 - 7)

    def test_subdivided_clique_counts(self):
        G = subdivided_clique(5, 2)
        assert (G.n, G.m) == (25, 30)
        H = oracles.nx_graph(G)
        assert sorted(d for _, d in H.degree())[-5:] == [4] * 5

    def test_unknown_family(self):
        with pytest.raises(InputError):
            generate("hypercube", {"n": 3})

    @pytest.mark.parametrize("family,params", [
        ("random_tree", {"n": 30}),
        ("random_max_deg", {"n": 40, "max_deg": 3}),
        ("random_digraph", {"n": 12}),
    ])
    def test_seed_determinism(self, family, params):
        a = emit_instance(graph_instance(generate(family, params, 17)))
        assert a == emit_instance(graph_instance(generate(family, params, 17)))
        others = {emit_instance(graph_instance(generate(family, params, s))) for s in range(5)}
        assert len(others) > 1

    @given(st.integers(2, 40), st.integers(1, 5), st.integers(0, 2**32))
    def test_max_degree_respected(self, n, deg, seed):
        G = generate("random_max_deg", {"n": n, "max_deg": deg}, seed)
        assert max(G.degree(v) for v in range(n)) <= deg

    @given(st.integers(1, 40), st.integers(0, 2**32))
    def test_random_tree_is_tree(self, n, seed):
        G = generate("random_tree", {"n": n}, seed)
        assert G.m == n - 1 and nx.is_tree(oracles.nx_graph(G))

    def test_every_family_is_listed(self):
        assert {"path", "cycle", "star", "grid", "random_max_deg", "subdivided_clique",
                "random_tree"} <= set(FAMILIES)


class TestGadget:
    def test_unchanged_at_low_degree(self):
        D = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], directed=True)
        out, pairs = degree_reduction_gadget(D, [(0, 2)])
        assert out == D and pairs == [(0, 2)]

    def test_in_degree_three(self):
        D = Graph.from_edges(4, [(1, 0), (2, 0), (3, 0)], directed=True)
        out, _ = degree_reduction_gadget(D)
        assert out.n == 5
        ins = out.in_neighbors()
        assert len(ins[0]) == 2 and len(ins[4]) == 2 and out.adj[4] == (0,)
        assert max(total_degree(out)) <= 3

    def test_four_parallel_in_neighbours(self):
        D = Graph.from_edges(6, [(0, 4), (1, 4), (2, 4), (3, 4), (4, 5)], directed=True)
        out, pairs = degree_reduction_gadget(D, [(0, 5), (1, 4)])
        assert max(total_degree(out)) <= 4
        for ps in ([(0, 5)], [(0, 5), (1, 2)], [(2, 4)], [(3, 5), (0, 1)]):
            before = disjoint_paths(D, ps) is not None
            after = disjoint_paths(out, degree_reduction_gadget(D, ps)[1]) is not None
            assert before == after
        assert disjoint_paths(out, pairs) is None

    def test_rejects_undirected(self):
        with pytest.raises(InputError):
            degree_reduction_gadget(path(3))

    @settings(max_examples=40)
    @given(st.integers(2, 9), st.floats(0.1, 0.6), st.integers(0, 10**6), st.data())
    def test_degree_and_paths(self, n, p, seed, data):
        D = random_digraph(n, p, seed)
        out, _ = degree_reduction_gadget(D)
        assert max(total_degree(out), default=0) <= 4
        verts = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=min(4, n), unique=True))
        pairs = [(verts[i], verts[i + 1]) for i in range(0, len(verts) - 1, 2)]
        want = oracles.disjoint_paths_exist(D, pairs)
        assert (disjoint_paths(D, pairs) is not None) == want
        assert (disjoint_paths(out, pairs) is not None) == want

    def test_path_search(self):
        D = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], directed=True)
        assert disjoint_paths(D, [(0, 3)]) == [[0, 1, 2, 3]]
        assert disjoint_paths(D, [(3, 0)]) is None
        assert disjoint_paths(D, [(0, 1), (2, 3)]) == [[0, 1], [2, 3]]
        with pytest.raises(InputError):
            disjoint_paths(D, [(0, 1), (1, 2)])


class TestBench:
    sizes = parse_sizes(["10:100:10"])

    def test_parse_sizes(self):
        assert self.sizes == tuple((n,) for n in range(10, 101, 10))
        assert parse_sizes(["3x4", "5"]) == ((3, 4), (5,))
        assert parse_sizes([]) == ()

    def test_path_yes(self):
        rows = bench(BenchConfig("path", self.sizes, d=1))
        assert [r.k for r in rows] == [math.ceil(n / 3) for n in range(10, 101, 10)]
        assert all(r.answer == "yes" and r.error is None for r in rows)
        assert all(verify_witness("domset", path(r.n), r.k, 1, r.witness) for r in rows)

    def test_path_no(self):
        rows = bench(BenchConfig("path", self.sizes, d=1, k_offset=-1))
        assert all(r.answer == "no" for r in rows)

    def test_empty_corpus(self):
        assert to_csv(bench(BenchConfig("path", ()))) == ",".join(COLUMNS) + "\n"

    def test_csv_columns(self):
        rows = bench(BenchConfig("star", ((40,),), k=1))
        lines = to_csv(rows).splitlines()
        assert lines[0] == "family,n,k,d,answer,reductions,max_S,wall_ms"
        fields = lines[1].split(",")
        assert fields[:5] == ["star", "41", "1", "1", "yes"]
        assert int(fields[5]) == rows[0].reductions > 0 and fields[6] == "1"

    def test_errors_stay_in_their_row(self):
        # k = ceil(n/3) - 5 is negative for the first size only
        rows = bench(BenchConfig("path", ((3,), (30,)), k_offset=-5))
        assert rows[0].answer == "error" and rows[0].error
        assert rows[1].answer == "no" and rows[1].error is None

    def test_parallel_keeps_order(self):
        cfg = BenchConfig("random_tree", parse_sizes(["12:40:4"]), d=1, seed=3)
        serial = [(r.instance, r.answer, r.witness) for r in bench(cfg)]
        par = BenchConfig(**{**cfg.__dict__, "jobs": 3})
        assert [(r.instance, r.answer, r.witness) for r in bench(par)] == serial

    def test_rejects_bad_witness(self):
        assert not verify_witness("domset", path(9), 3, 1, [0, 4, 8])
        assert not verify_witness("connected", path(5), 2, 1, [1, 3])
        assert verify_witness("dconnected", path(5), 2, 2, [1, 3])

    def test_unknown_solver(self):
        with pytest.raises(ValueError):
            bench(BenchConfig("path", ((5,),), solver="steiner"))


def run(argv, stdin="", monkeypatch=None):
    out = io.StringIO()
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    return main(argv, out), out.getvalue()


P9 = emit_instance(graph_instance(path(9)))
C4 = "p ds 4 4\n0 1\n1 2\n2 3\n0 3\n"


class TestCli:
    def test_domset_yes_json(self, monkeypatch):
        code, text = run(["solve-domset", "--k", "3", "--d", "1", "--json"], P9, monkeypatch)
        assert code == 0
        assert json.loads(text)["witness"] == [1, 4, 7]

    def test_domset_no(self, monkeypatch):
        assert run(["solve-domset", "--k", "2", "--d", "1"], P9, monkeypatch)[0] == 1

    def test_roman(self, monkeypatch):
        assert run(["solve-roman", "--k", "2"], C4, monkeypatch)[0] == 1
        code, text = run(["solve-roman", "--k", "3", "--json"], C4, monkeypatch)
        assert code == 0 and sum(json.loads(text)["witness"]) == 3

    def test_params_from_file(self, monkeypatch):
        code, text = run(["solve-domset"], "p ds 3 2\nk 1\nd 1\n0 1\n1 2\n", monkeypatch)
        assert code == 0 and text.splitlines() == ["yes", "1"]

    def test_gen_then_solve(self, monkeypatch):
        code, text = run(["gen", "path", "9"], "", monkeypatch)
        assert code == 0 and text == P9

    def test_connected_and_efficient(self, monkeypatch):
        P7 = emit_instance(graph_instance(path(7)))
        assert run(["solve-connected", "--k", "5", "--d", "1"], P7, monkeypatch)[0] == 0
        assert run(["solve-connected", "--k", "4", "--d", "1"], P7, monkeypatch)[0] == 1
        assert run(["solve-dconnected", "--k", "2", "--d", "2"], P7, monkeypatch)[0] == 0
        assert run(["solve-dconnected", "--k", "1", "--d", "2"], P7, monkeypatch)[0] == 1
        C6 = emit_instance(graph_instance(generate("cycle", {"n": 6})))
        assert run(["solve-efficient", "--k", "2"], C6, monkeypatch)[0] == 0

    def test_scatter_and_reduce(self, monkeypatch):
        star = emit_instance(graph_instance(generate("star", {"m": 20})))
        code, text = run(["scatter", "--r", "1", "--m", "5", "--h", "3", "--json"], star, monkeypatch)
        out = json.loads(text)
        assert code == 0 and out["S"] == [0] and len(out["A"]) >= 5
        code, text = run(["reduce", "--k", "1", "--d", "1", "--json"], star, monkeypatch)
        assert code == 0 and "w" in json.loads(text)

    def test_minor_check(self, monkeypatch):
        K4 = emit_instance(graph_instance(generate("complete", {"n": 4})))
        assert run(["minor-check", "--h", "4", "--r", "0"], K4, monkeypatch)[0] == 0
        assert run(["minor-check", "--h", "3", "--r", "1"], P9, monkeypatch)[0] == 1

    def test_oracle(self, monkeypatch):
        code, text = run(["oracle", "--problem", "domset", "--k", "3", "--d", "1", "--json"], P9, monkeypatch)
        assert code == 0 and json.loads(text)["witness"] == [1, 4, 7]
        assert run(["oracle", "--problem", "roman", "--k", "2"], C4, monkeypatch)[0] == 1

    def test_inconclusive(self, monkeypatch):
        # paper-mode thresholds are astronomically large, so no reduction fires
        # and 21 targets exceed the core guard
        star = emit_instance(graph_instance(generate("star", {"m": 20})))
        argv = ["solve-domset", "--k", "1", "--d", "1", "--mode", "paper", "--profile", "planar"]
        assert run(argv, star, monkeypatch)[0] == 2
        assert run(argv + ["--guard-core", "21"], star, monkeypatch)[0] == 0

    def test_env_guard(self, monkeypatch):
        star = emit_instance(graph_instance(generate("star", {"m": 20})))
        argv = ["solve-domset", "--k", "1", "--d", "1", "--mode", "paper", "--profile", "planar"]
        monkeypatch.setenv("SPARSE_DOMSET_GUARD", "21")
        assert run(argv, star, monkeypatch)[0] == 0

    @pytest.mark.parametrize("argv", [
        [], ["frobnicate"], ["solve-domset", "--mode", "fast"], ["gen", "grid", "3"],
        ["solve-domset", "--seed", "-1"], ["solve-domset", "--k", "1"],
        ["solve-domset", "--k", "1", "--d", "1", "--profile", "torus"],
    ])
    def test_usage_errors(self, argv, monkeypatch):
        assert run(argv, P9, monkeypatch)[0] == 64

    @pytest.mark.parametrize("text", ["p ds 3 1\n0 5\n", "garbage\n", "p ds 2 1\n0 1\n0 1\n"])
    def test_input_errors(self, text, monkeypatch, capsys):
        assert run(["solve-domset", "--k", "1", "--d", "1"], text, monkeypatch)[0] == 65
        assert "line" in capsys.readouterr().err

    def test_missing_file(self, monkeypatch, tmp_path):
        code, _ = run(["solve-domset", str(tmp_path / "nope.txt"), "--k", "1", "--d", "1"], "", monkeypatch)
        assert code == 65

    def test_bench_csv(self, monkeypatch):
        code, text = run(["bench", "--family", "path", "--sizes", "10:30:10", "--d", "1"], "", monkeypatch)
        lines = text.splitlines()
        assert code == 0 and len(lines) == 4 and all(",yes," in line for line in lines[1:])

    def test_bench_empty(self, monkeypatch):
        assert run(["bench", "--family", "path"], "", monkeypatch)[1] == ",".join(COLUMNS) + "\n"

    def test_module_entry_point(self, tmp_path):
        f = tmp_path / "p9.txt"
        f.write_text(P9)
        proc = subprocess.run([sys.executable, "-m", "sparsedom", "solve-domset", str(f), "--k", "2", "--d", "1"],
                              capture_output=True, text=True)
        assert proc.returncode == 1 and proc.stdout == "no\n"


@pytest.mark.parametrize("script,args", [
    ("path_law.py", ["--n-max", "8", "--d-max", "1"]),
    ("kernel_shrink.py", ["--sizes", "30", "60", "--repeats", "1"]),
    ("bench_paths.py", ["--sizes", "10:20:10"]),
])
def test_scripts_run(script, args):
    root = Path(__file__).resolve().parent.parent
    proc = subprocess.run([sys.executable, str(root / "scripts" / script), *args],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout
