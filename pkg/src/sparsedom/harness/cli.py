"""Command-line front end.

Exit codes: 0 yes/success, 1 no, 2 inconclusive, 64 usage, 65 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence, TextIO

from ..bounds import get_profile
from ..domination import (
    Answer,
    DominationInstance,
    SolveReport,
    brute_force_min_domset,
    reduce_witness,
    solve,
)
from ..errors import GuardError, InputError
from ..variants import (
    CLI_CONNECTED_K_GUARD,
    RomanLabeling,
    brute_force_connected,
    brute_force_efficient,
    brute_force_roman,
    solve_connected_driver,
    solve_efficient,
    solve_roman,
)
from ..wideness import EXACT_FALLBACK_N, ScatterFailure, brute_force_scattered, find_scattered, shallow_clique_minor
from .bench import BenchConfig, bench, parse_sizes, to_csv
from .generators import FAMILIES, generate
from .io import emit_instance, graph_instance, parse_instance

EXIT_YES, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 64, 65
_EXIT = {Answer.YES: EXIT_YES, Answer.NO: EXIT_NO, Answer.INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=("paper", "practical"), default="practical")
    p.add_argument("--profile", help="class profile, e.g. bounded-degree-3, planar, excluded-clique-5")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--guard-core", type=int, default=None, metavar="INT",
                   help="small-core |W| cap (default: $SPARSE_DOMSET_GUARD or 16)")
    p.add_argument("--exact-k", action="store_true", help="require exactly k solution vertices")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--s-cap", type=int, default=2, help="largest bottleneck tried in practical mode")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sparsedom", description="Parameterized domination on sparse graphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name: str, help: str, infile: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        if infile:
            p.add_argument("file", nargs="?", help="instance file (default: stdin)")
        return p

    cmd("solve-domset", "distance-d dominating set")
    cmd("solve-connected", "connected distance-d dominating set")
    cmd("solve-dconnected", "d-connected distance-d dominating set")
    cmd("solve-efficient", "efficient dominating set of size exactly k")
    cmd("solve-roman", "Roman domination of weight at most k")
    p = cmd("scatter", "bottleneck plus scattered subset of W")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int, default=4, help="bottleneck size is at most h-2")
    cmd("reduce", "one witness reduction step")
    p = cmd("minor-check", "is K_h a depth-r minor?")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p = cmd("oracle", "brute-force counterparts")
    p.add_argument("--problem", default="domset",
                   choices=("domset", "connected", "dconnected", "efficient", "roman", "scatter"))
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s-max", type=int, default=2)
    p = cmd("gen", "emit a generated instance", infile=False)
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--p", type=float, default=None, help="edge probability (random families)")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--kind", default=None)
    p = cmd("bench", "run a solver over a generated corpus", infile=False)
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--sizes", nargs="*", default=[], help="e.g. 10:100:10 or 3x4")
    p.add_argument("--solver", default="domset",
                   choices=("domset", "connected", "dconnected", "efficient", "roman"))
    p.add_argument("--k-frac", default="1/3", help="k = ceil(n * frac) + offset unless --k")
    p.add_argument("--k-offset", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _read(args) -> str:
    if args.file in (None, "-"):
        return sys.stdin.read()
    try:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _param(args, inst, name: str, default: int | None = None) -> int:
    val = getattr(args, name, None)
    if val is None:
        val = inst.params.get(name, default)
    if val is None:
        raise UsageError(f"--{name} is required (or put '{name} <int>' in the instance)")
    return val


def _emit_report(out: TextIO, args, rep: SolveReport) -> int:
    sol = rep.solution
    if isinstance(sol, RomanLabeling):
        witness = list(sol.labels)
    else:
        witness = None if sol is None else sorted(sol)
    if args.json:
        json.dump({
            "answer": rep.answer.value,
            "witness": witness,
            "trace": [{"w": s.w, "S": s.s_size, "A": s.a_size} for s in rep.trace],
            "remaining": rep.remaining,
            "note": rep.note,
        }, out)
        out.write("\n")
    else:
        out.write(rep.answer.value + "\n")
        if witness is not None:
            out.write(" ".join(map(str, witness)) + "\n")
    return _EXIT[rep.answer]


def _emit(out: TextIO, args, answer: Answer, payload: dict) -> int:
    if args.json:
        json.dump({"answer": answer.value, **payload}, out)
        out.write("\n")
    else:
        out.write(answer.value + "\n")
        for key, val in payload.items():
            if isinstance(val, (list, tuple)):
                val = " ".join(map(str, val))
            out.write(f"{key}: {val}\n")
    return _EXIT[answer]


def _run(args, out: TextIO) -> int:
    if args.command == "gen":
        names = FAMILIES[args.family][1]
        if len(args.params) != len(names):
            raise UsageError(f"{args.family} takes {len(names)} parameters: {' '.join(names)}")
        params: dict[str, object] = dict(zip(names, args.params))
        if args.p is not None:
            params["p"] = args.p
        if args.connected:
            params["connected"] = True
        G = generate(args.family, params, args.seed)
        out.write(emit_instance(graph_instance(G, args.kind, k=args.k, d=args.d)))
        return EXIT_YES
    if args.command == "bench":
        num, _, den = args.k_frac.partition("/")
        cfg = BenchConfig(
            args.family, parse_sizes(args.sizes), d=1 if args.d is None else args.d,
            k=args.k, k_num=int(num), k_den=int(den or 1), k_offset=args.k_offset,
            solver=args.solver, mode=args.mode, profile=args.profile,
            guard=args.guard_core, seed=args.seed, jobs=args.jobs,
        )
        rows = bench(cfg)
        if args.json:
            json.dump([r.to_json() for r in rows], out)
            out.write("\n")
        else:
            out.write(to_csv(rows))
        return EXIT_YES

    inst = parse_instance(_read(args))
    G = inst.graph
    profile = get_profile(args.profile, args.mode) if args.profile else None
    guard = args.guard_core
    cmd = args.command

    if cmd == "minor-check":
        try:
            found = shallow_clique_minor(G, args.h, args.r)
        except GuardError as exc:
            return _emit(out, args, Answer.INCONCLUSIVE, {"reason": str(exc)})
        return _emit(out, args, Answer.YES if found else Answer.NO, {})
    if cmd == "scatter" or (cmd == "oracle" and args.problem == "scatter"):
        r = _param(args, inst, "r", getattr(args, "d", None) or inst.params.get("d"))
        m = _param(args, inst, "m")
        W = inst.W if inst.W is not None else range(G.n)
        if cmd == "oracle":
            wit = brute_force_scattered(G, W, r, m, args.s_max)
            if wit is None:
                return _emit(out, args, Answer.NO, {})
        else:
            try:
                wit = find_scattered(G, W, r, m, args.h, mode=args.mode)
            except ScatterFailure as exc:
                definite = args.mode == "practical" and G.n <= EXACT_FALLBACK_N
                return _emit(out, args, Answer.NO if definite else Answer.INCONCLUSIVE,
                             {"reason": str(exc)})
        return _emit(out, args, Answer.YES, {"S": sorted(wit.S), "A": sorted(wit.A)})

    k = _param(args, inst, "k")
    if cmd in ("solve-efficient", "solve-roman") or (
        cmd == "oracle" and args.problem in ("efficient", "roman")
    ):
        d = 1
    else:
        d = _param(args, inst, "d")
    dom = DominationInstance(
        G, inst.W if inst.W is not None else frozenset(range(G.n)), k, d, inst.red
    )

    if cmd == "solve-domset":
        return _emit_report(out, args, solve(dom, profile, args.mode, guard, args.s_cap, args.exact_k))
    if cmd in ("solve-connected", "solve-dconnected"):
        rep = solve_connected_driver(
            dom, profile, args.mode, guard, args.s_cap, args.exact_k,
            distance_connected=cmd == "solve-dconnected", k_guard=CLI_CONNECTED_K_GUARD,
        )
        return _emit_report(out, args, rep)
    if cmd == "solve-efficient":
        return _emit_report(out, args, solve_efficient(G, k, profile, args.mode, guard, args.s_cap))
    if cmd == "solve-roman":
        return _emit_report(out, args, solve_roman(G, k, profile, args.mode, args.s_cap))
    if cmd == "reduce":
        for s_try in range(args.s_cap + 1):
            m = (k + 2) * (d + 1) ** s_try
            if m > len(dom.W):
                break
            try:
                wit = find_scattered(G, dom.W, d, m, s_try + 2)
            except ScatterFailure:
                continue
            w = reduce_witness(dom, wit)
            return _emit(out, args, Answer.YES, {"w": w, "S": sorted(wit.S), "A": sorted(wit.A)})
        return _emit(out, args, Answer.INCONCLUSIVE, {"reason": "no witness found"})
    if cmd == "oracle":
        try:
            if args.problem == "domset":
                sol = brute_force_min_domset(G, dom.W, d, k, dom.candidates)
            elif args.problem in ("connected", "dconnected"):
                sol = brute_force_connected(dom, args.problem == "dconnected")
            elif args.problem == "efficient":
                sol = brute_force_efficient(G, k)
            else:
                sol = brute_force_roman(G, k)
        except GuardError as exc:
            return _emit(out, args, Answer.INCONCLUSIVE, {"reason": str(exc)})
        if sol is None:
            return _emit(out, args, Answer.NO, {})
        witness = list(sol.labels) if isinstance(sol, RomanLabeling) else sorted(sol)
        return _emit(out, args, Answer.YES, {"witness": witness})
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args, out)
    except UsageError as exc:
        print(f"sparsedom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"sparsedom: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"sparsedom: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        # unknown profile names and similar configuration mistakes
        print(f"sparsedom: {exc}", file=sys.stderr)
        return EXIT_USAGE


def cli(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
