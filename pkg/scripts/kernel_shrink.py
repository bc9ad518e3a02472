#!/usr/bin/env python3
"""Watch the reduction loop shrink the target set of K_{1,m} down to the core.

Prints one row per star size with the trace length, the leftover target
count, the answer and the median wall time, then the log-log slope of time
against m.

    python3 scripts/kernel_shrink.py --sizes 50 100 200 400
"""

from __future__ import annotations

import argparse
import math
import statistics
import time
from dataclasses import dataclass

from sparsedom.domination import DominationInstance, solve
from sparsedom.harness.generators import star


@dataclass
class ShrinkConfig:
    sizes: tuple[int, ...] = (50, 100, 200)
    k: int = 1
    d: int = 1
    guard: int = 16
    repeats: int = 3


def run(cfg: ShrinkConfig) -> list[tuple[int, int, int, str, float]]:
    rows = []
    for m in cfg.sizes:
        inst = DominationInstance.full(star(m), cfg.k, cfg.d)
        times = []
        for _ in range(cfg.repeats):
            t0 = time.perf_counter()
            rep = solve(inst, guard=cfg.guard)
            times.append(time.perf_counter() - t0)
        rows.append((m, len(rep.trace), rep.remaining, rep.answer.value, statistics.median(times)))
    return rows


def slope(rows) -> float:
    xs = [math.log(r[0]) for r in rows]
    ys = [math.log(max(r[4], 1e-9)) for r in rows]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=list(ShrinkConfig.sizes))
    ap.add_argument("--guard", type=int, default=16)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    cfg = ShrinkConfig(tuple(args.sizes), guard=args.guard, repeats=args.repeats)
    rows = run(cfg)
    print(f"{'m':>6} {'steps':>6} {'left':>5} {'answer':>7} {'ms':>9}")
    for m, steps, left, ans, t in rows:
        print(f"{m:>6} {steps:>6} {left:>5} {ans:>7} {t * 1000:>9.1f}")
    if len(rows) > 1:
        print(f"log-log slope of time vs m: {slope(rows):.2f}")


if __name__ == "__main__":
    main()
