#!/usr/bin/env python3
"""Bench the domination driver on paths at k = ceil(n/3) and one below.

Writes two CSV tables to stdout (or ``--out``); every Yes witness has
already been re-checked by the bench runner.
"""

from __future__ import annotations

import argparse
import sys

from sparsedom.harness.bench import BenchConfig, bench, parse_sizes, to_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10:100:10")
    ap.add_argument("--family", default="path")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    sizes = parse_sizes([args.sizes])
    chunks = []
    for offset in (0, -1):
        cfg = BenchConfig(args.family, sizes, d=1, k_offset=offset, jobs=args.jobs)
        rows = bench(cfg)
        chunks.append(f"# k = ceil(n/3){offset:+d}\n" if offset else "# k = ceil(n/3)\n")
        chunks.append(to_csv(rows))
    text = "".join(chunks)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
