#!/usr/bin/env python3
"""Check that the driver finds ceil(n / (2d + 1)) as the domination number of P_n.

For each (n, d) it asks the driver at k = target and k = target - 1 and
reports any pair where the answers are not Yes then No.
"""

from __future__ import annotations

import argparse
import math

from sparsedom.domination import Answer, DominationInstance, solve
from sparsedom.harness.generators import path


def check(n_max: int, d_max: int) -> list[tuple[int, int]]:
    bad = []
    for d in range(d_max + 1):
        for n in range(1, n_max + 1):
            target = math.ceil(n / (2 * d + 1))
            G = path(n)
            hi = solve(DominationInstance.full(G, target, d)).answer
            lo = solve(DominationInstance.full(G, target - 1, d)).answer if target else Answer.NO
            if (hi, lo) != (Answer.YES, Answer.NO):
                bad.append((n, d))
    return bad


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--d-max", type=int, default=3)
    args = ap.parse_args()
    bad = check(args.n_max, args.d_max)
    total = args.n_max * (args.d_max + 1)
    print(f"{total - len(bad)}/{total} (n, d) pairs agree")
    for n, d in bad:
        print(f"mismatch at n={n} d={d}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
