"""Corpus runs with independent re-verification of every Yes witness."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from ..bounds import get_profile
from ..domination import Answer, DominationInstance, solve
from ..graph_core import Graph, dominates, is_connected, power
from ..variants import RomanLabeling, is_efficient, solve_connected_driver, solve_efficient, solve_roman
from .generators import FAMILIES, generate

log = logging.getLogger(__name__)

COLUMNS = ("family", "n", "k", "d", "answer", "reductions", "max_S", "wall_ms")
SOLVERS = ("domset", "connected", "dconnected", "efficient", "roman")


@dataclass(frozen=True)
class BenchConfig:
    """A generated corpus: one instance per entry of ``sizes``.

    ``k`` is ``ceil(n * k_num / k_den) + k_offset`` unless ``k`` is fixed.
    Each size is a tuple of the family's positional parameters.
    """

    family: str
    sizes: tuple[tuple[int, ...], ...]
    d: int = 1
    k: int | None = None
    k_num: int = 1
    k_den: int = 3
    k_offset: int = 0
    solver: str = "domset"
    mode: str = "practical"
    profile: str | None = None
    guard: int | None = None
    seed: int = 0
    jobs: int = 1


@dataclass
class RunReport:
    instance: str
    family: str
    n: int
    k: int
    d: int
    solver: str
    mode: str
    answer: str
    witness: list | None = None
    trace: list[tuple[int, int, int]] = field(default_factory=list)
    wall_ms: float = 0.0
    error: str | None = None

    @property
    def reductions(self) -> int:
        return len(self.trace)

    @property
    def max_s(self) -> int:
        return max((s for _, s, _ in self.trace), default=0)

    def row(self) -> dict[str, object]:
        return {
            "family": self.family, "n": self.n, "k": self.k, "d": self.d,
            "answer": self.answer, "reductions": self.reductions,
            "max_S": self.max_s, "wall_ms": f"{self.wall_ms:.3f}",
        }

    def to_json(self) -> dict[str, object]:
        out = asdict(self)
        out["reductions"] = self.reductions
        out["max_S"] = self.max_s
        return out


def run_solver(
    solver: str, G: Graph, k: int, d: int, mode: str = "practical",
    profile: str | None = None, guard: int | None = None,
):
    prof = get_profile(profile, mode) if profile else None
    if solver == "domset":
        return solve(DominationInstance.full(G, k, d), prof, mode, guard)
    if solver in ("connected", "dconnected"):
        return solve_connected_driver(
            DominationInstance.full(G, k, d), prof, mode, guard,
            distance_connected=solver == "dconnected",
        )
    if solver == "efficient":
        return solve_efficient(G, k, prof, mode, guard)
    if solver == "roman":
        return solve_roman(G, k, prof, mode)
    raise ValueError(f"unknown solver {solver!r}")


def verify_witness(solver: str, G: Graph, k: int, d: int, witness) -> bool:
    """Check a Yes witness with the plain graph predicates only."""
    if solver == "roman":
        return isinstance(witness, RomanLabeling) and witness.is_valid(G) and witness.weight <= k
    X = frozenset(witness)
    if len(X) > k or not dominates(G, X, range(G.n), 1 if solver == "efficient" else d):
        return False
    if solver == "connected":
        return is_connected(G, X)
    if solver == "dconnected":
        return is_connected(power(G, max(d, 1)), X)
    if solver == "efficient":
        return len(X) == k and is_efficient(G, X)
    return True


def _one(job: tuple[BenchConfig, int, tuple[int, ...]]) -> RunReport:
    cfg, idx, size = job
    names = FAMILIES[cfg.family][1]
    G = generate(cfg.family, dict(zip(names, size)), cfg.seed + idx)
    n = G.n
    k = cfg.k if cfg.k is not None else math.ceil(n * cfg.k_num / cfg.k_den) + cfg.k_offset
    rep = RunReport(
        f"{cfg.family}-{'x'.join(map(str, size))}-s{cfg.seed + idx}",
        cfg.family, n, k, cfg.d, cfg.solver, cfg.mode, "error",
    )
    if k < 0:
        rep.error = "negative k"
        return rep
    t0 = time.perf_counter()
    try:
        out = run_solver(cfg.solver, G, k, cfg.d, cfg.mode, cfg.profile, cfg.guard)
    except Exception as exc:  # one bad instance must not sink the corpus
        rep.error = f"{type(exc).__name__}: {exc}"
        log.warning("%s failed: %s", rep.instance, rep.error)
        return rep
    rep.wall_ms = (time.perf_counter() - t0) * 1000
    rep.trace = [(st.w, st.s_size, st.a_size) for st in out.trace]
    if out.answer is Answer.YES:
        if not verify_witness(cfg.solver, G, k, cfg.d, out.solution):
            rep.error = "witness failed verification"
            return rep
        sol = out.solution
        rep.witness = list(sol.labels) if isinstance(sol, RomanLabeling) else sorted(sol)
    rep.answer = out.answer.value
    return rep


def bench(cfg: BenchConfig) -> list[RunReport]:
    """Run the corpus; rows come back in corpus order whatever ``jobs`` is."""
    if cfg.family not in FAMILIES:
        raise ValueError(f"unknown family {cfg.family!r}")
    if cfg.solver not in SOLVERS:
        raise ValueError(f"unknown solver {cfg.solver!r}")
    jobs = [(cfg, i, tuple(s)) for i, s in enumerate(cfg.sizes)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(_one, jobs))
    return [_one(j) for j in jobs]


def to_csv(reports: Iterable[RunReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def parse_sizes(spec: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    """``["10:100:10"]`` -> sizes 10, 20, ..., 100; ``["3x4"]`` -> one grid size."""
    out: list[tuple[int, ...]] = []
    for item in spec:
        if ":" in item:
            lo, hi, *step = (int(x) for x in item.split(":"))
            out += [(v,) for v in range(lo, hi + 1, step[0] if step else 1)]
        else:
            out.append(tuple(int(x) for x in item.split("x")))
    return tuple(out)
