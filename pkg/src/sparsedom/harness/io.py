"""Plain-text instance files.

Grammar, one item per line::

    c <anything>              comment, ignored
    p <kind> <n> <m>          header, exactly once and before anything else
    k <int> | d <int> | r <int> | m <int>
    w <v1> <v2> ...           target set (default: every vertex)
    red <v1> ...              candidate set (default: every vertex)
    t <s> <t>                 terminal pair (gadget inputs only)
    <u> <v>                   edge

Kinds ending in ``-dir`` (e.g. ``dp-dir``) describe directed graphs.  The
emitter writes the canonical layout: header, parameters in ``k d r m`` order,
``w``, ``red``, terminal pairs, then edges in ascending order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import InputError
from ..graph_core import Graph

PARAMS = ("k", "d", "r", "m")
_KIND = re.compile(r"[a-z][a-z0-9_-]*")


class ParseError(InputError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    graph: Graph
    params: dict[str, int] = field(default_factory=dict)
    W: frozenset[int] | None = None
    red: frozenset[int] | None = None
    terminals: tuple[tuple[int, int], ...] = ()

    @property
    def directed(self) -> bool:
        return self.graph.directed


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        out = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None
    if any(not t.lstrip("-").isdigit() for t in tokens):
        raise ParseError(lineno, "malformed integer")
    return out


def parse_instance(text: str) -> InstanceFile:
    """Parse an instance; every rejection names the offending line."""
    header = None
    params: dict[str, int] = {}
    W = red = None
    terminals: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    header_line = 0

    def vertex(v: int, lineno: int) -> int:
        if not 0 <= v < header[1]:
            raise ParseError(lineno, f"vertex {v} out of range [0, {header[1]})")
        return v

    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        head = tok[0]
        if header is None:
            if head != "p":
                raise ParseError(lineno, "expected header 'p <kind> <n> <m>'")
            if len(tok) != 4 or not _KIND.fullmatch(tok[1]):
                raise ParseError(lineno, "malformed header")
            n, m = _ints(tok[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative size in header")
            header = (tok[1], n, m)
            header_line = lineno
            continue
        directed = header[0].endswith("-dir")
        if head == "p":
            raise ParseError(lineno, "second header")
        if head in PARAMS:
            if len(tok) != 2:
                raise ParseError(lineno, f"'{head}' takes one integer")
            if head in params:
                raise ParseError(lineno, f"parameter '{head}' given twice")
            (val,) = _ints(tok[1:], lineno)
            if val < 0:
                raise ParseError(lineno, f"parameter '{head}' is negative")
            params[head] = val
        elif head in ("w", "red"):
            vs = frozenset(vertex(v, lineno) for v in _ints(tok[1:], lineno))
            if len(vs) != len(tok) - 1:
                raise ParseError(lineno, f"repeated vertex in '{head}' line")
            if (W if head == "w" else red) is not None:
                raise ParseError(lineno, f"'{head}' line given twice")
            if head == "w":
                W = vs
            else:
                red = vs
        elif head == "t":
            if len(tok) != 3:
                raise ParseError(lineno, "terminal line needs two vertices")
            s, t = (vertex(v, lineno) for v in _ints(tok[1:], lineno))
            terminals.append((s, t))
        else:
            if len(tok) != 2:
                raise ParseError(lineno, f"unrecognised line {raw.strip()!r}")
            u, v = (vertex(x, lineno) for x in _ints(tok, lineno))
            if u == v:
                raise ParseError(lineno, f"self-loop at {u}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {u} {v}")
            seen.add(key)
            edges.append((u, v))
    if header is None:
        raise ParseError(0, "missing header")
    kind, n, m = header
    if len(edges) != m:
        raise ParseError(header_line, f"header promises {m} edges, found {len(edges)}")
    G = Graph.from_edges(n, edges, directed=kind.endswith("-dir"))
    return InstanceFile(kind, G, params, W, red, tuple(terminals))


def emit_instance(inst: InstanceFile) -> str:
    G = inst.graph
    lines = [f"p {inst.kind} {G.n} {G.m}"]
    lines += [f"{p} {inst.params[p]}" for p in PARAMS if p in inst.params]
    if inst.W is not None:
        lines.append(" ".join(["w", *map(str, sorted(inst.W))]))
    if inst.red is not None:
        lines.append(" ".join(["red", *map(str, sorted(inst.red))]))
    lines += [f"t {s} {t}" for s, t in inst.terminals]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def graph_instance(G: Graph, kind: str | None = None, **params: int) -> InstanceFile:
    kind = kind or ("dp-dir" if G.directed else "ds")
    return InstanceFile(kind, G, {p: v for p, v in params.items() if v is not None})
