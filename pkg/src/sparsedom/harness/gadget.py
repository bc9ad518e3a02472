"""Degree reduction for directed graphs, plus a brute-force disjoint-paths check.

Every vertex ``v`` of in-degree ``l > 1`` receives a balanced binary in-tree
rooted at ``v`` whose ``l`` leaf slots carry the former in-arcs; out-degree
is handled symmetrically with an out-tree.  Tree nodes are used only by
paths through ``v``, so vertex-disjoint path systems survive in both
directions, and every vertex ends with total degree at most 4.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import GuardError, InputError
from ..graph_core import Graph


def _ports(root: int, slots: Sequence[int], fresh: list[int], arcs: list[tuple[int, int]], inward: bool) -> dict[int, int]:
    """Hang ``slots`` below ``root``; return the tree node serving each slot."""
    port: dict[int, int] = {}
    if len(slots) <= 2:
        for s in slots:
            port[s] = root
        return port
    half = (len(slots) + 1) // 2
    for part in (slots[:half], slots[half:]):
        if len(part) == 1:
            port[part[0]] = root
            continue
        child = fresh[0]
        fresh[0] += 1
        arcs.append((child, root) if inward else (root, child))
        port.update(_ports(child, part, fresh, arcs, inward))
    return port


def degree_reduction_gadget(
    D: Graph, terminals: Sequence[tuple[int, int]] = ()
) -> tuple[Graph, list[tuple[int, int]]]:
    """Return the reduced digraph and the terminal pairs under the vertex map.

    Original vertices keep their ids; tree nodes are numbered from ``D.n``.
    """
    if not D.directed:
        raise InputError("the gadget expects a directed graph")
    for s, t in terminals:
        if not (0 <= s < D.n and 0 <= t < D.n):
            raise InputError(f"terminal pair ({s}, {t}) out of range")
    ins = D.in_neighbors()
    fresh = [D.n]
    arcs: list[tuple[int, int]] = []
    in_port = [_ports(v, sorted(ins[v]), fresh, arcs, True) for v in range(D.n)]
    out_port = [_ports(v, list(D.adj[v]), fresh, arcs, False) for v in range(D.n)]
    for u in range(D.n):
        for v in D.adj[u]:
            arcs.append((out_port[u][v], in_port[v][u]))
    return Graph.from_edges(fresh[0], arcs, directed=True), [tuple(p) for p in terminals]


def total_degree(D: Graph) -> list[int]:
    ins = D.in_neighbors()
    return [len(D.adj[v]) + len(ins[v]) for v in range(D.n)]


def disjoint_paths(
    D: Graph, pairs: Sequence[tuple[int, int]], max_nodes: int = 5_000_000
) -> list[list[int]] | None:
    """Pairwise vertex-disjoint directed paths ``s_i -> t_i``, found exhaustively.

    Paths are simple; a pair with ``s == t`` is the one-vertex path.  Returns
    ``None`` when no system exists.
    """
    nodes = 0
    used: set[int] = set()
    ends = {x for p in pairs for x in p}
    if len(ends) != 2 * len(pairs) - sum(s == t for s, t in pairs):
        raise InputError("terminals must be distinct across pairs")
    paths: list[list[int]] = []

    def route(i: int) -> bool:
        if i == len(pairs):
            return True
        s, t = pairs[i]
        later = {x for p in pairs[i + 1:] for x in p}
        cur = [s]
        used.add(s)

        def walk(v: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise GuardError("disjoint-path search exceeded its node budget")
            if v == t:
                paths.append(list(cur))
                if route(i + 1):
                    return True
                paths.pop()
                return False
            for u in D.adj[v]:
                if u in used or u in later:
                    continue
                used.add(u)
                cur.append(u)
                if walk(u):
                    return True
                cur.pop()
                used.discard(u)
            return False

        ok = walk(s)
        if not ok:
            used.discard(s)
        return ok

    return paths if route(0) else None
