"""Automorphism groups of small graphs by individualization and refinement.

The first path of the search tree fixes a base.  Working up from the
deepest level, each point of a target cell is tested for an automorphism
fixing the earlier base points and mapping the base point there; the found
automorphisms form a strong generating set, so the group order is the
product of the orbit lengths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .chain import StabilizerChain
from .graphs import Graph
from .groups import PermGroup, orbit_of
from .search import BudgetExceeded, SubgroupSearchBudget, _Meter

MAX_VERTICES = 300


def refine(adj, cells, n, splitters=None):
    """Coarsest equitable refinement, splitting cells by neighbour counts."""
    cells = [list(c) for c in cells]
    queue = deque(tuple(c) for c in (cells if splitters is None else splitters))
    while queue:
        W = queue.popleft()
        cnt = [0] * n
        for u in W:
            for v in adj[u]:
                cnt[v] += 1
        out = []
        for X in cells:
            if len(X) > 1:
                keys = sorted({cnt[v] for v in X})
                if len(keys) > 1:
                    parts = [[v for v in X if cnt[v] == k] for k in keys]
                    out.extend(parts)
                    queue.extend(tuple(p) for p in parts)
                    continue
            out.append(X)
        cells = out
        if len(cells) == n:
            break
    return cells


def _target(cells):
    """First smallest non-singleton cell."""
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(adj, cells, t, v, n):
    new = cells[:t] + [[v], [x for x in cells[t] if x != v]] + cells[t + 1:]
    return refine(adj, new, n, splitters=[[v]])


@dataclass
class AutomorphismResult:
    group: PermGroup
    base: list[int]
    orbit_sizes: list[int]
    nodes: int

    @property
    def order(self) -> int:
        out = 1
        for s in self.orbit_sizes:
            out *= s
        return out


def automorphism_search(graph: Graph, budget: SubgroupSearchBudget | None = None) -> AutomorphismResult:
    n = graph.n
    if n > MAX_VERTICES:
        raise ValueError(f"graph has more than {MAX_VERTICES} vertices")
    adj = graph.adjacency
    meter = _Meter(budget)
    # start from degree classes, then refine
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(len(adj[v]), []).append(v)
    cells = refine(adj, [by_deg[d] for d in sorted(by_deg)], n)
    path = []  # (cells, target index, chosen vertex)
    while len(cells) < n:
        t = _target(cells)
        v = min(cells[t])
        path.append((cells, t, v))
        cells = _individualize(adj, cells, t, v, n)
    leaf1 = [c[0] for c in cells]
    shapes = [[len(c) for c in p[0]] for p in path] + [[1] * n]
    base = [v for _, _, v in path]

    def search(cells, depth):
        meter.tick()
        if [len(c) for c in cells] != shapes[depth]:
            return None
        if len(cells) == n:
            gamma = [0] * n
            for a, b in zip(leaf1, (c[0] for c in cells)):
                gamma[a] = b
            gamma = tuple(gamma)
            return gamma if graph.is_automorphism(gamma) else None
        t = path[depth][1]
        for w in sorted(cells[t]):
            res = search(_individualize(adj, cells, t, w, n), depth + 1)
            if res is not None:
                return res
        return None

    K = StabilizerChain(n, [], base)
    for d in reversed(range(len(path))):
        cells_d, t, b = path[d]
        failed: set[int] = set()
        for v in sorted(cells_d[t]):
            if v == b or v in K.transversal[d] or v in failed:
                continue
            gamma = search(_individualize(adj, cells_d, t, v, n), d + 1)
            if gamma is None:
                failed |= orbit_of(K.strong[d], v)
            else:
                K.extend(gamma)
    G = PermGroup.from_chain(K, name="Aut")
    sizes = [len(K.transversal[i]) for i in range(len(base))]
    return AutomorphismResult(G, base, sizes, meter.nodes)


def graph_automorphisms(graph: Graph, budget: SubgroupSearchBudget | None = None) -> PermGroup:
    """The full automorphism group; every generator is checked on all edges."""
    res = automorphism_search(graph, budget)
    G = res.group
    for g in G.generators:
        if not graph.is_automorphism(g):
            raise RuntimeError("search returned a non-automorphism")
    if StabilizerChain(graph.n, G.generators).order() != res.order:
        raise RuntimeError("automorphism group order cross-check failed")
    return G


__all__ = ["graph_automorphisms", "automorphism_search", "refine", "BudgetExceeded"]
