"""Finite simple graphs, Cayley and coset graphs, s-arcs and quotients."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import PermGroup, orbit_of
from .perm import inv, mul, order as perm_order


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with sorted adjacency."""

    vertex_count: int
    adjacency: tuple

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length mismatch")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} not sorted and distinct")
            if v in nbrs:
                raise ValueError(f"loop at {v}")
            for u in nbrs:
                if not 0 <= u < self.vertex_count or v not in self.adjacency[u]:
                    raise ValueError(f"edge {v}-{u} not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("loop")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    @property
    def n(self) -> int:
        return self.vertex_count

    def neighbours(self, v: int) -> tuple:
        return self.adjacency[v]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adjacency[u]
        i = _bisect(nb, v)
        return i < len(nb) and nb[i] == v

    def valency(self):
        """Common degree, or None if the graph is not regular."""
        degs = {len(a) for a in self.adjacency}
        return degs.pop() if len(degs) == 1 else None

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def is_automorphism(self, p: Sequence[int]) -> bool:
        return all(self.has_edge(p[u], p[v]) for u, v in self.edges())

    def to_edge_list(self) -> str:
        edges = self.edges()
        lines = [f"p graph {self.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        lines = [l.split() for l in text.splitlines() if l.strip()]
        if not lines or lines[0][:2] != ["p", "graph"]:
            raise ValueError("missing 'p graph' header")
        n, m = int(lines[0][2]), int(lines[0][3])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
        if len(edges) != m:
            raise ValueError("edge count does not match header")
        return cls.from_edges(n, edges)


def _bisect(seq, x):
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(tuple(u for u in range(n) if u != v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def check_action(graph: Graph, X: PermGroup) -> None:
    if X.degree != graph.n:
        raise ValueError("group degree differs from vertex count")
    for g in X.generators:
        if not graph.is_automorphism(g):
            raise ValueError("generator is not a graph automorphism")


# -- Cayley graphs --------------------------------------------------------------


@dataclass
class CayleyGraph:
    graph: Graph
    elements: list[tuple]  # vertex i is elements[i]
    R: PermGroup  # x -> xg
    L: PermGroup  # x -> g^-1 x


def cayley_graph(G: PermGroup, S: Iterable[Sequence[int]], max_order: int = 20000) -> CayleyGraph:
    """Cay(G, S): x ~ y iff y x^-1 in S.  Vertices in breadth-first order
    from the identity over sorted S, then any remaining elements likewise."""
    S = sorted({tuple(s) for s in S})
    if G.order() > max_order:
        raise ValueError("group too large for a Cayley graph")
    e = G.identity()
    Sset = set(S)
    if e in Sset:
        raise ValueError("identity in S")
    for s in S:
        if inv(s) not in Sset:
            raise ValueError("S is not inverse-closed")
        if not G.contains(s):
            raise ValueError("S is not contained in G")
    elems: list[tuple] = []
    index: dict[tuple, int] = {}
    rest = sorted(G.chain.elements())
    for start in rest:
        if start in index:
            continue
        index[start] = len(elems)
        elems.append(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for s in S:
                y = mul(s, x)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    queue.append(y)
    adj = []
    for x in elems:
        adj.append(tuple(sorted(index[mul(s, x)] for s in S)))
    graph = Graph(len(elems), tuple(adj))
    R = PermGroup([tuple(index[mul(x, g)] for x in elems) for g in G.generators],
                  degree=len(elems), name="R")
    L = PermGroup([tuple(index[mul(inv(g), x)] for x in elems) for g in G.generators],
                  degree=len(elems), name="L")
    return CayleyGraph(graph, elems, R, L)


# -- coset graphs ---------------------------------------------------------------


class DegenerateCosetGraph(ValueError):
    """g lies in H, so the double coset gives loops rather than edges."""


@dataclass
class CosetGraph:
    graph: Graph
    action: PermGroup  # M acting on the right cosets of H
    reps: list[tuple]
    g_order: int

    @property
    def valency(self):
        return self.graph.valency()


def coset_graph(M: PermGroup, H: PermGroup, g: Sequence[int]) -> CosetGraph:
    """Cos(M, H, HgH): Hx ~ Hy iff y x^-1 in HgH or Hg^-1H."""
    from .search import CosetCanon, coset_action, core

    g = tuple(g)
    if not M.contains(g):
        raise ValueError("g is not in M")
    if not H.is_subgroup_of(M):
        raise ValueError("H is not a subgroup of M")
    if H.contains(g):
        raise DegenerateCosetGraph("g lies in H")
    if core(M, H).order() != 1:
        raise ValueError("H is not core-free in M")
    reps, acts = coset_action(M, H, check=False)
    canon = CosetCanon(H)
    index = {r: i for i, r in enumerate(reps)}
    action = PermGroup(acts, degree=len(reps), name="coset action")
    h_acts = [tuple(index[canon(mul(r, h))] for r in reps) for h in H.generators]
    start = {index[canon(g)], index[canon(inv(g))]}
    nbrs0: set[int] = set()
    for s in start:
        nbrs0 |= orbit_of(h_acts, s)
    ch = action.chain_with_base((0,))
    trans = ch.transversal[0]
    adj = [set() for _ in reps]
    for v, u in trans.items():
        adj[v] = {u[w] for w in nbrs0}
    if len(trans) != len(reps):
        raise ValueError("coset action is not transitive")
    graph = Graph(len(reps), tuple(tuple(sorted(a)) for a in adj))
    return CosetGraph(graph, action, reps, perm_order(g))


# -- s-arcs -----------------------------------------------------------------------


def _first_s_arc(graph: Graph, s: int):
    arc = [0]
    for i in range(s):
        nbrs = [u for u in graph.neighbours(arc[-1]) if i == 0 or u != arc[-2]]
        if not nbrs:
            return None
        arc.append(nbrs[0])
    return arc


def count_s_arcs(graph: Graph, s: int) -> int:
    k = graph.valency()
    if k is None:
        raise ValueError("graph is not regular")
    if s == 0:
        return graph.n
    return graph.n * k * (k - 1) ** (s - 1)


def s_arc_transitivity(X: PermGroup, graph: Graph, s_max: int = 3, limit: int = 10**7) -> int:
    """Largest s <= s_max with X transitive on s-arcs; 0 if not arc-transitive."""
    check_action(graph, X)
    if s_max > 3:
        raise ValueError("s_max at most 3")
    if not X.is_transitive() or graph.valency() in (None, 0):
        return 0
    order = X.order()
    best = 0
    for s in range(1, s_max + 1):
        total = count_s_arcs(graph, s)
        if total > limit:
            raise OverflowError("too many s-arcs")
        arc = _first_s_arc(graph, s)
        pts = list(dict.fromkeys(arc))
        stab = X.pointwise_stabilizer(pts).order()
        if order // stab != total:
            break
        best = s
    return best


def vertex_stabilizer_order(X: PermGroup, v: int = 0) -> int:
    return X.order() // len(X.orbit(v))


# -- normal quotients -----------------------------------------------------------


@dataclass
class CoverReport:
    orbit_count: int
    semiregular: bool
    quotient_valency: int | None
    valency_preserved: bool
    normal_cover: bool
    reason: str = ""


def quotient_graph(graph: Graph, X: PermGroup, N: PermGroup):
    """(quotient graph or None, CoverReport) for the orbits of N."""
    check_action(graph, X)
    if not N.is_normal_in(X):
        raise ValueError("N is not normal in the acting group")
    orbits = N.orbits()
    if len(orbits) <= 2:
        return None, CoverReport(len(orbits), False, None, False, False,
                                 "N has at most two orbits")
    block = [0] * graph.n
    for i, o in enumerate(orbits):
        for v in o:
            block[v] = i
    edges = set()
    for u, v in graph.edges():
        a, b = block[u], block[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    Q = Graph.from_edges(len(orbits), edges)
    n_order = N.order()
    semireg = all(len(o) == n_order for o in orbits)
    qv = Q.valency()
    kept = qv is not None and qv == graph.valency()
    return Q, CoverReport(len(orbits), semireg, qv, kept, semireg and kept)


def bipartite_double_cover(graph: Graph):
    """(cover, deck involution): vertex (v, i) is v + i*n, joined to (u, 1-i)."""
    n = graph.n
    edges = []
    for u, v in graph.edges():
        edges += [(u, v + n), (v, u + n)]
    deck = tuple(list(range(n, 2 * n)) + list(range(n)))
    return Graph.from_edges(2 * n, edges), deck


def lift_to_double_cover(p: Sequence[int]) -> tuple:
    n = len(p)
    return tuple(list(p) + [x + n for x in p])
