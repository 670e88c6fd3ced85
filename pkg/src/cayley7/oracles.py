"""Brute-force reference computations over explicit element lists."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .perm import conj, identity, inv, mul


def closure(gens: Iterable[Sequence[int]], degree: int) -> frozenset:
    """All elements of <gens>, by breadth-first multiplication."""
    gens = [tuple(g) for g in gens]
    e = identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def normalizer(M: frozenset, H: frozenset) -> frozenset:
    return frozenset(g for g in M if all(conj(h, g) in H for h in H))


def centralizer(M: frozenset, H: frozenset) -> frozenset:
    return frozenset(g for g in M if all(mul(h, g) == mul(g, h) for h in H))


def core(M: frozenset, H: frozenset) -> frozenset:
    out = set(H)
    for g in M:
        out &= {conj(h, g) for h in H}
    return frozenset(out)


def conjugacy_class_sizes(G: frozenset) -> list[int]:
    left = set(G)
    sizes = []
    while left:
        x = next(iter(left))
        cls = {conj(x, g) for g in G}
        left -= cls
        sizes.append(len(cls))
    return sorted(sizes)


def orbit(gens: Sequence[Sequence[int]], point: int) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            if g[x] not in seen:
                seen.add(g[x])
                stack.append(g[x])
    return seen


def is_semiregular(G: frozenset) -> bool:
    return all(all(g[x] != x for x in range(len(g))) for g in G if g != identity(len(g)))


def coset_graph_edges(M: frozenset, H: frozenset, g: Sequence[int]):
    """Right cosets of H and the edges Hx ~ Hy with y x^-1 in HgH or Hg^-1H."""
    cosets = []
    seen = set()
    for x in sorted(M):
        c = frozenset(mul(h, x) for h in H)
        if c not in seen:
            seen.add(c)
            cosets.append(c)
    index = {x: i for i, c in enumerate(cosets) for x in c}
    double = {mul(mul(a, tuple(g)), b) for a in H for b in H}
    double |= {inv(d) for d in double}
    edges = set()
    for i, c in enumerate(cosets):
        x = min(c)
        for y in M:
            if mul(y, inv(x)) in double:
                j = index[y]
                if i != j:
                    edges.add((min(i, j), max(i, j)))
    return len(cosets), edges
