"""Permutation groups given by generators, with a lazily built chain."""

from __future__ import annotations

import random
import threading
from collections import deque
from typing import Iterable, Sequence

from .chain import StabilizerChain
from .perm import Permutation, as_perm, conj, identity, inv, is_identity, mul, order as perm_order

ENUMERATION_LIMIT = 10**5
SAMPLING_LIMIT = 10**6


class PermGroup:
    """A permutation group of a fixed degree.

    The stabilizer chain is built on first use behind a lock, after which the
    group is read-only and can be shared between threads.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 name: str | None = None, base_prefix: Sequence[int] = ()):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = len(gens[0])
        if degree <= 0:
            raise ValueError("degree must be positive")
        for g in gens:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
            if sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._base_prefix = tuple(base_prefix)
        self._chain: StabilizerChain | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_chain(cls, chain: StabilizerChain, name: str | None = None) -> "PermGroup":
        G = cls(chain.strong_generators(), degree=chain.degree, name=name)
        G._chain = chain
        return G

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    # -- chain --------------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, self.generators,
                                                  self._base_prefix)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        """A fresh chain whose base starts with prefix."""
        return StabilizerChain(self.degree, self.strong_generators(), prefix)

    def strong_generators(self) -> list[tuple]:
        return self.chain.strong_generators() or list(self.generators)

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise ValueError("degree mismatch")
        return self.chain.contains(p)

    __contains__ = contains

    def identity(self) -> tuple:
        return identity(self.degree)

    def is_trivial(self) -> bool:
        return all(is_identity(g) for g in self.generators)

    def elements(self) -> list[tuple]:
        return list(self.chain.elements())

    def random_element(self, rng: random.Random) -> tuple:
        return self.chain.random_element(rng)

    # -- orbits -------------------------------------------------------

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError("point out of range")
        return orbit_of(self.generators, point)

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not seen[p]:
                orb = sorted(orbit_of(self.generators, p))
                for x in orb:
                    seen[x] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(orbit_of(self.generators, 0)) == self.degree

    def point_stabilizer(self, point: int) -> "PermGroup":
        if not 0 <= point < self.degree:
            raise ValueError("point out of range")
        ch = self.chain
        if ch.base and ch.base[0] == point:
            return PermGroup.from_chain(ch.stabilizer_chain(1))
        full = self.chain_with_base((point,))
        return PermGroup.from_chain(full.stabilizer_chain(1))

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        full = self.chain_with_base(tuple(points))
        return PermGroup.from_chain(full.stabilizer_chain(len(points)))

    # -- subgroups ----------------------------------------------------

    def subgroup(self, gens: Iterable[Sequence[int]], name=None) -> "PermGroup":
        return PermGroup(list(gens), degree=self.degree, name=name)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            self.contains(conj(h, g)) for h in self.generators for g in other.generators)

    def conjugate(self, g: Sequence[int]) -> "PermGroup":
        return PermGroup([conj(h, g) for h in self.generators], degree=self.degree)

    def is_perfect(self) -> bool:
        return derived_subgroup(self).order() == self.order()

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gs) for b in gs[i + 1:])


def orbit_of(gens: Sequence[Sequence[int]], point: int) -> set[int]:
    seen = {point}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# -- functional interface --------------------------------------------------

def build_chain(G: PermGroup) -> StabilizerChain:
    return G.chain


def membership_test(G: PermGroup, p: Sequence[int]) -> bool:
    return G.contains(p)


def orbit(G: PermGroup, point: int) -> set[int]:
    return G.orbit(point)


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    return G.point_stabilizer(point)


def normal_closure(G: PermGroup, H: PermGroup | Iterable[Sequence[int]]) -> PermGroup:
    """Smallest normal subgroup of G containing H."""
    gens = H.generators if isinstance(H, PermGroup) else [tuple(h) for h in H]
    for h in gens:
        if not G.contains(h):
            raise ValueError("H is not contained in G")
    gens = [h for h in gens if not is_identity(h)]
    N = StabilizerChain(G.degree, gens)
    todo = list(gens)
    i = 0
    while i < len(todo):
        h = todo[i]
        i += 1
        for g in G.generators:
            c = conj(h, g)
            if N.extend(c):
                todo.append(c)
    return PermGroup.from_chain(N) if todo else PermGroup([], degree=G.degree)


def commutator(a: Sequence[int], b: Sequence[int]) -> tuple:
    return mul(mul(inv(a), inv(b)), mul(a, b))


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
    comms = [c for c in comms if not is_identity(c)]
    if not comms:
        return PermGroup([], degree=G.degree)
    return normal_closure(G, comms)


def derived_series(G: PermGroup) -> list[PermGroup]:
    """[G, G', G'', ...] ending at the first repeat (or the trivial group)."""
    series = [G]
    while series[-1].order() > 1:
        D = derived_subgroup(series[-1])
        series.append(D)
        if D.order() == series[-2].order():
            break
    return series


def center(G: PermGroup) -> PermGroup:
    if G.order() <= ENUMERATION_LIMIT:
        gs = G.generators
        z = [g for g in G.chain.elements()
             if not is_identity(g) and all(mul(g, s) == mul(s, g) for s in gs)]
        return PermGroup(z, degree=G.degree)
    from .search import centralizer_in_group
    return centralizer_in_group(G, G)


def conjugacy_classes(G: PermGroup, seed: int = 0) -> list[tuple[Permutation, int]]:
    """(representative, size) for every class, ordered by element order, size, rep.

    Groups up to 10^5 are enumerated; up to 10^6 classes are found by random
    sampling and certified by centralizer orders summing to |G|.
    """
    n = G.order()
    if n <= ENUMERATION_LIMIT:
        classes = _classes_by_enumeration(G)
    elif n <= SAMPLING_LIMIT:
        classes = _classes_by_sampling(G, seed)
    else:
        raise ValueError(f"group order {n} beyond the conjugacy-class regime")
    classes.sort(key=lambda rs: (perm_order(rs[0]), rs[1], rs[0]))
    return [(as_perm(r), s) for r, s in classes]


def _classes_by_enumeration(G: PermGroup) -> list[tuple[tuple, int]]:
    elems = sorted(G.chain.elements())
    unseen = set(elems)
    out = []
    for x in elems:
        if x not in unseen:
            continue
        unseen.discard(x)
        cls = [x]
        i = 0
        while i < len(cls):
            y = cls[i]
            i += 1
            for g in G.generators:
                z = conj(y, g)
                if z in unseen:
                    unseen.discard(z)
                    cls.append(z)
        out.append((min(cls), len(cls)))
    return out


def _classes_by_sampling(G: PermGroup, seed: int) -> list[tuple[tuple, int]]:
    from .search import centralizer_in_group, is_conjugate_in
    from .perm import cycle_type

    rng = random.Random(seed)
    n = G.order()
    reps: list[tuple[tuple, int]] = [(G.identity(), 1)]
    total = 1
    tries = 0
    while total < n:
        tries += 1
        if tries > 200000:
            raise RuntimeError("class sampling did not converge")
        x = G.random_element(rng)
        ct = cycle_type(x)
        if any(cycle_type(r) == ct and is_conjugate_in(G, r, x) for r, _ in reps):
            continue
        size = n // centralizer_in_group(G, PermGroup([x], degree=G.degree)).order()
        reps.append((x, size))
        total += size
    if total != n:
        raise RuntimeError("class sizes do not sum to the group order")
    return reps


def is_simple(G: PermGroup) -> bool:
    n = G.order()
    if n == 1:
        raise ValueError("trivial group")
    for rep, _ in conjugacy_classes(G):
        if is_identity(rep):
            continue
        if normal_closure(G, [rep]).order() != n:
            return False
    return True
