"""Deterministic Schreier-Sims stabilizer chains.

Base points are chosen by the smallest-moved-point rule after an optional
caller-supplied prefix, so two chains built from the same generator list are
identical.  Transversals are stored explicitly (point -> coset
representative mapping the base point to that point).
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .perm import identity, inv, is_identity, mul


def _first_moved(p: Sequence[int]) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group.

    Level ``i`` describes ``G^(i)``, the pointwise stabilizer of
    ``base[:i]``: ``strong[i]`` generates it and ``transversal[i]`` maps each
    point of the orbit of ``base[i]`` under it to a coset representative.
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (),
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        self.transversal: list[dict[int, tuple]] = []
        self._inverse: list[dict[int, tuple]] = []
        self._checked: list[set] = []
        self._id = identity(degree)
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        for b in base_prefix:
            if b in self.base:
                raise ValueError("repeated base point")
            self._new_level(b)
        gens = [g for g in gens if not is_identity(g)]
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_level(_first_moved(g))
        for level, b in enumerate(self.base):
            prefix = self.base[:level]
            self.strong[level] = [g for g in gens if all(g[c] == c for c in prefix)]
            self._extend_orbit(level, self.strong[level])
        self._complete(len(self.base) - 1)

    # -- construction -------------------------------------------------

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.transversal.append({point: self._id})
        self._inverse.append({point: self._id})
        self._checked.append(set())

    def _extend_orbit(self, level: int, new_gens: Sequence[tuple]) -> None:
        trans = self.transversal[level]
        gens = self.strong[level]
        # old points only need the new generators, new points need all
        pending = []
        for beta in list(trans):
            u = trans[beta]
            for s in new_gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = mul(u, s)
                    pending.append(gamma)
        idx = 0
        while idx < len(pending):
            beta = pending[idx]
            idx += 1
            u = trans[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = mul(u, s)
                    pending.append(gamma)

    def _add_strong(self, h: tuple, start: int, stop: int) -> None:
        if stop == len(self.base):
            self._new_level(_first_moved(h))
        for level in range(start, stop + 1):
            self.strong[level].append(h)
            self._extend_orbit(level, [h])

    def _check_level(self, i: int):
        trans = self.transversal[i]
        gens = self.strong[i]
        done = self._checked[i]
        for beta in list(trans):
            u = trans[beta]
            for k, s in enumerate(gens):
                key = (beta, k)
                if key in done:
                    continue
                done.add(key)
                us = mul(u, s)
                ug = trans[s[beta]]
                if us == ug:
                    continue
                h, j = self.sift(mul(us, inv(ug)), i + 1)
                if not is_identity(h):
                    self._add_strong(h, i + 1, j)
                    return j
        return None

    def _complete(self, level: int) -> None:
        i = level
        while i >= 0:
            j = self._check_level(i)
            i = i - 1 if j is None else j

    def extend(self, g: Sequence[int]) -> bool:
        """Add a generator; returns False when g was already a member."""
        h, j = self.sift(tuple(g), 0)
        if is_identity(h):
            return False
        self._add_strong(h, 0, j)
        self._complete(j)
        return True

    # -- queries ------------------------------------------------------

    def inverse_transversal(self, level: int, point: int) -> tuple:
        cache = self._inverse[level]
        v = cache.get(point)
        if v is None:
            v = cache[point] = inv(self.transversal[level][point])
        return v

    def sift(self, g: Sequence[int], start: int = 0) -> tuple[tuple, int]:
        """Strip g through levels >= start; returns (residue, stopping level)."""
        h = tuple(g)
        for level in range(start, len(self.base)):
            beta = h[self.base[level]]
            if beta not in self.transversal[level]:
                return h, level
            if beta != self.base[level]:
                h = mul(h, self.inverse_transversal(level, beta))
        return h, len(self.base)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            raise ValueError("degree mismatch")
        h, _ = self.sift(g)
        return is_identity(h)

    def order(self) -> int:
        out = 1
        for t in self.transversal:
            out *= len(t)
        return out

    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.transversal]

    def strong_generators(self) -> list[tuple]:
        seen = []
        got = set()
        for gens in self.strong:
            for g in gens:
                if g not in got:
                    got.add(g)
                    seen.append(g)
        return seen

    def stabilizer_chain(self, level: int) -> "StabilizerChain":
        """The chain of G^(level), sharing transversal data."""
        sub = StabilizerChain.__new__(StabilizerChain)
        sub.degree = self.degree
        sub._id = self._id
        sub.base = self.base[level:]
        sub.strong = [list(s) for s in self.strong[level:]]
        sub.transversal = [dict(t) for t in self.transversal[level:]]
        sub._inverse = [dict(t) for t in self._inverse[level:]]
        sub._checked = [set(c) for c in self._checked[level:]]
        return sub

    def elements(self) -> Iterator[tuple]:
        """All elements, each as u_{k-1} ... u_1 u_0 (left to right)."""
        levels = [list(t.values()) for t in self.transversal]

        def rec(i: int, acc: tuple):
            if i < 0:
                yield acc
                return
            for u in levels[i]:
                yield from rec(i - 1, mul(acc, u))

        yield from rec(len(levels) - 1, self._id)

    def random_element(self, rng: random.Random) -> tuple:
        g = self._id
        for t in reversed(self.transversal):
            keys = list(t)
            g = mul(g, t[keys[rng.randrange(len(keys))]])
        return g
