"""Backtrack searches over stabilizer chains.

Subgroup searches build the answer bottom-up along the base of the ambient
chain.  For each level they look for one element per new orbit point,
descending through the cosets of deeper levels.  Refiners prune partial base
images, and a leaf test decides membership exactly, so refiners only affect
speed.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .chain import StabilizerChain
from .groups import PermGroup, orbit_of
from .perm import conj, cycle_type, identity, inv, is_identity, mul, order as perm_order, power


@dataclass
class SubgroupSearchBudget:
    node_limit: int | None = 20_000_000
    time_limit: float | None = None


class BudgetExceeded(RuntimeError):
    """A search ran out of nodes or time; the answer is unknown."""


class _Meter:
    def __init__(self, budget: SubgroupSearchBudget | None):
        budget = budget or SubgroupSearchBudget()
        self.limit = budget.node_limit
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded(f"node limit {self.limit} reached")
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time limit reached")


# -- refiners ---------------------------------------------------------------
#
# A refiner sees the base of the ambient chain through bind() and then
# answers ok(images) for prefixes of base images.  False means no element of
# the searched set maps the base prefix to those images.


class IntersectionRefiner:
    """Prefix images must be realised by some element of H."""

    def __init__(self, H: PermGroup):
        self.H = H

    def bind(self, chain: StabilizerChain) -> None:
        self.base = chain.base
        self.hc = StabilizerChain(chain.degree, self.H.strong_generators(), chain.base)
        e = identity(chain.degree)
        self.stack = [(None, e, e)]  # (image, h, h^-1) per depth

    def ok(self, images: Sequence[int]) -> bool:
        stack = self.stack
        depth = 0
        while depth + 1 < len(stack) and depth < len(images) and stack[depth + 1][0] == images[depth]:
            depth += 1
        del stack[depth + 1:]
        hc = self.hc
        for level in range(depth, len(images)):
            _, h, hinv = stack[-1]
            d = hinv[images[level]]
            trans = hc.transversal[level]
            if d not in trans:
                return False
            stack.append((images[level], mul(trans[d], h), mul(hinv, hc.inverse_transversal(level, d))))
        return True


class ConjugationRefiner:
    """Searches g with s^g = t for each pair (s, t); s = t gives centralizers."""

    def __init__(self, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]):
        self.pairs = [(tuple(s), tuple(t), inv(s), inv(t)) for s, t in pairs]

    def bind(self, chain: StabilizerChain) -> None:
        self.base = chain.base
        self.n = chain.degree

    def ok(self, images: Sequence[int]) -> bool:
        fwd: dict[int, int] = {}
        back: dict[int, int] = {}
        queue = deque()
        for b, c in zip(self.base, images):
            queue.append((b, c))
        while queue:
            p, q = queue.popleft()
            if p in fwd:
                if fwd[p] != q:
                    return False
                continue
            if q in back:
                return False
            fwd[p] = q
            back[q] = p
            for s, t, si, ti in self.pairs:
                queue.append((s[p], t[q]))
                queue.append((si[p], ti[q]))
        return True

    def leaf(self, g: Sequence[int]) -> bool:
        return all(conj(s, g) == t for s, t, _, _ in self.pairs)


class NormalizerRefiner:
    """g with H^g = K: orbit sizes of pointwise stabilizers must correspond."""

    def __init__(self, H: PermGroup, K: PermGroup | None = None):
        self.H = H
        self.K = K if K is not None else H
        self._cache: dict = {}

    def bind(self, chain: StabilizerChain) -> None:
        self.base = chain.base
        self.n = chain.degree
        self._src = [self._profile(self.H, self.base[:l]) for l in range(len(self.base) + 1)]

    def _profile(self, G: PermGroup, pts: Sequence[int]):
        key = (id(G), frozenset(pts))
        got = self._cache.get(key)
        if got is None:
            if pts:
                ch = StabilizerChain(self.n, G.strong_generators(), tuple(pts))
                gens = ch.strong[len(pts)] if len(ch.strong) > len(pts) else []
            else:
                gens = G.strong_generators()
            size = [0] * self.n
            seen = [False] * self.n
            for p in range(self.n):
                if not seen[p]:
                    orb = orbit_of(gens, p)
                    for x in orb:
                        seen[x] = True
                        size[x] = len(orb)
            got = (size, tuple(sorted(size)))
            self._cache[key] = got
        return got

    def ok(self, images: Sequence[int]) -> bool:
        for l in range(len(images)):
            src_size, src_sig = self._src[l]
            dst_size, dst_sig = self._profile(self.K, images[:l])
            if src_sig != dst_sig or src_size[self.base[l]] != dst_size[images[l]]:
                return False
        src_size, src_sig = self._src[len(images)]
        dst_size, dst_sig = self._profile(self.K, images)
        return src_sig == dst_sig

    def leaf(self, g: Sequence[int]) -> bool:
        return all(self.K.contains(conj(h, g)) for h in self.H.generators)


class PartitionRefiner:
    """g must permute the blocks of a partition."""

    def __init__(self, blocks: Sequence[Sequence[int]], degree: int):
        self.blocks = [tuple(b) for b in blocks]
        self.block_of = [-1] * degree
        for i, b in enumerate(self.blocks):
            for x in b:
                self.block_of[x] = i

    def bind(self, chain: StabilizerChain) -> None:
        self.base = chain.base

    def ok(self, images: Sequence[int]) -> bool:
        fwd: dict[int, int] = {}
        back: dict[int, int] = {}
        bo = self.block_of
        for b, c in zip(self.base, images):
            i, j = bo[b], bo[c]
            if (i < 0) != (j < 0):
                return False
            if i < 0:
                continue
            if fwd.setdefault(i, j) != j or back.setdefault(j, i) != i:
                return False
            if len(self.blocks[i]) != len(self.blocks[j]):
                return False
        return True

    def leaf(self, g: Sequence[int]) -> bool:
        bo = self.block_of
        for blk in self.blocks:
            j = bo[g[blk[0]]]
            if j < 0 or any(bo[g[x]] != j for x in blk):
                return False
        return True


# -- search engine ----------------------------------------------------------


def _descend(chain, level, x, images, refiners, leaf, meter):
    meter.tick()
    if level == len(chain.base):
        return x if leaf(x) else None
    trans = chain.transversal[level]
    for c, d in sorted((x[d], d) for d in trans):
        images.append(c)
        if all(r.ok(images) for r in refiners):
            res = _descend(chain, level + 1, mul(trans[d], x), images, refiners, leaf, meter)
            if res is not None:
                images.pop()
                return res
        images.pop()
    return None


def subgroup_search(G: PermGroup, leaf: Callable[[tuple], bool], refiners=(),
                    known: Iterable[Sequence[int]] = (), budget=None) -> PermGroup:
    """The subgroup {g in G : leaf(g)}; leaf must define a subgroup.

    ``known`` elements are assumed to satisfy leaf and seed the result.
    """
    ch = G.chain
    n = G.degree
    base = ch.base
    for r in refiners:
        r.bind(ch)
    meter = _Meter(budget)
    K = StabilizerChain(n, [], base)
    for g in known:
        K.extend(g)
    for i in reversed(range(len(base))):
        b = base[i]
        failed: set[int] = set()
        for gamma in sorted(ch.transversal[i]):
            if gamma == b or gamma in K.transversal[i] or gamma in failed:
                continue
            images = list(base[:i]) + [gamma]
            x = None
            if all(r.ok(images) for r in refiners):
                x = _descend(ch, i + 1, ch.transversal[i][gamma], images, refiners, leaf, meter)
            if x is None:
                failed |= orbit_of(K.strong[i], gamma)
            else:
                K.extend(x)
    return PermGroup.from_chain(K)


def find_element(G: PermGroup, leaf: Callable[[tuple], bool], refiners=(), budget=None):
    """First element of G (in search order) passing leaf, or None."""
    ch = G.chain
    for r in refiners:
        r.bind(ch)
    return _descend(ch, 0, identity(G.degree), [], list(refiners), leaf, _Meter(budget))


# -- operations -------------------------------------------------------------


def _check_subgroup(H: PermGroup, G: PermGroup) -> None:
    if H.degree != G.degree:
        raise ValueError("degree mismatch")
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")


def intersection(G: PermGroup, H: PermGroup, budget=None) -> PermGroup:
    if G.degree != H.degree:
        raise ValueError("degree mismatch")
    if H.order() < G.order():
        G, H = H, G
    if H.order() % G.order() == 0 and G.is_subgroup_of(H):
        return G
    return subgroup_search(G, H.contains, [IntersectionRefiner(H)], budget=budget)


SMALL_NORMALIZER = 2000


def normalizer(M: PermGroup, H: PermGroup, budget=None) -> PermGroup:
    _check_subgroup(H, M)
    if 1 < H.order() <= SMALL_NORMALIZER:
        return _normalizer_by_images(M, H, budget)
    ref = NormalizerRefiner(H)
    return subgroup_search(M, ref.leaf, [ref], known=H.generators, budget=budget)


def _normalizer_by_images(M: PermGroup, H: PermGroup, budget=None) -> PermGroup:
    """N_M(H) for small H from the possible images of a generating pair.

    An element of N_M(H) sends (a, b) to a generating pair of H, so up to
    H-conjugacy a goes to a class representative.  Each admissible image
    pair is realised by a coset of C_M(H) or by nothing.
    """
    a, b = generating_pair(H)
    order_h = H.order()
    elems = list(H.chain.elements())
    ct_a, ct_b, o_ab = cycle_type(a), cycle_type(b), perm_order(mul(a, b))
    reps, seen = [], set()
    for x in elems:
        if x in seen or cycle_type(x) != ct_a:
            continue
        reps.append(x)
        seen |= {conj(x, h) for h in elems}
    gens = list(H.generators) + list(centralizer_in_group(M, H, budget).generators)
    for ta in reps:
        for tb in elems:
            if cycle_type(tb) != ct_b or perm_order(mul(ta, tb)) != o_ab:
                continue
            if PermGroup([ta, tb], degree=H.degree).order() != order_h:
                continue
            ref = ConjugationRefiner([(a, ta), (b, tb)])
            g = find_element(M, ref.leaf, [ref], budget)
            if g is not None:
                gens.append(g)
    return PermGroup(gens, degree=M.degree)


def centralizer_in_group(M: PermGroup, H: PermGroup, budget=None) -> PermGroup:
    if M.degree != H.degree:
        raise ValueError("degree mismatch")
    gens = [h for h in H.generators if not is_identity(h)]
    if not gens:
        return M
    ref = ConjugationRefiner([(h, h) for h in gens])
    known = [g for g in M.generators if ref.leaf(g)]
    return subgroup_search(M, ref.leaf, [ref], known=known, budget=budget)


def is_conjugate_in(G: PermGroup, x: Sequence[int], y: Sequence[int], budget=None):
    """An element g of G with x^g = y, or None."""
    if cycle_type(x) != cycle_type(y):
        return None
    ref = ConjugationRefiner([(x, y)])
    return find_element(G, ref.leaf, [ref], budget=budget)


def conjugating_element(G: PermGroup, H: PermGroup, K: PermGroup, budget=None):
    """An element g of G with H^g = K, or None."""
    if H.order() != K.order():
        return None
    ref = NormalizerRefiner(H, K)
    return find_element(G, ref.leaf, [ref], budget=budget)


def partition_stabilizer(G: PermGroup, blocks: Sequence[Sequence[int]], budget=None) -> PermGroup:
    ref = PartitionRefiner(blocks, G.degree)
    known = [g for g in G.generators if ref.leaf(g)]
    return subgroup_search(G, ref.leaf, [ref], known=known, budget=budget)


def centralizer_in_sym(G: PermGroup) -> PermGroup:
    """Centralizer of a transitive group in the full symmetric group.

    A centralizing permutation is fixed by its image q of point 0, and q
    must be fixed by the stabilizer of 0.
    """
    n = G.degree
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    ch = G.chain_with_base((0,))
    trans = ch.transversal[0]
    stab = ch.strong[1] if len(ch.strong) > 1 else []
    fixed = [q for q in range(n) if all(s[q] == q for s in stab)]
    C = StabilizerChain(n, [])
    for q in fixed:
        if q == 0:
            continue
        c = [0] * n
        for p, u in trans.items():
            c[p] = u[q]
        C.extend(tuple(c))
    return PermGroup.from_chain(C)


# -- cosets -----------------------------------------------------------------


class CosetCanon:
    """Canonical representatives of right cosets Hg (least base images)."""

    def __init__(self, H: PermGroup):
        self.chain = StabilizerChain(H.degree, H.strong_generators())

    def __call__(self, g: Sequence[int]) -> tuple:
        g = tuple(g)
        ch = self.chain
        for level, trans in enumerate(ch.transversal):
            best = None
            for d in trans:
                img = g[d]
                if best is None or img < best[0]:
                    best = (img, d)
            if best[1] != ch.base[level]:
                g = mul(trans[best[1]], g)
        return g


def right_transversal(G: PermGroup, H: PermGroup, check: bool = True) -> list[tuple]:
    """One canonical representative per right coset Hg, identity first."""
    if check:
        _check_subgroup(H, G)
    canon = CosetCanon(H)
    start = canon(G.identity())
    reps = [start]
    seen = {start}
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for s in G.generators:
            c = canon(mul(r, s))
            if c not in seen:
                seen.add(c)
                reps.append(c)
    return reps


def coset_action(G: PermGroup, H: PermGroup, check: bool = True):
    """(reps, images of G.generators acting on the right cosets of H)."""
    reps = right_transversal(G, H, check=check)
    canon = CosetCanon(H)
    index = {r: i for i, r in enumerate(reps)}
    acts = [tuple(index[canon(mul(r, s))] for r in reps) for s in G.generators]
    return reps, acts


def _diagonal(gens_a, gens_b):
    na = len(gens_a[0])
    return [tuple(a) + tuple(na + x for x in b) for a, b in zip(gens_a, gens_b)]


def kernel_of_action(G: PermGroup, images: Sequence[Sequence[int]]) -> PermGroup:
    """Kernel of the homomorphism sending G.generators to images."""
    n = G.degree
    k = len(images[0])
    diag = _diagonal(G.generators, images)
    ch = StabilizerChain(n + k, diag, tuple(range(n, n + k)))
    gens = ch.strong[k] if len(ch.strong) > k else []
    return PermGroup([g[:n] for g in gens], degree=n)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    _check_subgroup(H, G)
    if H.order() == G.order():
        return G
    _, acts = coset_action(G, H, check=False)
    return kernel_of_action(G, acts)


# -- low index subgroups ----------------------------------------------------


def generating_pair(G: PermGroup, seed: int = 0, tries: int = 2000):
    """Two elements generating G (seeded random search)."""
    gens = G.generators
    if len(gens) <= 2:
        return list(gens) + [G.identity()] * (2 - len(gens))
    n = G.order()
    rng = random.Random(seed)
    for _ in range(tries):
        a, b = G.random_element(rng), G.random_element(rng)
        if PermGroup([a, b], degree=G.degree).order() == n:
            return [a, b]
    raise ValueError("no generating pair found")


_WORDS = [(0,), (1,), (0, 1), (0, -1), (0, 0, 1), (0, 1, 1), (0, 0, 1, 1),
          (0, 1, -1), (0, 1, 0, -1), (0, 0, -1), (0, -1, -1), (0, 1, 0, 1, 1)]


def _word(word, a, b):
    ai, bi = inv(a), inv(b)
    out = identity(len(a))
    for w in word:
        out = mul(out, {0: a, 1: b, -1: bi, -2: ai}[w])
    return out


def _partitions(k, maxpart=None):
    if maxpart is None:
        maxpart = k
    if k == 0:
        yield ()
        return
    for p in range(min(k, maxpart), 0, -1):
        for rest in _partitions(k - p, p):
            yield (p,) + rest


def _cycle_rep(shape, k):
    cyc, pos = [], 0
    for ln in shape:
        cyc.append(tuple(range(pos, pos + ln)))
        pos += ln
    from .perm import from_cycles
    return from_cycles(cyc, k)


def low_index_subgroups(G: PermGroup, k: int, seed: int = 0) -> list[PermGroup]:
    """One subgroup per conjugacy class of subgroups of index exactly k."""
    if k < 1 or k > 12:
        raise ValueError("index must be between 1 and 12")
    if G.order() > 10**5:
        raise ValueError("group too large for low-index enumeration")
    if G.order() % k:
        return []
    if k == 1:
        return [G]
    a, b = generating_pair(G, seed)
    pair_group = PermGroup([a, b], degree=G.degree)
    target = [_word(w, a, b) for w in _WORDS]
    target_orders = [perm_order(t) for t in target]
    oa, ob = perm_order(a), perm_order(b)
    N = G.order()
    out = []
    sym = list(itertools.permutations(range(k)))
    for shape in _partitions(k):
        if oa % math.lcm(*shape):
            continue
        x1 = _cycle_rep(shape, k)
        cent = [c for c in sym if conj(x1, c) == x1]
        seen: set = set()
        for x2 in sym:
            if x2 in seen:
                continue
            for c in cent:
                seen.add(conj(x2, c))
            if ob % perm_order(x2):
                continue
            if any(to % perm_order(_word(w, x1, x2)) for w, to in zip(_WORDS, target_orders)):
                continue
            if len(orbit_of([x1, x2], 0)) != k:
                continue
            diag = PermGroup(_diagonal([a, b], [x1, x2]), degree=G.degree + k)
            if diag.order() != N:
                continue
            stab = diag.point_stabilizer(G.degree)
            H = PermGroup([g[:G.degree] for g in stab.generators], degree=G.degree)
            out.append(H)
    return out


# -- exhaustive subgroups of a given order ----------------------------------

EXHAUSTIVE_LIMIT = 21000


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def sylow_subgroup(G: PermGroup, p: int, seed: int = 0) -> PermGroup:
    """A Sylow p-subgroup grown from p-elements of normalizers."""
    target = _p_part(G.order(), p)
    rng = random.Random(seed)
    P = PermGroup([], degree=G.degree)
    while P.order() < target:
        N = normalizer(G, P) if P.order() > 1 else G
        while True:
            x = N.random_element(rng)
            o = perm_order(x)
            if o % p:
                continue
            x = power(x, o // _p_part(o, p))
            if P.contains(x):
                continue
            Q = PermGroup(P.generators + [x], degree=G.degree)
            if _p_part(Q.order(), p) == Q.order():
                P = Q
                break
    return P


class _ElementSet:
    def __init__(self, G: PermGroup):
        self.elems = sorted(G.chain.elements())
        self.orders = {g: perm_order(g) for g in self.elems}


def _closure(H: frozenset, hgens, x, limit):
    """Elements of <H, x> as a union of right H-cosets, or None past limit."""
    Hl = list(H)
    K = set(H)
    gens = list(hgens) + [x]
    frontier = [x]
    while frontier:
        r = frontier.pop()
        if r in K:
            continue
        for h in Hl:
            K.add(mul(h, r))
        if len(K) > limit:
            return None
        for g in gens:
            frontier.append(mul(r, g))
    return frozenset(K)


def _signature(elems: frozenset):
    hist: dict[int, int] = {}
    for g in elems:
        o = perm_order(g)
        hist[o] = hist.get(o, 0) + 1
    return (len(elems), tuple(sorted(hist.items())))


def subgroups_of_order_exhaustive(G: PermGroup, m: int) -> list[PermGroup]:
    """One subgroup per G-conjugacy class of subgroups of order m.

    Every such subgroup contains a conjugate of a fixed Sylow p-subgroup P
    (p the largest prime whose full power divides m), so candidates are grown
    from P and identified up to conjugacy under N_G(P).
    """
    N = G.order()
    if N > EXHAUSTIVE_LIMIT:
        raise ValueError("group beyond the exhaustive regime")
    if m < 1 or N % m:
        return []
    if m == N:
        return [G]
    full = [p for p in _primes(m) if _p_part(m, p) == _p_part(N, p)]
    if full:
        P = sylow_subgroup(G, max(full))
    else:
        P = PermGroup([], degree=G.degree)
    NP = normalizer(G, P) if P.order() > 1 else G
    np_elems = list(NP.chain.elements())
    es = _ElementSet(G)
    cands = [g for g in es.elems if m % es.orders[g] == 0]

    def conj_set(S, g):
        return frozenset(conj(s, g) for s in S)

    def find_class(S, bucket):
        for T in bucket:
            if any(conj_set(S, g) == T for g in np_elems):
                return T
        return None

    start = frozenset(P.chain.elements())
    results: list[frozenset] = [start] if len(start) == m else []
    seen: dict = {_signature(start): [start]}
    todo = deque([start])
    gens_of = {start: list(P.generators)}
    while todo:
        H = todo.popleft()
        if len(H) == m:
            continue
        covered = set(H)
        for x in cands:
            if x in covered:
                continue
            # the right coset Hx gives the same closure for every element
            for h in H:
                covered.add(mul(h, x))
            K = _closure(H, gens_of[H], x, m)
            if K is None or m % len(K):
                continue
            sig = _signature(K)
            bucket = seen.setdefault(sig, [])
            if find_class(K, bucket) is not None:
                continue
            bucket.append(K)
            gens_of[K] = gens_of[H] + [x]
            if len(K) == m:
                results.append(K)
            else:
                todo.append(K)
    out = []
    for K in results:
        out.append(PermGroup(gens_of[K], degree=G.degree))
    return out
