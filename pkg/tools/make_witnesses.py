"""Regenerate the shipped witness files.

Mathieu generators are the standard library generators (shifted to 0-based
points).  The covering groups come from coset enumeration of a central
extension of an A7 presentation.  The stabilizer subgroups of M24 are found by
seeded search.  Every file is re-verified by ``load_witness`` afterwards.

Usage: python tools/make_witnesses.py [output_dir]
"""

from __future__ import annotations

import random
import sys
from collections import deque
from pathlib import Path

from cayley7.atlas import default_witness_dir, load_witness, write_witness
from cayley7.cosets import commutator_word, enumerate_cosets, evaluate_word, power_word
from cayley7.groups import PermGroup, orbit_of
from cayley7.perm import conj, from_cycles, mul, order
from cayley7.search import partition_stabilizer

A7_RELATORS = [[1, 1, 1], [2] * 5, [1, 2] * 7, [1, -2, 1, 2] * 2, [1, -2, -2, 1, 2, 2] * 2]
A7_IMAGES = [from_cycles([(0, 1, 2)], 7), from_cycles([(2, 3, 4, 5, 6)], 7)]


def one_based(cycles, n):
    return from_cycles([tuple(x - 1 for x in c) for c in cycles], n)


def mathieu():
    m11 = [one_based([range(1, 12)], 11), one_based([(3, 7, 11, 8), (4, 10, 5, 6)], 11)]
    m12 = [one_based([range(1, 12)], 12), one_based([(3, 7, 11, 8), (4, 10, 5, 6)], 12),
           one_based([(1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)], 12)]
    m24 = [one_based([range(1, 24)], 24),
           one_based([(3, 17, 10, 7, 9), (4, 13, 14, 19, 5), (8, 18, 11, 12, 23),
                      (15, 20, 22, 21, 16)], 24),
           one_based([(1, 24), (2, 23), (3, 12), (4, 16), (5, 18), (6, 10), (7, 20), (8, 14),
                      (9, 21), (11, 17), (13, 22), (15, 19)], 24)]
    return (PermGroup(m11, name="M11"), PermGroup(m12, name="M12"),
            PermGroup(m24[:2], degree=24, name="M23"), PermGroup(m24, name="M24"))


def a7_words():
    """Shortest word in the presentation generators for every element of A7."""
    a, b = A7_IMAGES
    letters = [(1, a), (2, b), (-1, evaluate_word([-1], A7_IMAGES)), (-2, evaluate_word([-2], A7_IMAGES))]
    start = tuple(range(7))
    words = {start: []}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for l, g in letters:
            y = mul(x, g)
            if y not in words:
                words[y] = words[x] + [l]
                queue.append(y)
    return words


def _normalizing_word(words, cword, ordr, total):
    c = evaluate_word(cword, A7_IMAGES)
    C = PermGroup([c])
    for t, w in sorted(words.items(), key=lambda kv: (len(kv[1]), kv[1])):
        if order(t) == ordr and C.contains(conj(c, t)) and PermGroup([c, t]).order() == total:
            return w
    raise RuntimeError("no normalizing element")


def _coprime_exponent(ordr, p):
    # e = 1 mod ordr and e = 0 mod p, so the lift has order ordr
    return next(e for e in range(p, p * ordr + 1, p) if e % ordr == 1)


def covering_group(p: int) -> PermGroup:
    """p.A7 (p = 2 or 3) as a permutation group, restricted to one orbit."""
    words = a7_words()
    rels = []
    for r in A7_RELATORS:
        rels += [commutator_word(r, [1]), commutator_word(r, [2]), power_word(r, p)]
    if p == 2:
        # lift of a Frobenius group of order 21, index 960
        cw = [1, 2]
        tw = _normalizing_word(words, cw, 3, 21)
        sub = [power_word(cw, _coprime_exponent(7, 2)), power_word(tw, _coprime_exponent(3, 2))]
        gen_words = [power_word([1, 2], _coprime_exponent(7, 2)), power_word([1], _coprime_exponent(3, 2))]
    elif p == 3:
        # lift of a Frobenius group of order 20, index 3402
        cw = [2]
        tw = _normalizing_word(words, cw, 4, 20)
        sub = [power_word(cw, _coprime_exponent(5, 3)), power_word(tw, _coprime_exponent(4, 3))]
        gen_words = [power_word([2], _coprime_exponent(5, 3)), power_word([1, 2], _coprime_exponent(7, 3))]
    else:
        raise ValueError("p must be 2 or 3")
    perms = enumerate_cosets(2, rels, sub)
    W = [evaluate_word(w, perms) for w in gen_words]
    target = 2520 * p
    seen: set[int] = set()
    for x in range(len(perms[0])):
        if x in seen:
            continue
        orb = sorted(orbit_of(W, x))
        seen.update(orb)
        idx = {v: i for i, v in enumerate(orb)}
        G = PermGroup([tuple(idx[g[v]] for v in orb) for g in W], name=f"{p}A7")
        if G.order() == target:
            return G
    raise RuntimeError("no faithful orbit")


def octad(M24: PermGroup, five) -> frozenset:
    """The octad through five points: they plus the size-3 orbit of their stabilizer."""
    S = M24.pointwise_stabilizer(five)
    extra = [o for o in S.orbits() if len(o) == 3]
    if len(extra) != 1:
        raise RuntimeError("unexpected stabilizer orbits")
    return frozenset(five) | frozenset(extra[0])


def trio_stabilizer(M24: PermGroup) -> PermGroup:
    o1 = octad(M24, [0, 1, 2, 3, 4])
    rest = sorted(set(range(24)) - o1)
    for i in range(len(rest) - 4):
        o2 = octad(M24, rest[i:i + 5])
        if not o2 & o1:
            break
    else:
        raise RuntimeError("no disjoint octad")
    o3 = frozenset(range(24)) - o1 - o2
    return partition_stabilizer(M24, [sorted(o1), sorted(o2), sorted(o3)])


def transitive_l32(M24: PermGroup, seed: int = 1) -> PermGroup:
    """A (2,3,7)-generated subgroup of order 168 transitive on 24 points."""
    rng = random.Random(seed)
    for _ in range(200000):
        x = M24.random_element(rng)
        y = M24.random_element(rng)
        ox, oy = order(x), order(y)
        if ox % 2 or oy % 3:
            continue
        x = tuple(x) if ox == 2 else _pow(x, ox // 2)
        y = _pow(y, oy // 3)
        if order(mul(x, y)) != 7:
            continue
        H = PermGroup([x, y], degree=24)
        if H.order() == 168 and H.is_transitive():
            return H
    raise RuntimeError("no transitive L3(2) found")


def _pow(x, k):
    from cayley7.perm import power
    return power(x, k)


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    m11, m12, m23, m24 = mathieu()
    lib = "standard Mathieu generators from the GAP/ATLAS library, points shifted to start at 0"
    write_witness(out / "M11.wit", m11, "M11", lib, simple=True)
    write_witness(out / "M12.wit", m12, "M12", lib, simple=True)
    write_witness(out / "M23.wit", m23, "M23", lib + "; first two M24 generators, fixing point 23",
                  perfect=True)
    write_witness(out / "M24.wit", m24, "M24", lib, perfect=True)
    tc = ("own Todd-Coxeter enumeration of the central extension <a,b | [r,a], [r,b], r^{p}> of "
          "A7 = <a,b | a^3, b^5, (ab)^7, (ab^-1ab)^2, (ab^-2ab^2)^2>, perfect lift generated by "
          "coprime-order powers, restricted to one orbit")
    for p in (2, 3):
        G = covering_group(p)
        write_witness(out / f"{p}A7.wit", G, f"{p}A7", tc.replace("{p}", str(p)),
                      center_order=p, perfect=True)
    trio = trio_stabilizer(m24)
    write_witness(out / "M24_trio.wit", trio, "M24_trio",
                  "stabilizer in the M24 witness of a trio of octads (partition backtrack); "
                  "octads read off 5-point stabilizers")
    l32 = transitive_l32(m24)
    write_witness(out / "M24_L32.wit", l32, "M24_L32",
                  "seeded random (2,3,7)-generated subgroup of the M24 witness, order 168, "
                  "transitive on 24 points")
    for f in sorted(out.glob("*.wit")):
        G = load_witness(f)
        print(f"{f.name}: degree {G.degree}, order {G.order()} verified")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default_witness_dir())
