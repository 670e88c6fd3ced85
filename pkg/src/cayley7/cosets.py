"""Todd-Coxeter coset enumeration (HLT strategy with coincidences).

Words are sequences of nonzero integers: ``i`` is generator i-1 and ``-i``
its inverse.  The result is the right action of each generator on the
cosets of the subgroup, cosets numbered in order of definition with the
subgroup itself as coset 0.
"""

from __future__ import annotations

from typing import Sequence


class CosetLimitExceeded(RuntimeError):
    pass


def _col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def enumerate_cosets(ngens: int, relators: Sequence[Sequence[int]],
                     subgroup: Sequence[Sequence[int]] = (),
                     max_cosets: int = 2_000_000) -> list[tuple]:
    """Permutations of the generators on the cosets of <subgroup>."""
    ncols = 2 * ngens
    inv = [c ^ 1 for c in range(ncols)]
    rels = [[_col(x) for x in r] for r in relators if r]
    subs = [[_col(x) for x in w] for w in subgroup if w]
    table: list[list] = [[None] * ncols]
    parent = [0]

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> None:
        d = len(table)
        if d >= max_cosets:
            raise CosetLimitExceeded(f"more than {max_cosets} cosets defined")
        table.append([None] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][inv[x]] = c

    def merge(k: int, l: int, queue: list) -> None:
        k, l = rep(k), rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        parent[hi] = lo
        queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f is None:
                    continue
                table[f][inv[x]] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][inv[x]] is not None:
                    merge(e1, table[f1][inv[x]], queue)
                else:
                    table[e1][x] = f1
                    table[f1][inv[x]] = e1

    def scan_and_fill(c: int, w: list) -> None:
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv[w[j]]] is not None:
                b = table[b][inv[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                return
            define(f, w[i])

    for w in subs:
        scan_and_fill(0, w)
    c = 0
    while c < len(table):
        for r in rels:
            if parent[c] != c:
                break
            scan_and_fill(c, r)
        if parent[c] == c:
            for x in range(ncols):
                if table[c][x] is None:
                    define(c, x)
        c += 1

    live = [c for c in range(len(table)) if parent[c] == c]
    index = {c: i for i, c in enumerate(live)}
    return [tuple(index[rep(table[c][2 * g])] for c in live) for g in range(ngens)]


def coset_index(ngens: int, relators, subgroup=(), max_cosets: int = 2_000_000) -> int:
    return len(enumerate_cosets(ngens, relators, subgroup, max_cosets)[0])


def evaluate_word(word: Sequence[int], images: Sequence[Sequence[int]]) -> tuple:
    """Image of a word under generator images (permutations, right action)."""
    from .perm import identity, inv, mul
    out = identity(len(images[0]))
    for x in word:
        out = mul(out, images[x - 1] if x > 0 else inv(images[-x - 1]))
    return out


def power_word(word: Sequence[int], e: int) -> list[int]:
    return list(word) * e


def commutator_word(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """[u, v] = u^-1 v^-1 u v."""
    inv_u = [-x for x in reversed(u)]
    inv_v = [-x for x in reversed(v)]
    return inv_u + inv_v + list(u) + list(v)
