"""Permutations of {0, ..., n-1} stored as flat image tuples.

Products are read left to right: ``compose(p, q)`` first applies ``p`` and then
``q``, so ``x^(pq) = q[p[x]]``.  This is the right-action convention used for
right regular representations ``R(g): x -> xg``.

Hot loops elsewhere in the package work on plain tuples through the module
functions; :class:`Permutation` is a tuple subclass, so both forms mix freely.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

Perm = tuple  # plain image tuple used internally


def identity(n: int) -> tuple:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Apply p, then q."""
    return tuple([q[i] for i in p])


def inv(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conj(p: Sequence[int], g: Sequence[int]) -> tuple:
    """p^g = g^-1 p g (so that (x^g)^(p^g) = (x^p)^g)."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return tuple(out)


def power(p: Sequence[int], k: int) -> tuple:
    n = len(p)
    if k < 0:
        p, k = inv(p), -k
    result = identity(n)
    base = tuple(p)
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point, sorted."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Sorted lengths of all cycles, fixed points included."""
    lengths = [len(c) for c in cycles(p)]
    fixed = sum(1 for i, x in enumerate(p) if i == x)
    return tuple(sorted(lengths + [1] * fixed, reverse=True))


def order(p: Sequence[int]) -> int:
    return math.lcm(1, *(len(c) for c in cycles(p)))


def is_two_element(p: Sequence[int]) -> bool:
    o = order(p)
    return o & (o - 1) == 0


def sign(p: Sequence[int]) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(p)) % 2 else 1


def from_cycles(cycle_list: Iterable[Sequence[int]], n: int) -> tuple:
    img = list(range(n))
    for cyc in cycle_list:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            img[a] = b
    return tuple(img)


def format_cycles(p: Sequence[int]) -> str:
    cs = cycles(p)
    if not cs:
        return "id"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> "Permutation":
    """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"`` or ``"id"``.

    Points may be separated by spaces or commas.  Unmentioned points are
    fixed.  Raises ValueError on repeated points, points >= degree or
    malformed text.
    """
    if degree <= 0:
        raise ValueError("degree must be positive")
    s = text.strip()
    if s in ("id", "()", ""):
        if s == "":
            raise ValueError("empty permutation text")
        return Permutation(range(degree))
    pos = 0
    used: set[int] = set()
    cyc_list = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"malformed cycle text near {s[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise ValueError(f"non-integer point in cycle ({m.group(1)})") from None
        for x in pts:
            if x < 0 or x >= degree:
                raise ValueError(f"point {x} out of range for degree {degree}")
            if x in used:
                raise ValueError(f"point {x} repeated")
            used.add(x)
        cyc_list.append(pts)
    if s[pos:].strip():
        raise ValueError(f"malformed cycle text near {s[pos:]!r}")
    if not cyc_list and "(" not in s:
        raise ValueError(f"cannot parse permutation {text!r}")
    return Permutation(from_cycles(cyc_list, degree))


class Permutation(tuple):
    """A permutation as the tuple of images ``(0^p, 1^p, ...)``."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        t = super().__new__(cls, images)
        if sorted(t) != list(range(len(t))):
            raise ValueError("images do not form a bijection")
        return t

    @classmethod
    def _trusted(cls, images: Sequence[int]) -> "Permutation":
        return tuple.__new__(cls, images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return Permutation._trusted(inv(self))

    def __pow__(self, k: int) -> "Permutation":
        return Permutation._trusted(power(self, k))

    def __call__(self, x: int) -> int:
        return self[x]

    def order(self) -> int:
        return order(self)

    def is_identity(self) -> bool:
        return is_identity(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={len(self)})"

    def __str__(self) -> str:
        return format_cycles(self)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """The product pq: x maps to q(p(x))."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Permutation._trusted(mul(p, q))


def inverse(p: Sequence[int]) -> Permutation:
    return Permutation._trusted(inv(p))


def as_perm(p: Sequence[int]) -> Permutation:
    return p if isinstance(p, Permutation) else Permutation._trusted(tuple(p))
