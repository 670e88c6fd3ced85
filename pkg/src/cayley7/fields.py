"""Small finite fields, matrices over them, and their permutation actions.

Field elements are integers 0..q-1.  For q = p^k the integer's base-p digits
are the coefficients of a polynomial in a primitive root x; multiplication
goes through log/antilog tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .groups import PermGroup

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


class GF:
    """The field with q elements, q in SUPPORTED_ORDERS."""

    _cache: dict[int, "GF"] = {}

    def __new__(cls, q: int):
        if q in cls._cache:
            return cls._cache[q]
        if q not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported field order {q}")
        self = super().__new__(cls)
        self._setup(q)
        cls._cache[q] = self
        return self

    def _setup(self, q: int) -> None:
        p = next(r for r in (2, 3, 5, 7) if q % r == 0)
        k = 0
        while p**k < q:
            k += 1
        self.q, self.p, self.k = q, p, k
        self._add = [[_undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)
                      for b in range(q)] for a in range(q)]
        self._neg = [_undigits([(-x) % p for x in _digits(a, p, k)], p) for a in range(q)]
        self.exp, self.log = self._primitive_tables()
        self.basis = [p**i for i in range(k)]  # additive generators 1, x, ..., x^(k-1)

    def _primitive_tables(self):
        q, p, k = self.q, self.p, self.k
        if k == 1:
            g = next(g for g in range(1, q) if len({pow(g, i, q) for i in range(q - 1)}) == q - 1)
            exp = [pow(g, i, q) for i in range(q - 1)]
        else:
            # monic x^k = c(x); try tails until x has order q-1
            for tail in itertools.product(range(p), repeat=k):
                if tail[0] == 0:
                    continue
                exp, cur = [], [1] + [0] * (k - 1)
                for _ in range(q - 1):
                    exp.append(_undigits(cur, p))
                    top = cur[-1]
                    cur = [0] + cur[:-1]
                    cur = [(c + top * t) % p for c, t in zip(cur, tail)]
                if len(set(exp)) == q - 1:
                    break
            else:
                raise RuntimeError("no primitive polynomial")
        log = {v: i for i, v in enumerate(exp)}
        return exp, log

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def primitive(self) -> int:
        return self.exp[1] if self.q > 2 else 1


@dataclass(frozen=True)
class FiniteFieldMatrix:
    """A square matrix over GF(q); rows are tuples of field elements."""

    q: int
    rows: tuple

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> GF:
        return GF(self.q)

    @classmethod
    def identity(cls, d: int, q: int) -> "FiniteFieldMatrix":
        return cls(q, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    def __mul__(self, other: "FiniteFieldMatrix") -> "FiniteFieldMatrix":
        F = self.field
        d = self.dimension
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                s = 0
                for t in range(d):
                    s = F.add(s, F.mul(self.rows[i][t], other.rows[t][j]))
                row.append(s)
            rows.append(tuple(row))
        return FiniteFieldMatrix(self.q, tuple(rows))

    def determinant(self) -> int:
        F = self.field
        m = [list(r) for r in self.rows]
        d = len(m)
        det = 1
        for c in range(d):
            piv = next((r for r in range(c, d) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = F.neg(det)
            det = F.mul(det, m[c][c])
            ic = F.inv(m[c][c])
            for r in range(c + 1, d):
                f = F.mul(m[r][c], ic)
                if f:
                    m[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[r], m[c])]
        return det

    def act(self, v: Sequence[int]) -> tuple:
        """Row vector times matrix."""
        F = self.field
        d = self.dimension
        out = []
        for j in range(d):
            s = 0
            for t in range(d):
                if v[t]:
                    s = F.add(s, F.mul(v[t], self.rows[t][j]))
            out.append(s)
        return tuple(out)

    def conjugate_transpose(self) -> "FiniteFieldMatrix":
        """Transpose with the order-2 field automorphism applied (q square)."""
        F = self.field
        r = int(round(F.q ** 0.5))
        d = self.dimension
        return FiniteFieldMatrix(self.q, tuple(tuple(F.pow(self.rows[j][i], r) for j in range(d))
                                               for i in range(d)))


def matrix(q: int, rows) -> FiniteFieldMatrix:
    return FiniteFieldMatrix(q, tuple(tuple(r) for r in rows))


def _normalize(F: GF, v: tuple) -> tuple:
    lead = next(x for x in v if x)
    if lead == 1:
        return v
    il = F.inv(lead)
    return tuple(F.mul(il, x) for x in v)


def point_set(d: int, q: int, action: str) -> list[tuple]:
    vecs = [v for v in itertools.product(range(q), repeat=d) if any(v)]
    if action == "nonzero-vectors":
        return vecs
    if action == "projective-points":
        F = GF(q)
        return [v for v in vecs if _normalize(F, v) == v]
    raise ValueError(f"unknown action {action!r}")


def matgroup_to_perm(generators: Sequence[FiniteFieldMatrix], action: str = "nonzero-vectors",
                     points: Sequence[tuple] | None = None, name: str | None = None) -> PermGroup:
    """Permutation group induced on vectors or projective points (lex order).

    ``points`` restricts the action to an invariant subset, kept in the
    given order.
    """
    if not generators:
        raise ValueError("no generators")
    d, q = generators[0].dimension, generators[0].q
    F = GF(q)
    for g in generators:
        if g.dimension != d or g.q != q:
            raise ValueError("generators differ in dimension or field")
        if g.determinant() == 0:
            raise ValueError("matrix is not invertible")
    pts = list(points) if points is not None else point_set(d, q, action)
    index = {v: i for i, v in enumerate(pts)}
    proj = action == "projective-points"
    perms = []
    for g in generators:
        img = []
        for v in pts:
            w = g.act(v)
            if proj:
                w = _normalize(F, w)
            if w not in index:
                raise ValueError("point set is not invariant")
            img.append(index[w])
        perms.append(tuple(img))
    return PermGroup(perms, degree=len(pts), name=name)


def transvection(d: int, q: int, i: int, j: int, c: int) -> FiniteFieldMatrix:
    rows = [[int(a == b) for b in range(d)] for a in range(d)]
    rows[i][j] = c
    return matrix(q, rows)


def sl_generators(d: int, q: int) -> list[FiniteFieldMatrix]:
    """Elementary transvections I + cE_ij, c over an additive basis."""
    F = GF(q)
    return [transvection(d, q, i, j, c) for i in range(d) for j in range(d) if i != j
            for c in F.basis]


def symplectic_form(d: int):
    """Standard alternating form pairing coordinate i with d-1-i."""
    def form(F: GF, x, y):
        s = 0
        for i in range(d // 2):
            j = d - 1 - i
            s = F.add(s, F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])))
        return s
    return form


def symplectic_transvection(d: int, q: int, v: Sequence[int], c: int = 1) -> FiniteFieldMatrix:
    """x -> x + c B(x, v) v as a matrix acting on row vectors."""
    F = GF(q)
    form = symplectic_form(d)
    rows = []
    for i in range(d):
        e = tuple(int(i == j) for j in range(d))
        t = F.mul(c, form(F, e, v))
        rows.append(tuple(F.add(e[j], F.mul(t, v[j])) for j in range(d)))
    return matrix(q, rows)


def sp_generators(d: int, q: int) -> list[FiniteFieldMatrix]:
    """Symplectic transvections for basis vectors and pair sums."""
    vecs = []
    for i in range(d):
        vecs.append(tuple(int(j == i) for j in range(d)))
    for i, j in itertools.combinations(range(d), 2):
        vecs.append(tuple(int(t in (i, j)) for t in range(d)))
    return [symplectic_transvection(d, q, v) for v in vecs]


def su3_generators(q2: int = 9) -> list[FiniteFieldMatrix]:
    """Unitary determinant-one matrices for the antidiagonal Hermitian form.

    Found by scanning upper unitriangular, diagonal and antidiagonal
    matrices and keeping those preserving the form.
    """
    F = GF(q2)
    J = matrix(q2, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])

    def unitary(M):
        return M * J * M.conjugate_transpose() == J and M.determinant() == 1

    out = []
    for a, b, c in itertools.product(range(q2), repeat=3):
        M = matrix(q2, [[1, a, b], [0, 1, c], [0, 0, 1]])
        if (a or b or c) and unitary(M):
            out.append(M)
    for a, b, c in itertools.product(range(1, q2), repeat=3):
        for M in (matrix(q2, [[a, 0, 0], [0, b, 0], [0, 0, c]]),
                  matrix(q2, [[0, 0, a], [0, b, 0], [c, 0, 0]])):
            if unitary(M):
                out.append(M)
    return out


def isotropic_points(q2: int = 9) -> list[tuple]:
    """Projective points of GF(q2)^3 isotropic for the antidiagonal form."""
    F = GF(q2)
    r = int(round(q2 ** 0.5))
    pts = []
    for v in point_set(3, q2, "projective-points"):
        s = 0
        for i in range(3):
            s = F.add(s, F.mul(v[i], F.pow(v[2 - i], r)))
        if s == 0:
            pts.append(v)
    return pts
