"""Exact arithmetic on integral symmetric bilinear forms.

Everything here works on Python integers and :class:`fractions.Fraction`;
no floating point is used, so an empty result from :func:`short_vectors`
is a proof that no vector of the requested norm exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Vector = tuple[int, ...]

MAX_ISOMETRY_RANK = 4


class NotPositiveDefinite(ValueError):
    pass


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n < 1:
            raise ValueError("Gram matrix must have rank >= 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i},{j})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "GramMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        n = self.rank
        if len(u) != n or len(v) != n:
            raise ValueError(f"rank mismatch: vectors of length {len(u)}, {len(v)} for rank {n}")
        return sum(u[i] * self.entries[i][j] * v[j] for i in range(n) for j in range(n))

    def restrict(self, basis: Sequence[Sequence[int]]) -> "GramMatrix":
        """Gram matrix of the sublattice spanned by ``basis``."""
        return GramMatrix.of([[self.inner(b, c) for c in basis] for b in basis])

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


def _bareiss(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; returns the exact determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(G: GramMatrix | Sequence[Sequence[int]]) -> int:
    rows = G.tolist() if isinstance(G, GramMatrix) else [list(r) for r in G]
    return _bareiss(rows)


def leading_minors(G: GramMatrix) -> list[int]:
    return [determinant([row[:k] for row in G.entries[:k]]) for k in range(1, G.rank + 1)]


def is_positive_definite(G: GramMatrix) -> bool:
    """Sylvester's criterion on the leading principal minors."""
    return all(m > 0 for m in leading_minors(G))


def vector_norm(G: GramMatrix, v: Sequence[int]) -> int:
    return G.inner(v, v)


def is_even(G: GramMatrix) -> bool:
    return all(G.entries[i][i] % 2 == 0 for i in range(G.rank))


def canonical_sign(v: Sequence[int]) -> Vector:
    """Representative of ``±v`` whose first nonzero coordinate is positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _ldl(G: GramMatrix) -> list[list[Fraction]]:
    # q[i][i] are the pivots, q[i][j] (j > i) the multipliers, so that
    # Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2.
    n = G.rank
    q = [[Fraction(x) for x in row] for row in G.entries]
    for i in range(n):
        if q[i][i] <= 0:
            raise NotPositiveDefinite(f"Gram matrix {G} is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _integer_window(center: Fraction, radius_sq: Fraction) -> range:
    """All integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    r = math.isqrt(math.floor(radius_sq)) + 1
    lo = math.floor(center) - r
    hi = math.ceil(center) + r
    while lo <= hi and (lo - center) ** 2 > radius_sq:
        lo += 1
    while hi >= lo and (hi - center) ** 2 > radius_sq:
        hi -= 1
    return range(lo, hi + 1)


def enumerate_vectors(G: GramMatrix, bound: int) -> Iterator[Vector]:
    """Yield every nonzero v (both signs) with v^T G v <= bound.

    Fincke-Pohst enumeration with every coordinate bound computed in exact
    rationals.
    """
    q = _ldl(G)
    n = G.rank
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        for xi in _integer_window(center, remaining / q[i][i]):
            x[i] = xi
            rest = remaining - q[i][i] * (xi - center) ** 2
            if i == 0:
                if any(x):
                    yield tuple(x)
            else:
                yield from rec(i - 1, rest)
        x[i] = 0

    yield from rec(n - 1, Fraction(bound))


def short_vectors(G: GramMatrix, target_norm: int) -> list[Vector]:
    """All vectors of norm exactly ``target_norm``, one per ±pair, sorted."""
    if target_norm <= 0:
        raise ValueError("target_norm must be positive")
    if not is_positive_definite(G):
        raise NotPositiveDefinite(f"Gram matrix {G} is not positive definite")
    found = {canonical_sign(v) for v in enumerate_vectors(G, target_norm)
             if vector_norm(G, v) == target_norm}
    return sorted(found)


def has_short_root(G: GramMatrix) -> Vector | None:
    roots = short_vectors(G, 2)
    return roots[0] if roots else None


def _kernel_of_row(w: Sequence[int]) -> list[Vector]:
    """Basis of {u in Z^n : w.u = 0}, saturated by construction."""
    n = len(w)
    for p, wp in enumerate(w):
        if abs(wp) == 1:
            # unit pivot: u = e_i - (w_i / w_p) e_p
            basis = []
            for i in range(n):
                if i == p:
                    continue
                u = [0] * n
                u[i] = 1
                u[p] = -w[i] * wp
                basis.append(tuple(u))
            return basis
    # general case: unimodular column operations reduce w to (g, 0, ..., 0)
    row = list(w)
    cols = [[1 if r == c else 0 for r in range(n)] for c in range(n)]
    while sum(1 for x in row if x != 0) > 1:
        k = min((i for i in range(n) if row[i] != 0), key=lambda i: abs(row[i]))
        for i in range(n):
            if i != k and row[i] != 0:
                f = row[i] // row[k]
                row[i] -= f * row[k]
                cols[i] = [a - f * b for a, b in zip(cols[i], cols[k])]
    pivot = next(i for i in range(n) if row[i] != 0)
    return [tuple(cols[i]) for i in range(n) if i != pivot]


def orthogonal_complement(G: GramMatrix, v: Sequence[int]) -> tuple[list[Vector], GramMatrix]:
    """Saturated basis of v^perp and the restricted Gram matrix."""
    v = tuple(v)
    if len(v) != G.rank:
        raise ValueError("rank mismatch")
    if not any(v):
        raise ValueError("cannot take the complement of the zero vector")
    if math.gcd(*v) != 1:
        raise ValueError(f"vector {v} is not primitive")
    if G.rank == 1:
        raise ValueError("complement in a rank-1 lattice is zero")
    w = [sum(G.entries[i][j] * v[j] for j in range(G.rank)) for i in range(G.rank)]
    if not any(w):
        raise ValueError(f"{v} lies in the radical of the form")
    basis = _kernel_of_row(w)
    return basis, G.restrict(basis)


@dataclass(frozen=True)
class IsometryWitness:
    """Integer matrix T with T^T G1 T == G2; columns are images of G2's basis."""

    matrix: tuple[tuple[int, ...], ...]

    def verify(self, G1: GramMatrix, G2: GramMatrix) -> bool:
        T = self.matrix
        n = len(T)
        cols = [tuple(T[r][c] for r in range(n)) for c in range(n)]
        if abs(determinant(T)) != 1:
            return False
        return all(G1.inner(cols[i], cols[j]) == G2.entries[i][j]
                   for i in range(n) for j in range(n))


def _vectors_of_norm(G: GramMatrix, norm: int) -> list[Vector]:
    return sorted(v for v in enumerate_vectors(G, norm) if vector_norm(G, v) == norm)


def are_isometric(G1: GramMatrix, G2: GramMatrix,
                  fixed: Sequence[int] = ()) -> IsometryWitness | None:
    """Search for T with T^T G1 T == G2 by matching norm-equal vectors.

    ``fixed`` lists basis indices that must map to themselves (for example
    ``(0,)`` to preserve the square of the hyperplane class). The search is
    exhaustive, so ``None`` proves no such isometry exists.
    """
    n = G1.rank
    if G2.rank != n:
        return None
    if n > MAX_ISOMETRY_RANK:
        raise ValueError(f"rank {n} exceeds the brute-force bound {MAX_ISOMETRY_RANK}")
    for G in (G1, G2):
        if not is_positive_definite(G):
            raise NotPositiveDefinite(f"Gram matrix {G} is not positive definite")
    if determinant(G1) != determinant(G2):
        return None
    candidates = []
    for i in range(n):
        if i in fixed:
            e = tuple(1 if k == i else 0 for k in range(n))
            candidates.append([e] if G1.entries[i][i] == G2.entries[i][i] else [])
        else:
            candidates.append(_vectors_of_norm(G1, G2.entries[i][i]))
    images: list[Vector] = []

    def rec(i: int) -> bool:
        if i == n:
            T = tuple(tuple(images[c][r] for c in range(n)) for r in range(n))
            return abs(determinant(T)) == 1
        for v in candidates[i]:
            if all(G1.inner(v, images[j]) == G2.entries[i][j] for j in range(i)):
                images.append(v)
                if rec(i + 1):
                    return True
                images.pop()
        return False

    if rec(0):
        return IsometryWitness(tuple(tuple(images[c][r] for c in range(n)) for r in range(n)))
    return None


def is_square_free(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


__all__ = [
    "GramMatrix", "IsometryWitness", "NotPositiveDefinite", "Vector",
    "are_isometric", "canonical_sign", "determinant", "enumerate_vectors",
    "has_short_root", "is_even", "is_positive_definite", "is_square_free",
    "leading_minors", "orthogonal_complement", "short_vectors", "vector_norm",
]
