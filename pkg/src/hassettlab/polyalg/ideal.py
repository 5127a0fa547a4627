"""Ideals, elimination, kernels of ring maps, minors, and Hilbert data."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .groebner import GroebnerBasis, buchberger, normal_form
from .ring import Exp, Poly, PolyRing, mono_divides


class Ideal:
    def __init__(self, gens: Sequence[Poly], ring: PolyRing | None = None):
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
        self.ring = ring
        self.gens = gens

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self.gens, self.ring)

    def groebner(self, rng: random.Random | None = None) -> GroebnerBasis:
        return self.gb if rng is None else buchberger(self.gens, self.ring, rng=rng)

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.gb)

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.gens + other.gens, self.ring)

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def leading_monomials(self) -> list[Exp]:
        return minimalize([g.lm for g in self.gb])

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersection(self, other)


def ideal_member(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


# -- elimination and ring maps ---------------------------------------------

def elimination_ideal(I: Ideal, keep: Sequence[str]) -> Ideal:
    """I intersected with the subring on the variables ``keep``."""
    ring = I.ring
    keep = list(keep)
    elim = [nm for nm in ring.names if nm not in keep]
    big = PolyRing(tuple(elim + keep), ring.p, ("elim", len(elim)))
    small = PolyRing(tuple(keep), ring.p)
    G = buchberger([g.to_ring(big) for g in I.gens], big)
    k = len(elim)
    out = []
    for g in G:
        if not any(g.lm[:k]):
            out.append(g.to_ring(small, [small.index(nm) if nm in keep else -1
                                         for nm in big.names]))
    return Ideal(out, small)


@dataclass(frozen=True)
class RingMap:
    """Homomorphism sending variable i of ``domain`` to ``images[i]`` in ``codomain``."""

    domain: PolyRing
    codomain: PolyRing
    images: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.domain.nvars:
            raise ValueError("need one image per domain variable")
        for im in self.images:
            if im.ring != self.codomain:
                raise ValueError("image not in the codomain ring")

    def __call__(self, f: Poly) -> Poly:
        return f.substitute(list(self.images))


def ring_map_kernel(phi: RingMap) -> Ideal:
    """Kernel of ``phi``: eliminate the codomain variables from the graph ideal."""
    dom, cod = phi.domain, phi.codomain
    if set(dom.names) & set(cod.names):
        raise ValueError("domain and codomain must use distinct variable names")
    k = cod.nvars
    big = PolyRing(cod.names + dom.names, dom.p, ("elim", k))
    graph = []
    for i, im in enumerate(phi.images):
        x = big.gen(dom.names[i])
        graph.append(x - im.to_ring(big))
    G = buchberger(graph, big)
    out = [g.to_ring(dom, [-1] * k + list(range(dom.nvars))) for g in G if not any(g.lm[:k])]
    return Ideal(out, dom)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via the tag-variable trick: eliminate w from wI + (1-w)J."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    tag = "_w"
    while tag in ring.names:
        tag += "_"
    big = PolyRing((tag,) + ring.names, ring.p, ("elim", 1))
    w = big.gen(tag)
    gens = [w * f.to_ring(big) for f in I.gens] + [(1 - w) * g.to_ring(big) for g in J.gens]
    G = buchberger(gens, big)
    out = [g.to_ring(ring, [-1] + list(range(ring.nvars))) for g in G if g.lm[0] == 0]
    return Ideal(out, ring)


# -- determinantal ideals ---------------------------------------------------

def determinant_poly(M: Sequence[Sequence[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [list(row[:j]) + list(row[j + 1:]) for row in M[1:]]
        term = M[0][j] * determinant_poly(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def minors_ideal(M: Sequence[Sequence[Poly]], k: int) -> Ideal:
    rows, cols = len(M), len(M[0])
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"cannot take {k}x{k} minors of a {rows}x{cols} matrix")
    ring = M[0][0].ring
    gens = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            d = determinant_poly([[M[r][c] for c in cs] for r in rs])
            if d and d not in gens and -d not in gens:
                gens.append(d)
    return Ideal(gens, ring)


# -- Hilbert series of monomial ideals ----------------------------------------

def minimalize(mons: Sequence[Exp]) -> list[Exp]:
    out: list[Exp] = []
    for m in sorted(set(mons), key=sum):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(mons: Sequence[Exp]) -> list[int]:
    """K(t) with HS(S/I) = K(t)/(1-t)^n for the monomial ideal I = (mons)."""
    gens = minimalize(mons)
    if not gens:
        return [1]
    if any(not any(m) for m in gens):
        return [0]
    # pairwise coprime generators: K = prod (1 - t^deg)
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in gens]
    if all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i)):
        out = [1]
        for m in gens:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the variable shared by the most generators
    n = len(gens[0])
    counts = [sum(1 for m in gens if m[i]) for i in range(n)]
    v = max(range(n), key=lambda i: counts[i])
    pivot = tuple(1 if i == v else 0 for i in range(n))
    # 0 -> S/(I:x)(-1) -> S/I -> S/(I+x) -> 0
    with_x = [m for m in gens if not m[v]] + [pivot]
    colon = [tuple(x - 1 if i == v and x else x for i, x in enumerate(m)) for m in gens]
    return _poly_add(hilbert_numerator(with_x), [0] + hilbert_numerator(colon))


def _divide_by_one_minus_t(a: list[int]) -> list[int]:
    # exact division by (1 - t); caller guarantees a(1) == 0
    out = []
    acc = 0
    for c in a[:-1]:
        acc += c
        out.append(acc)
    return out or [0]


@dataclass(frozen=True)
class HilbertData:
    nvars: int
    numerator: tuple[int, ...]
    affine_dim: int
    multiplicity: int

    @property
    def projective_dim(self) -> int:
        return self.affine_dim - 1

    @property
    def degree(self) -> int:
        return self.multiplicity if self.affine_dim > 0 else 0


def hilbert_data(mons: Sequence[Exp], nvars: int) -> HilbertData:
    num = hilbert_numerator(mons) if mons else [1]
    while len(num) > 1 and num[-1] == 0:
        num = num[:-1]
    if num == [0]:
        return HilbertData(nvars, (0,), 0, 0)
    q = list(num)
    drops = 0
    while sum(q) == 0:
        q = _divide_by_one_minus_t(q)
        drops += 1
    return HilbertData(nvars, tuple(num), nvars - drops, sum(q))


def independent_set_dimension(mons: Sequence[Exp], nvars: int) -> int:
    """Affine dimension of S/(mons): size of the largest variable set containing no generator's support."""
    gens = minimalize(mons)
    if any(not any(m) for m in gens):
        return -1
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in gens]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    """Projective dimension of V(I); -1 for the empty scheme."""
    if I.is_unit():
        return -1
    return independent_set_dimension(I.leading_monomials(), I.ring.nvars) - 1


def hilbert_degree(I: Ideal) -> int:
    if I.is_unit():
        return 0
    return hilbert_data(I.leading_monomials(), I.ring.nvars).degree


def dim_and_degree(I: Ideal) -> tuple[int, int]:
    if I.is_unit():
        return -1, 0
    h = hilbert_data(I.leading_monomials(), I.ring.nvars)
    return h.projective_dim, h.degree


# -- random elements ----------------------------------------------------------

def monomials(ring: PolyRing, d: int) -> list[Exp]:
    from .ring import monomials_of_degree
    return monomials_of_degree(ring.nvars, d)


def random_form(ring: PolyRing, d: int, rng: random.Random) -> Poly:
    return Poly(ring, {e: rng.randrange(ring.p) for e in monomials(ring, d)})


def random_form_in_ideal(I: Ideal, degree: int, rng: random.Random) -> Poly:
    """sum_i g_i * (random form of degree ``degree - deg g_i``)."""
    usable = [g for g in I.gens if g and g.is_homogeneous() and g.degree() <= degree]
    if not usable:
        raise ValueError(f"no homogeneous generator of degree <= {degree}")
    total = I.ring.zero()
    for g in usable:
        total = total + g * random_form(I.ring, degree - g.degree(), rng)
    return total


def random_elements_from_ideal(I: Ideal, degrees: Sequence[int], rng: random.Random) -> Ideal:
    return Ideal([random_form_in_ideal(I, d, rng) for d in degrees], I.ring)
