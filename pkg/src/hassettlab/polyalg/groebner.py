"""Buchberger's algorithm with the coprime and chain criteria."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .ring import Exp, Poly, PolyRing, mono_div, mono_divides, mono_lcm, mono_mul


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[Poly, ...]
    ring: PolyRing

    @property
    def order(self):
        return self.ring.order

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def leading_monomials(self) -> list[Exp]:
        return [g.lm for g in self.basis]

    def is_unit(self) -> bool:
        return any(not any(g.lm) for g in self.basis)


def _reduce_terms(f: dict, G: Sequence[Poly], key, p: int) -> dict:
    """Full remainder of ``f`` on division by ``G``."""
    f = dict(f)
    rem: dict = {}
    lms = [(g.lm, g.terms, pow(g.lc, p - 2, p)) for g in G]
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, gt, ginv in lms:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                coef = c * ginv % p
                for e, v in gt.items():
                    ne = mono_mul(e, q)
                    nv = (f.get(ne, 0) - coef * v) % p
                    if nv:
                        f[ne] = nv
                    else:
                        f.pop(ne, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def normal_form(f: Poly, G: GroebnerBasis | Sequence[Poly]) -> Poly:
    basis = list(G.basis if isinstance(G, GroebnerBasis) else G)
    for g in basis:
        f._check(g)
    basis = [g for g in basis if g]
    if not basis:
        return f
    return Poly._raw(f.ring, _reduce_terms(f.terms, basis, f.ring.key, f.ring.p))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    f._check(g)
    p = f.ring.p
    L = mono_lcm(f.lm, g.lm)
    a = f.mul_term(mono_div(L, f.lm), pow(f.lc, p - 2, p))
    b = g.mul_term(mono_div(L, g.lm), pow(g.lc, p - 2, p))
    return a - b


def _coprime(a: Exp, b: Exp) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(F: Sequence[Poly], ring: PolyRing | None = None,
               rng: random.Random | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``F``.

    Pairs are taken by the normal strategy (smallest lcm first) unless
    ``rng`` is given, in which case the next pair is drawn at random; the
    reduced basis is the same either way.
    """
    F = [f for f in F if f]
    if ring is None:
        if not F:
            raise ValueError("need a ring for the zero ideal")
        ring = F[0].ring
    for f in F:
        if f.ring != ring:
            raise ValueError("generators live in different rings")
    if not F:
        return GroebnerBasis((), ring)
    key, p = ring.key, ring.p
    G: list[Poly] = []
    # seed with an inter-reduced, monic copy of the generators
    for f in sorted(F, key=lambda f: key(f.lm)):
        r = Poly._raw(ring, _reduce_terms(f.terms, G, key, p)) if G else f
        if r:
            G.append(r.monic())
    pairs: set[tuple[int, int]] = {(i, j) for j in range(len(G)) for i in range(j)}

    def chain(i: int, j: int, L: Exp) -> bool:
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_divides(G[k].lm, L):
                ik = (min(i, k), max(i, k))
                jk = (min(j, k), max(j, k))
                if ik not in pairs and jk not in pairs:
                    return True
        return False

    while pairs:
        if rng is None:
            pair = min(pairs, key=lambda ij: (key(mono_lcm(G[ij[0]].lm, G[ij[1]].lm)), ij))
        else:
            pair = rng.choice(sorted(pairs))
        pairs.discard(pair)
        i, j = pair
        a, b = G[i].lm, G[j].lm
        if _coprime(a, b):
            continue
        L = mono_lcm(a, b)
        if chain(i, j, L):
            continue
        s = s_polynomial(G[i], G[j])
        r = _reduce_terms(s.terms, G, key, p)
        if r:
            h = Poly._raw(ring, r).monic()
            G.append(h)
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return GroebnerBasis(tuple(_interreduce(G, ring)), ring)


def _interreduce(G: list[Poly], ring: PolyRing) -> list[Poly]:
    key, p = ring.key, ring.p
    # drop elements whose leading monomial is divisible by another's
    G = sorted(G, key=lambda g: key(g.lm))
    minimal: list[Poly] = []
    for g in G:
        if not any(mono_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = Poly._raw(ring, _reduce_terms(g.terms, others, key, p)) if others else g
        out.append(r.monic())
    return sorted(out, key=lambda g: key(g.lm), reverse=True)


def groebner(F: Sequence[Poly], order=None, ring: PolyRing | None = None,
             rng: random.Random | None = None) -> GroebnerBasis:
    """Groebner basis, optionally re-expressing the generators in another order."""
    if ring is None and F:
        ring = F[0].ring
    if order is not None and ring.order != order:
        ring = ring.with_order(order)
        F = [Poly._raw(ring, dict(f.terms)) for f in F]
    return buchberger(F, ring, rng=rng)


def unreduced_spolys(G: GroebnerBasis | Sequence[Poly]) -> list[tuple[int, int]]:
    """Pairs whose S-polynomial does not reduce to zero (empty iff Groebner)."""
    basis = list(G.basis if isinstance(G, GroebnerBasis) else G)
    bad = []
    for j in range(len(basis)):
        for i in range(j):
            if normal_form(s_polynomial(basis[i], basis[j]), basis):
                bad.append((i, j))
    return bad


def is_groebner(G: GroebnerBasis | Sequence[Poly]) -> bool:
    return not unreduced_spolys(G)


def is_reduced(G: GroebnerBasis | Sequence[Poly]) -> bool:
    basis = list(G.basis if isinstance(G, GroebnerBasis) else G)
    for i, g in enumerate(basis):
        if g.lc != 1:
            return False
        for j, h in enumerate(basis):
            if i != j and any(mono_divides(h.lm, e) for e in g.terms):
                return False
    return True
