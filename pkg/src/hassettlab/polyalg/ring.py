"""Sparse multivariate polynomials over a prime field.

A :class:`Poly` is a dict from exponent tuples to residues in ``[0, p)``
with no zero coefficients. Monomial orders are represented by sort keys:
a larger key means a larger monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

Exp = tuple[int, ...]

DEFAULT_PRIME = 31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def grevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exp):
    return e


def make_order_key(order: str | tuple, nvars: int) -> Callable[[Exp], tuple]:
    """Sort key for ``order``.

    ``"grevlex"``, ``"lex"``, or ``("elim", k)``: a block order in which the
    first ``k`` variables are larger than all the others, grevlex inside
    each block.
    """
    if order == "grevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    if isinstance(order, tuple) and order[0] == "elim":
        k = order[1]
        if not 0 <= k <= nvars:
            raise ValueError(f"block size {k} out of range for {nvars} variables")
        return lambda e: (grevlex_key(e[:k]), grevlex_key(e[k:]))
    raise ValueError(f"unknown monomial order {order!r}")


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    p: int = DEFAULT_PRIME
    order: str | tuple = "grevlex"
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "key", make_order_key(self.order, len(self.names)))

    @classmethod
    def indexed(cls, prefix: str, n: int, p: int = DEFAULT_PRIME, order="grevlex") -> "PolyRing":
        return cls(tuple(f"{prefix}_{i}" for i in range(n)), p, order)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.names, self.p, order)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} in ring {self.names}") from None

    def gens(self) -> list["Poly"]:
        n = self.nvars
        return [Poly(self, {tuple(1 if j == i else 0 for j in range(n)): 1}) for i in range(n)]

    def gen(self, name: str) -> "Poly":
        return self.gens()[self.index(name)]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def monomial(self, exp: Exp, coef: int = 1) -> "Poly":
        return Poly(self, {tuple(exp): coef})

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def __str__(self):
        return f"GF({self.p})[{', '.join(self.names)}] ({self.order})"


def monomials_of_degree(n: int, d: int) -> list[Exp]:
    """All exponent vectors of total degree d in n variables, lex-descending."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


class Poly:
    def __init__(self, ring: PolyRing, terms: Mapping[Exp, int] | None = None):
        self.ring = ring
        p = ring.p
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    if len(e) != ring.nvars:
                        raise ValueError(f"exponent {e} has wrong length for {ring}")
                    clean[tuple(e)] = c
        self.terms: dict[Exp, int] = clean

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Poly":
        # terms already reduced and free of zeros
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @cached_property
    def lm(self) -> Exp:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    @property
    def lc(self) -> int:
        return self.terms[self.lm]

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Poly._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_term(self, exp: Exp, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {mono_mul(e, exp): v * c % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return Poly._raw(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.inv(self.lc))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, self.ring.p, frozenset(self.terms.items())))

    # -- calculus and substitution ----------------------------------------
    def diff(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.ring.index(i)
        t = {}
        p = self.ring.p
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                v = c * e[i] % p
                if v:
                    t[ne] = v
        return Poly._raw(self.ring, t)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong number of coordinates")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable i by ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        result = target.zero()
        powers: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def to_ring(self, ring: PolyRing, var_map: Sequence[int] | None = None) -> "Poly":
        """Move into ``ring``; variable i goes to position ``var_map[i]``.

        Without ``var_map`` variables are matched by name.
        """
        if var_map is None:
            var_map = [ring.index(nm) for nm in self.ring.names]
        n = ring.nvars
        t = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[var_map[i]] += k
            t[tuple(ne)] = c
        if ring.p != self.ring.p:
            return Poly(ring, t)
        return Poly._raw(ring, t)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def __repr__(self):
        from ..textio import format_poly
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        from ..textio import format_poly
        return format_poly(self)


def poly_from_terms(ring: PolyRing, items: Iterable[tuple[Exp, int]]) -> Poly:
    t: dict[Exp, int] = {}
    for e, c in items:
        t[tuple(e)] = t.get(tuple(e), 0) + c
    return Poly(ring, t)
