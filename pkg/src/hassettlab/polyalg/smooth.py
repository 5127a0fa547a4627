"""Jacobian criterion for projective hypersurfaces over a prime field."""

from __future__ import annotations

from typing import Sequence

import flint

from .ideal import Ideal, krull_dimension
from .ring import Poly, monomials_of_degree, mono_mul


def jacobian(F: Poly) -> list[Poly]:
    return [F.diff(i) for i in range(F.ring.nvars)]


def macaulay_rank(forms: Sequence[Poly], degree: int) -> tuple[int, int]:
    """Rank of the degree-``degree`` part of (forms), and dim S_degree."""
    ring = forms[0].ring
    cols = monomials_of_degree(ring.nvars, degree)
    index = {e: i for i, e in enumerate(cols)}
    entries = []
    for f in forms:
        if not f:
            continue
        d = f.degree()
        if d > degree:
            continue
        terms = list(f.terms.items())
        for m in monomials_of_degree(ring.nvars, degree - d):
            entries.append([(index[mono_mul(e, m)], c) for e, c in terms])
    if not entries:
        return 0, len(cols)
    M = flint.nmod_mat(len(entries), len(cols), ring.p)
    for i, row in enumerate(entries):
        for j, c in row:
            M[i, j] = c
    return M.rank(), len(cols)


def forms_have_no_common_zero(forms: Sequence[Poly]) -> bool:
    """n forms of one degree e in n variables with no common projective zero.

    Such forms are a regular sequence exactly when they have no common zero,
    and then their ideal contains every form of degree n(e-1)+1; otherwise it
    misses the forms not vanishing at a common zero in every degree. So a
    single rank computation decides it over the algebraic closure.
    """
    ring = forms[0].ring
    n = ring.nvars
    if len(forms) != n:
        raise ValueError("need exactly one form per variable")
    degs = {f.degree() for f in forms if f}
    if len(degs) != 1 or any(not f.is_homogeneous() for f in forms):
        raise ValueError("forms must be homogeneous of one common degree")
    if any(not f for f in forms):
        return False
    e = degs.pop()
    D = n * (e - 1) + 1
    rank, full = macaulay_rank(forms, D)
    return rank == full


def is_projectively_smooth(F: Poly, method: str = "auto") -> bool:
    """True iff V(F, dF/dx_0, ..., dF/dx_n) is empty in projective space."""
    if not F:
        raise ValueError("zero polynomial")
    if not F.is_homogeneous():
        raise ValueError("smoothness check needs a homogeneous polynomial")
    d = F.degree()
    if d <= 1:
        return True
    if method == "auto":
        # Euler: d*F = sum x_i dF/dx_i, so F is redundant when p does not divide d
        method = "macaulay" if d % F.ring.p else "groebner"
    if method == "macaulay":
        if d % F.ring.p == 0:
            raise ValueError("Macaulay test needs p not dividing deg F")
        return forms_have_no_common_zero(jacobian(F))
    if method == "groebner":
        return krull_dimension(Ideal([F] + jacobian(F), F.ring)) == -1
    raise ValueError(f"unknown method {method!r}")
