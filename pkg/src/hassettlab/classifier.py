"""Classification of the lattice families M (cubic scroll) and N (Veronese).

Each family is the rank-3 lattice spanned by h^2, a plane P and a surface
class, with one free parameter: the intersection number of the plane with
the surface. For every parameter the classifier decides emptiness (short
roots), irreducibility (overlattice glue scan) and emits numerical
rationality certificates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import intersection
from .lattice import (
    GramMatrix,
    Vector,
    are_isometric,
    determinant,
    has_short_root,
    is_even,
    is_square_free,
    orthogonal_complement,
    short_vectors,
    vector_norm,
)


class FamilyKind(enum.Enum):
    M = "M"
    N = "N"

    @property
    def surface_degree(self) -> int:
        """h^2 . surface, which is also the degree of the surface."""
        return 3 if self is FamilyKind.M else 4

    @property
    def surface_square(self) -> int:
        return 7 if self is FamilyKind.M else 12

    @property
    def divisor(self) -> int:
        return 12 if self is FamilyKind.M else 20

    @property
    def surface_name(self) -> str:
        return "cubic scroll" if self is FamilyKind.M else "Veronese surface"

    @classmethod
    def parse(cls, text: str | "FamilyKind") -> "FamilyKind":
        if isinstance(text, FamilyKind):
            return text
        t = text.strip().lower()
        if t in ("m", "m12", "c12", "scroll"):
            return cls.M
        if t in ("n", "m20", "c20", "veronese"):
            return cls.N
        raise ValueError(f"unknown family {text!r} (expected m12 or m20)")


class Verdict(str, enum.Enum):
    SHORT_ROOT = "rejected-short-root"
    NOT_EVEN = "rejected-not-even"
    VIABLE = "viable"


N_FAMILY_NOTE = (
    "glue formula uses a = (3x' + y' + 4)/n since h^2.V = 4"
)
N4_NOTE = "discriminant of N_4 is 32 = -3*16 + 8*4 + 48"
MODULI_NOTE = (
    "lattice verdict only; identification with a divisor component of the moduli "
    "space of cubic fourfolds is taken as given, not verified here"
)


@dataclass(frozen=True)
class OverlatticeCandidate:
    n: int
    xp: int
    yp: int
    a: int
    b: int
    c: int
    gram: GramMatrix
    verdict: Verdict
    witness: Vector | None = None
    roots: tuple[Vector, ...] = ()
    complement_basis: tuple[Vector, ...] | None = None
    complement_gram: GramMatrix | None = None

    def reverify(self) -> bool:
        """Recheck the stored witness independently of how it was found."""
        if self.verdict is Verdict.SHORT_ROOT:
            return self.witness is not None and all(
                vector_norm(self.gram, v) == 2 for v in (self.witness,) + self.roots)
        if self.verdict is Verdict.NOT_EVEN:
            if self.complement_basis is None or self.complement_gram is None:
                return False
            recomputed = self.gram.restrict(self.complement_basis)
            return recomputed == self.complement_gram and not is_even(recomputed)
        return has_short_root(self.gram) is None and self.complement_gram is not None \
            and is_even(self.complement_gram)

    def to_dict(self) -> dict:
        d = {
            "n": self.n, "xp": self.xp, "yp": self.yp,
            "a": self.a, "b": self.b, "c": self.c,
            "gram": self.gram.tolist(),
            "verdict": self.verdict.value,
        }
        if self.witness is not None:
            d["witness"] = list(self.witness)
            d["roots"] = [list(v) for v in self.roots]
        if self.complement_gram is not None:
            d["complement_basis"] = [list(v) for v in self.complement_basis]
            d["complement_gram"] = self.complement_gram.tolist()
        return d


@dataclass(frozen=True)
class RationalityCertificate:
    kind: str  # "odd-multisection" | "reducible-OADP"
    value: int
    narrative: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "narrative": self.narrative}


@dataclass
class ComponentReport:
    family: FamilyKind
    param: int
    determinant: int
    nonempty: bool
    short_root: Vector | None
    glue_log: list[OverlatticeCandidate] = field(default_factory=list)
    irreducible: bool | None = None
    rationality: list[RationalityCertificate] = field(default_factory=list)
    merged_with: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "param": self.param,
            "gram": family_gram(self.family, self.param).tolist(),
            "determinant": self.determinant,
            "nonempty": self.nonempty,
            "short_root": list(self.short_root) if self.short_root else None,
            "square_free": is_square_free(self.determinant),
            "glue_log": [c.to_dict() for c in self.glue_log],
            "irreducible": self.irreducible,
            "rationality": [c.to_dict() for c in self.rationality],
            "merged_with": list(self.merged_with),
            "notes": list(self.notes),
        }


def family_gram(kind: FamilyKind | str, param: int) -> GramMatrix:
    """Intersection matrix on (h^2, P, surface)."""
    kind = FamilyKind.parse(kind)
    s, ss = kind.surface_degree, kind.surface_square
    return GramMatrix.of([[3, 1, s], [1, 3, param], [s, param, ss]])


def closed_form_determinant(kind: FamilyKind | str, param: int) -> int:
    kind = FamilyKind.parse(kind)
    if kind is FamilyKind.M:
        return -3 * param ** 2 + 6 * param + 29
    return -3 * param ** 2 + 8 * param + 48


def admissible_params(kind: FamilyKind | str) -> list[int]:
    """Integers for which the family Gram matrix has positive determinant.

    The determinant is a downward parabola in the parameter, so the scan
    walks outward from its vertex until it turns non-positive on both sides.
    """
    kind = FamilyKind.parse(kind)
    vertex = 1  # both parabolas peak between 1 and 2
    out = []
    p = vertex
    while determinant(family_gram(kind, p)) > 0:
        out.append(p)
        p += 1
    p = vertex - 1
    while determinant(family_gram(kind, p)) > 0:
        out.append(p)
        p -= 1
    return sorted(out)


def _check_admissible(kind: FamilyKind, param: int) -> None:
    if determinant(family_gram(kind, param)) <= 0:
        raise ValueError(f"parameter {param} is not admissible for family {kind.value}")


def glue_values(kind: FamilyKind, param: int, n: int, xp: int, yp: int
                ) -> tuple[Fraction, Fraction, Fraction]:
    """Intersections of U = (x' h^2 + y' P + surface)/n with h^2, P and itself."""
    s, ss = kind.surface_degree, kind.surface_square
    a = Fraction(3 * xp + yp + s, n)
    b = Fraction(xp + 3 * yp + param, n)
    c = Fraction(3 * xp ** 2 + 3 * yp ** 2 + 2 * s * xp + 2 * param * yp + 2 * xp * yp + ss, n * n)
    return a, b, c


def _adjudicate(n, xp, yp, a, b, c) -> OverlatticeCandidate:
    B = GramMatrix.of([[3, 1, a], [1, 3, b], [a, b, c]])
    roots = tuple(short_vectors(B, 2))
    if roots:
        return OverlatticeCandidate(n, xp, yp, a, b, c, B, Verdict.SHORT_ROOT,
                                    witness=roots[0], roots=roots)
    basis, comp = orthogonal_complement(B, (1, 0, 0))
    verdict = Verdict.VIABLE if is_even(comp) else Verdict.NOT_EVEN
    return OverlatticeCandidate(n, xp, yp, a, b, c, B, verdict,
                                complement_basis=tuple(basis), complement_gram=comp)


def glue_candidates(kind: FamilyKind | str, param: int) -> list[OverlatticeCandidate]:
    """Every integral cyclic glue U = (x' h^2 + y' P + surface)/n, adjudicated.

    Scans n >= 2 with n^2 dividing |det| and 0 <= x', y' < n; the result is
    sorted by (n, x', y').
    """
    kind = FamilyKind.parse(kind)
    _check_admissible(kind, param)
    d = abs(determinant(family_gram(kind, param)))
    out = []
    n = 2
    while n * n <= d:
        if d % (n * n) == 0:
            for xp in range(n):
                for yp in range(n):
                    a, b, c = glue_values(kind, param, n, xp, yp)
                    if a.denominator == b.denominator == c.denominator == 1:
                        out.append(_adjudicate(n, xp, yp, int(a), int(b), int(c)))
        n += 1
    return out


def irreducibility(kind: FamilyKind | str, param: int) -> tuple[bool, list[OverlatticeCandidate]]:
    kind = FamilyKind.parse(kind)
    _check_admissible(kind, param)
    G = family_gram(kind, param)
    if has_short_root(G) is not None:
        raise ValueError(f"component {kind.value}_{param} is empty")
    d = determinant(G)
    if is_square_free(d):
        return True, []
    log = glue_candidates(kind, param)
    return all(c.verdict is not Verdict.VIABLE for c in log), log


def quadric_class_pairing(kind: FamilyKind | str, param: int) -> int:
    """(h^2 - P) . surface: degree of the surface on a quadric fibre class."""
    kind = FamilyKind.parse(kind)
    return kind.surface_degree - param


def rationality_certificates(kind: FamilyKind | str, param: int) -> list[RationalityCertificate]:
    """Numerical witnesses for rationality; empty for empty components.

    An odd value of (h^2 - P).surface gives an odd multisection of the quadric
    surface fibration obtained by projecting from the plane. A secant count of
    one for the union of the surface and the plane, meeting in finitely many
    points, makes that union a reducible OADP surface.
    """
    kind = FamilyKind.parse(kind)
    _check_admissible(kind, param)
    if has_short_root(family_gram(kind, param)) is not None:
        return []
    certs = []
    q = quadric_class_pairing(kind, param)
    if q % 2:
        certs.append(RationalityCertificate(
            "odd-multisection", q,
            f"(h^2 - P).{'S' if kind is FamilyKind.M else 'V'} = {q} is odd"))
    if param >= 0:
        secants = intersection.secant_count(kind.surface_degree, 1, param)
        if secants == 1:
            certs.append(RationalityCertificate(
                "reducible-OADP", secants,
                f"{kind.surface_degree}*1 - {param} = 1 secant line through a general point"))
    return certs


def merge_isometric(kind: FamilyKind | str, params: Iterable[int] | None = None,
                    fixed: tuple[int, ...] = (0,)) -> list[list[int]]:
    """Partition nonempty parameters by isometry of their Gram matrices.

    By default the isometry must fix h^2. Empty parameters are returned as
    singletons since they carry no component.
    """
    kind = FamilyKind.parse(kind)
    if params is None:
        params = admissible_params(kind)
    params = sorted(params)
    nonempty = [p for p in params if has_short_root(family_gram(kind, p)) is None]
    parent = {p: p for p in params}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for i, p in enumerate(nonempty):
        for q in nonempty[i + 1:]:
            if find(p) == find(q):
                continue
            if are_isometric(family_gram(kind, p), family_gram(kind, q), fixed=fixed) is not None:
                parent[find(q)] = find(p)
    groups: dict[int, list[int]] = {}
    for p in params:
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def alternate_gram(tau: int) -> GramMatrix:
    """The (h^2, P, tau) normal form shared by every M-component."""
    return GramMatrix.of([[3, 1, 0], [1, 3, tau], [0, tau, 4]])


def alternate_determinant(tau: int) -> int:
    return 32 - 3 * tau * tau


def classify(kind: FamilyKind | str, param: int) -> ComponentReport:
    kind = FamilyKind.parse(kind)
    _check_admissible(kind, param)
    G = family_gram(kind, param)
    d = determinant(G)
    root = has_short_root(G)
    report = ComponentReport(kind, param, d, root is None, root)
    if kind is FamilyKind.N:
        report.notes.append(N_FAMILY_NOTE)
        if param == 4:
            report.notes.append(N4_NOTE)
    if root is None:
        report.irreducible, report.glue_log = irreducibility(kind, param)
        report.rationality = rationality_certificates(kind, param)
        report.notes.append(MODULI_NOTE)
    return report


def classify_all(kind: FamilyKind | str) -> list[ComponentReport]:
    kind = FamilyKind.parse(kind)
    params = admissible_params(kind)
    reports = [classify(kind, p) for p in params]
    partition = merge_isometric(kind, params)
    for group in partition:
        for r in reports:
            if r.param in group:
                r.merged_with = [q for q in group if q != r.param]
    return reports


def merged_components(kind: FamilyKind | str) -> list[list[int]]:
    """Merged groups restricted to nonempty parameters."""
    kind = FamilyKind.parse(kind)
    return [g for g in merge_isometric(kind)
            if has_short_root(family_gram(kind, g[0])) is None]


def short_vector_profile(G: GramMatrix, norms: Iterable[int] = range(2, 9)) -> dict[int, int]:
    return {k: len(short_vectors(G, k)) for k in norms}


def embed_surface_class(source: FamilyKind | str, source_param: int,
                        target: FamilyKind | str, target_param: int) -> Vector | None:
    """Find a class in the source lattice that plays the target family's surface.

    Looks for v = (x, y, z) in the basis (h^2, P, S) with v.h^2, v.P and v.v
    equal to the target family's row and with <h^2, P, v> saturated
    (|z| = 1). Such a v identifies the two lattices with h^2 and P fixed.
    """
    source, target = FamilyKind.parse(source), FamilyKind.parse(target)
    G = family_gram(source, source_param)
    want = (target.surface_degree, target_param, target.surface_square)
    for z in (1, -1):
        # v.h^2 and v.P are linear in (x, y); solve the 2x2 system exactly
        rhs1 = want[0] - z * G[0, 2]
        rhs2 = want[1] - z * G[1, 2]
        # [[3,1],[1,3]] (x,y) = (rhs1, rhs2)
        x = Fraction(3 * rhs1 - rhs2, 8)
        y = Fraction(3 * rhs2 - rhs1, 8)
        if x.denominator == y.denominator == 1:
            v = (int(x), int(y), z)
            if vector_norm(G, v) == want[2]:
                return v
    return None
