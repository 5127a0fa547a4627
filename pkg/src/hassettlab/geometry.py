"""Rational surfaces in P^5, planes placed against them, and cubics through both.

Surfaces are given by recipes: the Veronese surface, the rational normal
scroll S(a,b) from its monomial parametrization, the cubic scroll as the
projection of the Veronese from a point of it ("cubic-scroll-map"), and the
cubic scroll as a hyperplane section of the Segre image of P^1 x P^2
("segre-scroll"). Every recipe has a quadratic or cubic parametrization by
P^2, an ideal given by minors, and, for scrolls, explicit lines.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

import flint

from . import intersection
from .classifier import FamilyKind, family_gram
from .lattice import vector_norm
from .polyalg import (
    Ideal,
    Poly,
    PolyRing,
    RingMap,
    dim_and_degree,
    ideal_intersection,
    is_projectively_smooth,
    minors_ideal,
    random_form_in_ideal,
    ring_map_kernel,
)
from .textio import format_poly, p5_ring, parse_poly

Point = tuple[int, ...]

CHAR0_NOTE = "verified over GF(p) only; validity in characteristic 0 is not checked"


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, failures: dict[str, int]):
        super().__init__(f"{message} (failures: {dict(failures)})")
        self.failures = dict(failures)


# -- recipes ---------------------------------------------------------------

_SCROLL_RE = re.compile(r"^scroll\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class SurfaceRecipe:
    kind: str
    a: int = 0
    b: int = 0
    p: int = 31

    def __post_init__(self):
        if self.kind not in ("veronese", "scroll", "cubic-scroll-map", "segre-scroll"):
            raise ValueError(f"unknown surface recipe {self.kind!r}")
        if self.kind == "scroll" and not (1 <= self.a <= self.b and self.a + self.b <= 4):
            raise ValueError(f"scroll({self.a},{self.b}) does not fit in P^5")

    @classmethod
    def parse(cls, tag: str, p: int = 31) -> "SurfaceRecipe":
        tag = tag.replace(" ", "").lower()
        m = _SCROLL_RE.match(tag)
        if m:
            return cls("scroll", int(m.group(1)), int(m.group(2)), p)
        return cls(tag, p=p)

    @property
    def name(self) -> str:
        return f"scroll({self.a},{self.b})" if self.kind == "scroll" else self.kind

    @property
    def degree(self) -> int:
        if self.kind == "veronese":
            return 4
        if self.kind == "scroll":
            return self.a + self.b
        return 3

    @property
    def is_cubic_scroll(self) -> bool:
        return self.degree == 3 and self.kind != "veronese"

    @property
    def ring(self) -> PolyRing:
        return p5_ring(self.p)

    @property
    def source_ring(self) -> PolyRing:
        return PolyRing.indexed("t", 3, self.p)

    def param_forms(self) -> list[Poly]:
        """Images of x_0..x_5 under the parametrization by P^2."""
        T = self.source_ring
        t0, t1, t2 = T.gens()
        if self.kind == "veronese":
            return [t0 * t0, t0 * t1, t0 * t2, t1 * t1, t1 * t2, t2 * t2]
        if self.kind == "cubic-scroll-map":
            return [t0 * t0, t0 * t1, t1 * t1, t2 * t0, t1 * t2, T.zero()]
        if self.kind == "segre-scroll":
            # blow-up of P^2 at [0:0:1]: [u:v] = [t_1:t_0] on the Segre map
            return [t0 * t1, t1 * t1, t1 * t2, t0 * t0, t0 * t1, t0 * t2]
        a, b = self.a, self.b
        forms = [t0 ** (b - a + 1) * t0 ** (a - j) * t1 ** j for j in range(a + 1)]
        forms += [t2 * t0 ** (b - j) * t1 ** j for j in range(b + 1)]
        return forms + [T.zero()] * (6 - len(forms))

    def minors_matrix(self) -> list[list[Poly]]:
        x = self.ring.gens()
        if self.kind == "veronese":
            return [[x[0], x[1], x[2]], [x[1], x[3], x[4]], [x[2], x[4], x[5]]]
        if self.kind == "cubic-scroll-map":
            return [[x[0], x[1], x[3]], [x[1], x[2], x[4]]]
        if self.kind == "segre-scroll":
            return [[x[0], x[1], x[2]], [x[3], x[4], x[5]]]
        a, b = self.a, self.b
        top = [x[i] for i in range(a)] + [x[i] for i in range(a + 1, a + b + 1)]
        bot = [x[i] for i in range(1, a + 1)] + [x[i] for i in range(a + 2, a + b + 2)]
        return [top, bot]

    def linear_equations(self) -> list[Poly]:
        x = self.ring.gens()
        if self.kind == "cubic-scroll-map":
            return [x[5]]
        if self.kind == "segre-scroll":
            return [x[0] - x[4]]
        if self.kind == "scroll":
            return x[self.a + self.b + 2:]
        return []

    def parametrization(self) -> RingMap:
        return RingMap(self.ring, self.source_ring, self.param_forms())

    # points and lines, used to place planes
    def point(self, rng: random.Random) -> Point:
        while True:
            t = [rng.randrange(self.p) for _ in range(3)]
            pt = tuple(f.evaluate(t) for f in self.param_forms())
            if any(pt):
                return pt

    def directrix_points(self) -> list[Point] | None:
        if self.kind == "scroll" and (self.a, self.b) == (1, 2):
            return [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)]
        if self.kind == "cubic-scroll-map":
            return [(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0)]
        if self.kind == "segre-scroll":
            return [(0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1)]
        return None

    def directrix(self) -> Ideal | None:
        pts = self.directrix_points()
        return None if pts is None else Ideal(linear_forms_vanishing_on(pts, self.ring), self.ring)

    def ruling_points(self, u: int, v: int) -> list[Point]:
        p = self.p
        if self.kind == "scroll" and (self.a, self.b) == (1, 2):
            pts = [(u, v, 0, 0, 0, 0), (0, 0, u * u, u * v, v * v, 0)]
        elif self.kind == "cubic-scroll-map":
            pts = [(u * u, u * v, v * v, 0, 0, 0), (0, 0, 0, u, v, 0)]
        elif self.kind == "segre-scroll":
            pts = [(u * v, u * u, 0, v * v, u * v, 0), (0, 0, u, 0, 0, v)]
        else:
            raise ValueError(f"{self.name} has no ruling")
        return [tuple(c % p for c in q) for q in pts]

    def conic_points(self, rng: random.Random, count: int = 6) -> list[Point]:
        """Points on a random smooth conic of the surface."""
        p = self.p
        if self.kind == "scroll":
            if (self.a, self.b) != (1, 2):
                raise ValueError(f"no conic construction for {self.name}")
            al, be = rng.randrange(p), rng.randrange(p)
            out = []
            for _ in range(count):
                u, v = rng.randrange(p), rng.randrange(p)
                w = al * u + be * v
                out.append(tuple(c % p for c in (w * u, w * v, u * u, u * v, v * v, 0)))
            return out
        # image of a random line of P^2
        A = [rng.randrange(p) for _ in range(3)]
        B = [rng.randrange(p) for _ in range(3)]
        out = []
        forms = self.param_forms()
        for _ in range(count):
            s, r = rng.randrange(p), rng.randrange(p)
            t = [(s * x + r * y) % p for x, y in zip(A, B)]
            out.append(tuple(f.evaluate(t) for f in forms))
        return out

    def canonical_pairing(self, curve: str) -> int:
        """K_S . C for the curves appearing as plane sections."""
        table = {"conic": -3, "ruling": -2, "directrix": -1}
        if self.kind == "veronese" and curve != "conic":
            raise ValueError("the Veronese surface contains no lines")
        return table[curve]


RECIPE_TAGS = ("veronese", "scroll(1,2)", "cubic-scroll-map", "segre-scroll")


@lru_cache(maxsize=None)
def build_surface(recipe: SurfaceRecipe) -> Ideal:
    """Homogeneous ideal of the surface: 2x2 minors plus the linear equations."""
    I = minors_ideal(recipe.minors_matrix(), 2)
    lin = recipe.linear_equations()
    if lin:
        I = I + Ideal(lin, recipe.ring)
    return I


def kernel_surface(recipe: SurfaceRecipe) -> Ideal:
    """The same ideal computed as the kernel of a ring map."""
    if recipe.kind != "segre-scroll":
        return ring_map_kernel(recipe.parametrization())
    # kernel of the Segre map P^1 x P^2 -> P^5, then the hyperplane x_0 = x_4
    R = recipe.ring
    Q = PolyRing(("u", "v", "t_0", "t_1", "t_2"), recipe.p)
    u, v, t0, t1, t2 = Q.gens()
    segre = RingMap(R, Q, [t0 * u, t1 * u, t2 * u, t0 * v, t1 * v, t2 * v])
    x = R.gens()
    return ring_map_kernel(segre) + Ideal([x[0] - x[4]], R)


# -- linear algebra over GF(p) ---------------------------------------------

def _nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = flint.nmod_mat([list(r) for r in rows], p)
    X, nullity = M.nullspace()
    return [[int(X[i, j]) for i in range(ncols)] for j in range(nullity)]


def linear_forms_vanishing_on(points: Sequence[Point], ring: PolyRing) -> list[Poly]:
    n = ring.nvars
    basis = _nullspace(points, n, ring.p)
    x = ring.gens()
    return [sum((x[i].scale(c) for i, c in enumerate(vec) if c), ring.zero()) for vec in basis]


def linear_rank(forms: Sequence[Poly]) -> int:
    ring = forms[0].ring
    n = ring.nvars
    rows = []
    for f in forms:
        row = [0] * n
        for e, c in f.terms.items():
            if sum(e) != 1:
                raise ValueError("not a linear form")
            row[e.index(1)] = c
        rows.append(row)
    return flint.nmod_mat(rows, ring.p).rank()


def plane_points(P: Ideal) -> list[list[int]]:
    """Three vectors spanning the plane V(P)."""
    n = P.ring.nvars
    rows = []
    for f in P.gens:
        row = [0] * n
        for e, c in f.terms.items():
            row[e.index(1)] = c
        rows.append(row)
    return _nullspace(rows, n, P.ring.p)


def rational_points_on_plane(P: Ideal, S: Ideal) -> list[Point]:
    """All GF(p)-points of V(P) cap V(S), as normalized coordinate vectors."""
    B = plane_points(P)
    if len(B) != 3:
        raise ValueError("not a plane")
    p = P.ring.p
    out = []
    coords = [(1, b, c) for b in range(p) for c in range(p)] + [(0, 1, c) for c in range(p)] + [(0, 0, 1)]
    for a, b, c in coords:
        pt = tuple((a * B[0][i] + b * B[1][i] + c * B[2][i]) % p for i in range(len(B[0])))
        if all(g.evaluate(pt) == 0 for g in S.gens):
            out.append(pt)
    return out


# -- intersection profiles -------------------------------------------------

_PROFILE_RE = re.compile(r"^(empty|line|conic|points\((\d+)\)|other\((-?\d+),(\d+)\))$")


@dataclass(frozen=True)
class IntersectionProfile:
    shape: str
    count: int = 0
    dim: int = -1
    degree: int = 0

    def __post_init__(self):
        if self.shape not in ("empty", "points", "line", "conic", "other"):
            raise ValueError(f"unknown profile shape {self.shape!r}")

    @classmethod
    def from_dim_degree(cls, dim: int, degree: int) -> "IntersectionProfile":
        if dim < 0:
            return cls("empty")
        if dim == 0:
            return cls("points", degree, 0, degree)
        if dim == 1 and degree == 1:
            return cls("line", 0, 1, 1)
        if dim == 1 and degree == 2:
            return cls("conic", 0, 1, 2)
        return cls("other", 0, dim, degree)

    @classmethod
    def parse(cls, text: str) -> "IntersectionProfile":
        t = text.replace(" ", "").lower()
        m = _PROFILE_RE.match(t)
        if not m:
            raise ValueError(f"bad intersection profile {text!r}")
        if m.group(2) is not None:
            k = int(m.group(2))
            return cls("empty") if k == 0 else cls("points", k, 0, k)
        if m.group(3) is not None:
            return cls.from_dim_degree(int(m.group(3)), int(m.group(4)))
        return {"empty": cls("empty"), "line": cls("line", 0, 1, 1),
                "conic": cls("conic", 0, 1, 2)}[m.group(1)]

    def __str__(self):
        if self.shape == "points":
            return f"points({self.count})"
        if self.shape == "other":
            return f"other({self.dim},{self.degree})"
        return self.shape


def intersection_profile(P: Ideal, S: Ideal) -> IntersectionProfile:
    if P.ring != S.ring:
        raise ValueError("ring mismatch")
    if not (P.homogeneous() and S.homogeneous()):
        raise ValueError("intersection profile needs homogeneous ideals")
    return IntersectionProfile.from_dim_degree(*dim_and_degree(P + S))


def line_kind(P: Ideal, recipe: SurfaceRecipe) -> str | None:
    """For a plane meeting a cubic scroll in a line: 'directrix' or 'ruling'."""
    D = recipe.directrix_points()
    if D is None:
        return None
    inside = all(f.evaluate(q) == 0 for f in P.gens for q in D)
    return "directrix" if inside else "ruling"


def plane_surface_pairing(recipe: SurfaceRecipe, profile: IntersectionProfile,
                          kind_of_line: str | None = None) -> int | None:
    """S.P read off from the intersection: excess formula for curves, count for points."""
    if profile.shape == "empty":
        return 0
    if profile.shape == "points":
        return profile.count
    if profile.shape == "conic":
        g, _ = intersection.plane_curve_invariants(2)
        return intersection.excess_surface_plane(recipe.canonical_pairing("conic"), 2, g)
    if profile.shape == "line" and kind_of_line is not None:
        return intersection.excess_surface_plane(recipe.canonical_pairing(kind_of_line), 1, 0)
    return None


# -- example records ---------------------------------------------------------

@dataclass
class ExampleRecord:
    label: str
    plane: Ideal
    surface: SurfaceRecipe | Ideal
    cubic: Poly
    expected: IntersectionProfile
    expected_param: int
    field_char: int = 31
    family: FamilyKind | None = None
    # class of the lattice's surface in the basis (h^2, P, S of the recipe)
    surface_class: tuple[int, int, int] = (0, 0, 1)
    recipe_candidates: tuple[str, ...] = ()
    cross_links: tuple[str, ...] = ()
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.plane.gens) != 3 or linear_rank(list(self.plane.gens)) != 3:
            raise ValueError(f"{self.label}: plane needs 3 independent linear forms")
        if not (self.cubic.is_homogeneous() and self.cubic.degree() == 3):
            raise ValueError(f"{self.label}: cubic is not a homogeneous cubic")

    @property
    def ring(self) -> PolyRing:
        return self.cubic.ring

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExampleRecord":
        p = int(d["field_char"])
        R = p5_ring(p)
        plane = Ideal([parse_poly(s, R) for s in d["plane"]], R)
        surf = d["surface"]
        surface = SurfaceRecipe.parse(surf, p) if isinstance(surf, str) else Ideal(
            [parse_poly(s, R) for s in surf], R)
        fam = d.get("family")
        return cls(
            label=d["label"],
            plane=plane,
            surface=surface,
            cubic=parse_poly(d["cubic"], R),
            expected=IntersectionProfile.parse(d["expected_profile"]),
            expected_param=int(d["expected_param"]),
            field_char=p,
            family=FamilyKind.parse(fam) if fam else None,
            surface_class=tuple(d.get("surface_class", (0, 0, 1))),
            recipe_candidates=tuple(d.get("recipe_candidates", ())),
            cross_links=tuple(d.get("cross_links", ())),
            notes=list(d.get("notes", [])),
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "label": self.label,
            "field_char": self.field_char,
            "plane": [format_poly(g) for g in self.plane.gens],
            "surface": self.surface.name if isinstance(self.surface, SurfaceRecipe)
            else [format_poly(g) for g in self.surface.gens],
            "cubic": format_poly(self.cubic),
            "expected_profile": str(self.expected),
            "expected_param": self.expected_param,
        }
        if self.family is not None:
            out["family"] = self.family.value
        if tuple(self.surface_class) != (0, 0, 1):
            out["surface_class"] = list(self.surface_class)
        if self.recipe_candidates:
            out["recipe_candidates"] = list(self.recipe_candidates)
        if self.cross_links:
            out["cross_links"] = list(self.cross_links)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class VerificationReport:
    label: str
    smooth: bool
    contains_plane: bool
    contains_surface: bool
    profile_matches: bool
    profile: str
    expected_profile: str
    recipe_used: str | None
    recipe_attempts: list[str]
    points_check: str | None = None
    line_kind: str | None = None
    param: int | None = None
    expected_param: int | None = None
    class_matches: bool | None = None
    annotations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.smooth and self.contains_plane and self.contains_surface and self.profile_matches

    @property
    def param_matches(self) -> bool | None:
        return None if self.param is None else self.param == self.expected_param

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "ok": self.ok,
            "checks": {
                "smooth": self.smooth,
                "contains_plane": self.contains_plane,
                "contains_surface": self.contains_surface,
                "profile_matches": self.profile_matches,
            },
            "profile": self.profile,
            "expected_profile": self.expected_profile,
            "recipe_used": self.recipe_used,
            "recipe_attempts": list(self.recipe_attempts),
            "points_check": self.points_check,
            "line_kind": self.line_kind,
            "param": self.param,
            "expected_param": self.expected_param,
            "param_matches": self.param_matches,
            "class_matches": self.class_matches,
            "annotations": list(self.annotations),
        }


def _recipe_order(rec: ExampleRecord) -> list[SurfaceRecipe]:
    assert isinstance(rec.surface, SurfaceRecipe)
    order = [rec.surface]
    extra = rec.recipe_candidates or tuple(
        t for t in RECIPE_TAGS if SurfaceRecipe.parse(t).degree == rec.surface.degree)
    for tag in extra:
        r = SurfaceRecipe.parse(tag, rec.field_char)
        if r not in order:
            order.append(r)
    return order


def verify_example(rec: ExampleRecord, smooth_method: str = "auto") -> VerificationReport:
    F = rec.cubic
    smooth = is_projectively_smooth(F, method=smooth_method)
    in_plane = rec.plane.contains(F)
    attempts: list[str] = []
    recipe: SurfaceRecipe | None = None
    if isinstance(rec.surface, SurfaceRecipe):
        for r in _recipe_order(rec):
            attempts.append(r.name)
            if build_surface(r).contains(F):
                recipe = r
                break
        S = build_surface(recipe or rec.surface)
        in_surface = recipe is not None
    else:
        S = rec.surface
        in_surface = S.contains(F)
    profile = intersection_profile(rec.plane, S)
    report = VerificationReport(
        label=rec.label,
        smooth=smooth,
        contains_plane=in_plane,
        contains_surface=in_surface,
        profile_matches=profile == rec.expected,
        profile=str(profile),
        expected_profile=str(rec.expected),
        recipe_used=recipe.name if recipe else None,
        recipe_attempts=attempts,
        expected_param=rec.expected_param,
        annotations=[CHAR0_NOTE],
    )
    if profile.shape == "points":
        rational = rational_points_on_plane(rec.plane, S)
        report.points_check = "reduced" if len(rational) == profile.count else "degree-only"
    if recipe is not None:
        if profile.shape == "line" and recipe.is_cubic_scroll:
            report.line_kind = line_kind(rec.plane, recipe)
        sp = plane_surface_pairing(recipe, profile, report.line_kind)
        if sp is not None:
            report.param = class_pairing_with_plane(rec.surface_class, sp)
            if rec.family is not None:
                report.class_matches = class_check(rec.family, rec.surface_class, sp, recipe)
    if recipe is not None and recipe != rec.surface:
        report.annotations.append(
            f"bound recipe {rec.surface.name} does not contain the cubic; {recipe.name} does")
    return report


def class_pairing_with_plane(coeffs: Sequence[int], sp: int) -> int:
    """(c_h h^2 + c_P P + c_S S) . P with h^2.P = 1 and P.P = 3."""
    ch, cp, cs = coeffs
    return ch + 3 * cp + cs * sp


def class_check(kind: FamilyKind, coeffs: Sequence[int], sp: int, recipe: SurfaceRecipe) -> bool:
    """Whether the class has the self-intersection and degree of ``kind``'s surface."""
    scroll = FamilyKind.M if recipe.is_cubic_scroll else FamilyKind.N
    G = family_gram(scroll, sp)
    v = list(coeffs)
    deg = G.inner([1, 0, 0], v)
    return vector_norm(G, v) == kind.surface_square and deg == kind.surface_degree


# -- construction -------------------------------------------------------------

def degree_part(I: Ideal, d: int) -> list[Poly]:
    """Spanning set of the degree-d part of a homogeneous ideal."""
    from .polyalg import monomials_of_degree
    ring = I.ring
    out = []
    for g in I.gens:
        k = d - g.degree()
        if k < 0:
            continue
        for e in monomials_of_degree(ring.nvars, k):
            out.append(g.mul_term(e, 1))
    return out


def forms_through_plane(I: Ideal, P: Ideal, d: int) -> list[Poly]:
    """Basis of the degree-d part of I cap I(P), for a plane V(P).

    A form lies in the ideal of the plane iff its restriction to the plane
    vanishes, so this is the kernel of the restriction map on I_d.
    """
    from .polyalg import monomials_of_degree
    ring = I.ring
    B = plane_points(P)
    if len(B) != 3:
        raise ValueError("not a plane")
    T = PolyRing(("a", "b", "c"), ring.p)
    a, b, c = T.gens()
    images = [a.scale(B[0][i]) + b.scale(B[1][i]) + c.scale(B[2][i]) for i in range(ring.nvars)]
    span = degree_part(I, d)
    if not span:
        return []
    cols = monomials_of_degree(3, d)
    rows = []
    for f in span:
        r = f.substitute(images)
        rows.append([r.coefficient(e) for e in cols])
    # y . rows = 0  <=>  y in the nullspace of rows^T
    rowsT = [[rows[i][j] for i in range(len(rows))] for j in range(len(cols))]
    out = []
    for y in _nullspace(rowsT, len(rows), ring.p):
        f = ring.zero()
        for coef, g in zip(y, span):
            if coef:
                f = f + g.scale(coef)
        if f:
            out.append(f)
    return out


def random_cubic_through(S: Ideal, P: Ideal, rng: random.Random,
                         method: str = "linear") -> Poly:
    """Random cubic in I(S) cap I(P), either by linear algebra or by a Groebner intersection."""
    if method == "groebner":
        return random_form_in_ideal(ideal_intersection(S, P), 3, rng)
    if method != "linear":
        raise ValueError(f"unknown method {method!r}")
    basis = forms_through_plane(S, P, 3)
    if not basis:
        raise ValueError("no cubic contains both")
    return sum((g.scale(rng.randrange(S.ring.p)) for g in basis), S.ring.zero())


@dataclass(frozen=True)
class PlaneConstraint:
    kind: str
    count: int = 0

    def __post_init__(self):
        if self.kind not in ("generic", "points", "ruling", "directrix", "conic"):
            raise ValueError(f"unknown plane constraint {self.kind!r}")
        if self.kind == "points" and not 1 <= self.count <= 3:
            raise ValueError("a plane can be forced through 1, 2 or 3 points")

    @classmethod
    def parse(cls, text: str) -> "PlaneConstraint":
        t = text.replace(" ", "").lower()
        m = re.match(r"^points\((\d+)\)$", t)
        if m:
            return cls("points", int(m.group(1)))
        return cls(t)

    def expected_profile(self) -> IntersectionProfile:
        return {
            "generic": IntersectionProfile("empty"),
            "points": IntersectionProfile("points", self.count, 0, self.count),
            "ruling": IntersectionProfile("line", 0, 1, 1),
            "directrix": IntersectionProfile("line", 0, 1, 1),
            "conic": IntersectionProfile("conic", 0, 1, 2),
        }[self.kind]

    def __str__(self):
        return f"points({self.count})" if self.kind == "points" else self.kind


def _random_combinations(W: Sequence[Poly], k: int, rng: random.Random) -> list[Poly]:
    ring = W[0].ring
    out = []
    for _ in range(k):
        f = ring.zero()
        for w in W:
            f = f + w.scale(rng.randrange(ring.p))
        out.append(f)
    return out


def _draw_plane(constraint: PlaneConstraint, recipe: SurfaceRecipe,
                rng: random.Random) -> Ideal | None:
    R = recipe.ring
    if constraint.kind == "generic":
        W = R.gens()
    else:
        if constraint.kind == "points":
            pts = [recipe.point(rng) for _ in range(constraint.count)]
        elif constraint.kind == "ruling":
            pts = recipe.ruling_points(rng.randrange(1, recipe.p), rng.randrange(1, recipe.p))
        elif constraint.kind == "directrix":
            pts = recipe.directrix_points()
            if pts is None:
                raise ValueError(f"{recipe.name} has no directrix")
        else:
            pts = recipe.conic_points(rng)
        W = linear_forms_vanishing_on(pts, R)
        if len(W) < 3:
            return None
    forms = W if len(W) == 3 else _random_combinations(W, 3, rng)
    if linear_rank(forms) != 3:
        return None
    return Ideal(forms, R)


def place_plane(constraint: PlaneConstraint | str, surface: SurfaceRecipe,
                rng: random.Random, retry_budget: int = 50) -> Ideal:
    """A plane meeting ``surface`` as ``constraint`` asks, post-checked by its profile."""
    if isinstance(constraint, str):
        constraint = PlaneConstraint.parse(constraint)
    want = constraint.expected_profile()
    S = build_surface(surface)
    failures: Counter[str] = Counter()
    for _ in range(retry_budget):
        P = _draw_plane(constraint, surface, rng)
        if P is None:
            failures["degenerate"] += 1
            continue
        got = intersection_profile(P, S)
        if got != want:
            failures[f"profile {got}"] += 1
            continue
        if constraint.kind in ("ruling", "directrix") and line_kind(P, surface) != constraint.kind:
            failures["wrong line"] += 1
            continue
        return P
    raise BudgetExhausted(f"no plane with {constraint} on {surface.name}", failures)


@dataclass(frozen=True)
class ConstructionPlan:
    recipe: str
    constraint: str
    surface_class: tuple[int, int, int] = (0, 0, 1)
    note: str | None = None


_N_MINUS_2_NOTE = (
    "the Veronese class is 3h^2-2P-S for a cubic scroll S meeting P in a conic: "
    "it has degree 4, square 12 and meets P in -2")
_N_4_NOTE = (
    "the Veronese class is S+P, a cubic scroll together with a plane through its "
    "directrix (a reducible Veronese)")

PLANS: dict[tuple[FamilyKind, int], dict[str, ConstructionPlan]] = {
    (FamilyKind.M, -1): {"default": ConstructionPlan("cubic-scroll-map", "conic")},
    (FamilyKind.M, 0): {"default": ConstructionPlan("cubic-scroll-map", "generic"),
                        "ruling": ConstructionPlan("cubic-scroll-map", "ruling")},
    (FamilyKind.M, 1): {"default": ConstructionPlan("cubic-scroll-map", "points(1)"),
                        "directrix": ConstructionPlan("segre-scroll", "directrix")},
    (FamilyKind.M, 2): {"default": ConstructionPlan("cubic-scroll-map", "points(2)")},
    (FamilyKind.M, 3): {"default": ConstructionPlan("cubic-scroll-map", "points(3)")},
    (FamilyKind.N, -2): {"default": ConstructionPlan("cubic-scroll-map", "conic", (3, -2, -1),
                                                     _N_MINUS_2_NOTE)},
    (FamilyKind.N, -1): {"default": ConstructionPlan("veronese", "conic")},
    (FamilyKind.N, 0): {"default": ConstructionPlan("veronese", "generic")},
    (FamilyKind.N, 1): {"default": ConstructionPlan("veronese", "points(1)")},
    (FamilyKind.N, 2): {"default": ConstructionPlan("veronese", "points(2)")},
    (FamilyKind.N, 3): {"default": ConstructionPlan("veronese", "points(3)")},
    (FamilyKind.N, 4): {"default": ConstructionPlan("segre-scroll", "directrix", (0, 1, 1),
                                                    _N_4_NOTE)},
}


def construct_component_example(kind: FamilyKind | str, param: int,
                                 rng: random.Random | int | None = None,
                                 retry_budget: int = 50, variant: str = "default",
                                 p: int = 31) -> ExampleRecord:
    """A fresh smooth cubic containing a surface and a plane realizing (kind, param)."""
    kind = FamilyKind.parse(kind)
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    plans = PLANS.get((kind, param))
    if plans is None:
        raise ValueError(f"no construction for the empty or inadmissible component {kind.value}{param}")
    if variant not in plans:
        raise ValueError(f"variant {variant!r} not available for {kind.value}{param}: {sorted(plans)}")
    plan = plans[variant]
    recipe = SurfaceRecipe.parse(plan.recipe, p)
    constraint = PlaneConstraint.parse(plan.constraint)
    S = build_surface(recipe)
    failures: Counter[str] = Counter()
    budget = retry_budget
    P = place_plane(constraint, recipe, rng, retry_budget)
    basis = forms_through_plane(S, P, 3)
    while budget > 0:
        budget -= 1
        F = sum((g.scale(rng.randrange(p)) for g in basis), S.ring.zero())
        if not F:
            failures["zero cubic"] += 1
            continue
        rec = ExampleRecord(
            label=f"constructed.{kind.value}{param}" + ("" if variant == "default" else f".{variant}"),
            plane=P,
            surface=recipe,
            cubic=F,
            expected=constraint.expected_profile(),
            expected_param=param,
            field_char=p,
            family=kind,
            surface_class=plan.surface_class,
            recipe_candidates=(recipe.name,),
            notes=[plan.note] if plan.note else [],
        )
        report = verify_example(rec)
        if report.ok and report.param_matches:
            return rec
        for name, passed in report.to_dict()["checks"].items():
            if not passed:
                failures[f"not {name}"] += 1
        if report.ok:
            failures["param mismatch"] += 1
    raise BudgetExhausted(f"no smooth cubic for {kind.value}{param}", failures)
