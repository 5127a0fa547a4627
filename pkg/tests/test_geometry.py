import random

import pytest

from hassettlab.classifier import FamilyKind, family_gram
from hassettlab.geometry import (
    CHAR0_NOTE,
    PLANS,
    BudgetExhausted,
    ExampleRecord,
    IntersectionProfile,
    PlaneConstraint,
    SurfaceRecipe,
    build_surface,
    class_pairing_with_plane,
    construct_component_example,
    forms_through_plane,
    intersection_profile,
    line_kind,
    place_plane,
    plane_surface_pairing,
    random_cubic_through,
    verify_example,
)
from hassettlab.intersection import scroll_line_case
from hassettlab.lattice import vector_norm
from hassettlab.polyalg import Ideal, dim_and_degree, random_form
from hassettlab.textio import examples_dir, read_example_file

FILES = sorted(examples_dir().glob("*.json"))
RECORDS = {ExampleRecord.from_dict(read_example_file(f)).label: ExampleRecord.from_dict(read_example_file(f))
           for f in FILES}


@pytest.fixture(scope="module")
def reports():
    return {label: verify_example(rec) for label, rec in RECORDS.items()}


class TestRecipes:
    @pytest.mark.parametrize("tag,dd", [("veronese", (2, 4)), ("scroll(1,2)", (2, 3)),
                                        ("cubic-scroll-map", (2, 3)), ("segre-scroll", (2, 3))])
    def test_dim_degree(self, tag, dd):
        r = SurfaceRecipe.parse(tag)
        assert dim_and_degree(build_surface(r)) == dd
        assert r.degree == dd[1]

    @pytest.mark.parametrize("tag", ["veronese", "scroll(1,2)", "cubic-scroll-map", "segre-scroll"])
    def test_parametrization_lands_on_surface(self, tag):
        r = SurfaceRecipe.parse(tag)
        S = build_surface(r)
        rng = random.Random(1)
        for _ in range(20):
            pt = r.point(rng)
            assert all(g.evaluate(pt) == 0 for g in S.gens)

    def test_lines_lie_on_scrolls(self):
        for tag in ("scroll(1,2)", "cubic-scroll-map", "segre-scroll"):
            r = SurfaceRecipe.parse(tag)
            S = build_surface(r)
            pts = r.directrix_points() + r.ruling_points(3, 5)
            for q in pts:
                assert all(g.evaluate(q) == 0 for g in S.gens), (tag, q)
            D = r.directrix()
            assert dim_and_degree(D + S) == (1, 1)

    def test_veronese_has_no_lines(self):
        r = SurfaceRecipe.parse("veronese")
        assert r.directrix_points() is None
        with pytest.raises(ValueError):
            r.ruling_points(1, 1)
        with pytest.raises(ValueError):
            r.canonical_pairing("ruling")

    def test_bad_tag(self):
        with pytest.raises(ValueError):
            SurfaceRecipe.parse("cone")


class TestProfiles:
    def test_parse_and_print(self):
        for t in ("empty", "line", "conic", "points(2)", "other(2,1)"):
            assert str(IntersectionProfile.parse(t)) == t
        assert IntersectionProfile.parse("points(0)") == IntersectionProfile("empty")
        assert IntersectionProfile.parse("other(1,1)") == IntersectionProfile.parse("line")
        with pytest.raises(ValueError):
            IntersectionProfile.parse("curve")

    def test_plane_against_itself(self):
        P = RECORDS["A.1(1)"].plane
        assert str(intersection_profile(P, P)) == "other(2,1)"

    def test_line_kinds_match_excess_suite(self):
        """The geometric line test and the numerical line cases agree."""
        r = SurfaceRecipe.parse("cubic-scroll-map")
        S = build_surface(r)
        rng = random.Random(3)
        for kind, l_self in (("directrix", -1), ("ruling", 0)):
            P = place_plane(kind, r, rng)
            assert line_kind(P, r) == kind
            prof = intersection_profile(P, S)
            assert plane_surface_pairing(r, prof, kind) == scroll_line_case(l_self).excess


class TestShippedExamples:
    def test_all_verify(self, reports):
        assert len(reports) == 14
        for label, rep in reports.items():
            assert rep.ok, rep.to_dict()
            assert CHAR0_NOTE in rep.annotations

    def test_parameters(self, reports):
        for label, rep in reports.items():
            if rep.param is not None:
                assert rep.param_matches, (label, rep.param, rep.expected_param)
            if rep.class_matches is not None:
                assert rep.class_matches, label

    def test_points_are_rational(self, reports):
        for rep in reports.values():
            if rep.profile.startswith("points"):
                assert rep.points_check == "reduced"

    def test_recipe_binding(self, reports):
        rep = reports["A.1(1)"]
        assert rep.recipe_attempts[0] == "scroll(1,2)"
        assert rep.recipe_used == "cubic-scroll-map"
        assert rep.line_kind == "directrix"
        assert any("does not contain" in a for a in rep.annotations)
        assert reports["A.1(7)"].line_kind == "ruling"
        assert reports["A.2(6)"].recipe_used == "segre-scroll"

    @pytest.mark.parametrize("label", sorted(RECORDS))
    def test_mutation_is_caught(self, label):
        rec = RECORDS[label]
        rng = random.Random(label)
        bad = ExampleRecord(**{**rec.__dict__, "cubic": rec.cubic + random_form(rec.ring, 3, rng)})
        assert not verify_example(bad).ok

    def test_wrong_profile_is_caught(self):
        rec = RECORDS["A.2(1)"]
        wrong = IntersectionProfile.parse("points(3)") if rec.expected.shape != "points" or rec.expected.count != 3 \
            else IntersectionProfile("empty")
        bad = ExampleRecord(**{**rec.__dict__, "expected": wrong})
        rep = verify_example(bad)
        assert rep.smooth and rep.contains_plane and rep.contains_surface and not rep.ok

    def test_dict_round_trip(self):
        for rec in RECORDS.values():
            again = ExampleRecord.from_dict(rec.to_dict())
            assert again.cubic == rec.cubic and again.plane.gens == rec.plane.gens

    def test_record_validation(self):
        rec = RECORDS["A.1(1)"]
        with pytest.raises(ValueError):
            ExampleRecord(**{**rec.__dict__, "plane": Ideal(list(rec.plane.gens[:2]))})
        with pytest.raises(ValueError):
            ExampleRecord(**{**rec.__dict__, "cubic": rec.plane.gens[0]})


class TestConstruction:
    def test_forms_through_plane_is_intersection(self):
        rec = RECORDS["A.2(2)"]
        S = build_surface(SurfaceRecipe.parse("veronese"))
        basis = forms_through_plane(S, rec.plane, 3)
        assert basis
        for g in basis:
            assert S.contains(g) and rec.plane.contains(g)
        assert S.contains(rec.cubic) and rec.plane.contains(rec.cubic)

    def test_linear_vs_groebner_construction(self):
        rec = RECORDS["A.2(1)"]
        S = build_surface(SurfaceRecipe.parse("veronese"))
        for method in ("linear", "groebner"):
            F = random_cubic_through(S, rec.plane, random.Random(4), method=method)
            assert S.contains(F) and rec.plane.contains(F)

    def test_place_plane(self):
        r = SurfaceRecipe.parse("veronese")
        S = build_surface(r)
        rng = random.Random(8)
        for c in ("generic", "points(1)", "points(2)", "points(3)", "conic"):
            P = place_plane(c, r, rng)
            assert intersection_profile(P, S) == PlaneConstraint.parse(c).expected_profile()
        with pytest.raises(ValueError):
            place_plane("directrix", r, rng)
        with pytest.raises(ValueError):
            PlaneConstraint.parse("points(4)")

    def test_budget(self):
        with pytest.raises(BudgetExhausted) as e:
            place_plane("ruling", SurfaceRecipe.parse("cubic-scroll-map"), random.Random(0), retry_budget=0)
        assert e.value.failures == {}

    def test_deterministic(self):
        a = construct_component_example("N", 2, 5)
        b = construct_component_example("N", 2, 5)
        assert a.to_dict() == b.to_dict()
        assert construct_component_example("N", 2, 6).cubic != a.cubic

    @pytest.mark.parametrize("key,variant", [
        pytest.param(k, v, id=f"{k[0].value}{k[1]}-{v}") for k, plans in PLANS.items() for v in plans])
    def test_every_plan(self, key, variant):
        kind, param = key
        rec = construct_component_example(kind, param, 7, variant=variant)
        rep = verify_example(rec)
        assert rep.ok and rep.param == param

    def test_plans_cover_nonempty_components(self):
        from hassettlab.classifier import admissible_params, has_short_root
        for kind in FamilyKind:
            want = {p for p in admissible_params(kind) if has_short_root(family_gram(kind, p)) is None}
            assert {p for (k, p) in PLANS if k is kind} == want

    def test_plan_classes_have_right_numbers(self):
        """Each plan's surface class has the family's h^2-degree and self-intersection."""
        for (kind, param), plans in PLANS.items():
            for plan in plans.values():
                r = SurfaceRecipe.parse(plan.recipe)
                src = FamilyKind.M if r.is_cubic_scroll else FamilyKind.N
                c = plan.surface_class
                # h^2, P and the recipe surface S, with S.P read off the constraint
                prof = PlaneConstraint.parse(plan.constraint).expected_profile()
                lk = plan.constraint if plan.constraint in ("ruling", "directrix") else None
                sp = plane_surface_pairing(r, prof, lk)
                G = family_gram(src, sp)
                assert G.inner(c, (1, 0, 0)) == kind.surface_degree
                assert vector_norm(G, c) == kind.surface_square
                assert class_pairing_with_plane(c, sp) == param

    def test_empty_component_refused(self):
        with pytest.raises(ValueError):
            construct_component_example("M", 4, 0)
        with pytest.raises(ValueError):
            construct_component_example("N", 0, 0, variant="nope")
