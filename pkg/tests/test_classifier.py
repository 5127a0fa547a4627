import itertools

import pytest

from hassettlab.classifier import (
    MODULI_NOTE,
    FamilyKind,
    Verdict,
    admissible_params,
    alternate_determinant,
    alternate_gram,
    classify,
    classify_all,
    closed_form_determinant,
    embed_surface_class,
    family_gram,
    glue_candidates,
    glue_values,
    irreducibility,
    merged_components,
    rationality_certificates,
)
from hassettlab.lattice import GramMatrix, are_isometric, determinant, vector_norm

from conftest import leibniz_det


def same_up_to_sign(u, v):
    return tuple(u) == tuple(v) or tuple(u) == tuple(-x for x in v)


def log_map(kind, param):
    return {(c.n, c.xp, c.yp): c for c in glue_candidates(kind, param)}


class TestFamilies:
    def test_admissible(self):
        assert admissible_params("m12") == list(range(-2, 5))
        assert admissible_params("m20") == list(range(-2, 6))

    def test_parse(self):
        assert FamilyKind.parse("M12") is FamilyKind.M
        assert FamilyKind.parse("veronese") is FamilyKind.N
        with pytest.raises(ValueError):
            FamilyKind.parse("m8")

    @pytest.mark.parametrize("kind", ["M", "N"])
    def test_closed_form_matches_expansion(self, kind):
        for p in range(-10, 11):
            G = family_gram(kind, p)
            assert closed_form_determinant(kind, p) == leibniz_det(G.tolist()) == determinant(G)

    def test_discriminant_tables(self):
        assert [determinant(family_gram("M", e)) for e in range(-2, 5)] == [5, 20, 29, 32, 29, 20, 5]
        assert [determinant(family_gram("N", g)) for g in range(-2, 6)] == [20, 37, 48, 53, 52, 45, 32, 13]

    def test_inadmissible(self):
        with pytest.raises(ValueError):
            classify("M", 5)
        with pytest.raises(ValueError):
            glue_candidates("N", -3)


class TestEmptiness:
    def test_m_family(self):
        reports = {r.param: r for r in classify_all("M")}
        assert [p for p, r in reports.items() if not r.nonempty] == [-2, 4]
        assert same_up_to_sign(reports[-2].short_root, (-2, 1, 1))
        assert same_up_to_sign(reports[4].short_root, (0, -1, 1))
        for p in (-2, 4):
            assert vector_norm(family_gram("M", p), reports[p].short_root) == 2
            assert reports[p].rationality == [] and reports[p].irreducible is None

    def test_n_family(self):
        reports = {r.param: r for r in classify_all("N")}
        assert [p for p, r in reports.items() if not r.nonempty] == [5]
        assert same_up_to_sign(reports[5].short_root, (1, 1, -1))

    def test_irreducible_on_empty_raises(self):
        with pytest.raises(ValueError):
            irreducibility("M", 4)


class TestGlueLogs:
    def test_index_identity(self):
        """det(B) * n^2 = det(family) for every integral glue candidate."""
        for kind in ("M", "N"):
            for p in admissible_params(kind):
                for c in glue_candidates(kind, p):
                    assert determinant(c.gram) * c.n ** 2 == determinant(family_gram(kind, p))
                    assert c.reverify()

    def test_glue_values_direct(self):
        # U = (x' h^2 + y' P + S)/n paired by hand against the Gram matrix
        for kind in FamilyKind:
            for p in admissible_params(kind):
                G = family_gram(kind, p)
                for n, xp, yp in itertools.product((2, 3), range(3), range(3)):
                    a, b, c = glue_values(kind, p, n, xp, yp)
                    u = (xp, yp, 1)
                    assert a * n == G.inner(u, (1, 0, 0))
                    assert b * n == G.inner(u, (0, 1, 0))
                    assert c * n * n == vector_norm(G, u)

    def test_m_minus_one(self):
        log = log_map("M", -1)
        assert set(log) == {(2, 1, 0), (2, 0, 1)}
        assert (log[2, 1, 0].a, log[2, 1, 0].b, log[2, 1, 0].c) == (3, 0, 4)
        assert (log[2, 0, 1].a, log[2, 0, 1].b, log[2, 0, 1].c) == (2, 1, 2)
        assert all(c.verdict is Verdict.SHORT_ROOT for c in log.values())

    def test_m_one(self):
        log = log_map("M", 1)
        assert set(log) == {(2, 1, 0), (2, 0, 1)}
        assert all(k[0] != 4 for k in log)
        ne = log[2, 1, 0]
        assert (ne.a, ne.b, ne.c) == (3, 1, 4)
        assert ne.verdict is Verdict.NOT_EVEN
        assert ne.complement_gram.tolist() == [[24, 24], [24, 25]]
        sr = log[2, 0, 1]
        assert (sr.a, sr.b, sr.c) == (2, 2, 3)
        assert sr.verdict is Verdict.SHORT_ROOT
        assert any(same_up_to_sign(r, (-1, 0, 1)) for r in sr.roots)

    def test_m_three(self):
        log = glue_candidates("M", 3)
        assert len(log) == 2
        for c in log:
            assert c.verdict is Verdict.SHORT_ROOT
            assert any(same_up_to_sign(r, (-1, -1, 1)) for r in c.roots)

    @pytest.mark.parametrize("param,expected", [
        (-2, {(2, 0, 0): (2, -1, 3), (2, 1, 1): (4, 1, 6)}),
        (0, {(2, 0, 0): (2, 0, 3), (2, 1, 1): (4, 2, 7)}),
        (2, {(2, 0, 0): (2, 1, 3), (2, 1, 1): (4, 3, 8)}),
        (3, {(3, 0, 2): (2, 3, 4)}),
        (4, {(2, 0, 0): (2, 2, 3), (2, 1, 1): (4, 4, 9)}),
    ])
    def test_n_family_logs(self, param, expected):
        log = log_map("N", param)
        assert {k: (c.a, c.b, c.c) for k, c in log.items()} == expected
        assert all(c.verdict is not Verdict.VIABLE for c in log.values())

    def test_n_four_not_even(self):
        c = log_map("N", 4)[2, 1, 1]
        assert c.verdict is Verdict.NOT_EVEN
        assert c.complement_gram.tolist() == [[24, 24], [24, 25]]

    def test_square_free_skip_scan(self):
        ok, log = irreducibility("N", 1)  # 53 is prime
        assert ok and log == []

    def test_all_irreducible(self):
        for kind, params in (("M", range(-1, 4)), ("N", range(-2, 5))):
            for p in params:
                assert irreducibility(kind, p)[0], (kind, p)


class TestRationality:
    def test_n_family(self):
        got = {p: [(c.kind, c.value) for c in rationality_certificates("N", p)] for p in range(-2, 6)}
        assert got == {
            -2: [], -1: [("odd-multisection", 5)], 0: [], 1: [("odd-multisection", 3)], 2: [],
            3: [("odd-multisection", 1), ("reducible-OADP", 1)], 4: [], 5: [],
        }

    def test_m_family(self):
        got = {p: [(c.kind, c.value) for c in rationality_certificates("M", p)] for p in range(-2, 5)}
        assert got[0] == [("odd-multisection", 3)]
        assert got[2] == [("odd-multisection", 1), ("reducible-OADP", 1)]
        assert got[-1] == got[1] == got[3] == []


class TestMerging:
    def test_m_components(self):
        assert merged_components("M") == [[-1, 3], [0, 2], [1]]
        reports = {r.param: r for r in classify_all("M")}
        assert reports[-1].merged_with == [3]
        assert reports[1].merged_with == []

    def test_n_components(self):
        assert merged_components("N") == [[g] for g in range(-2, 5)]

    def test_alternate_form(self):
        for t in range(-3, 4):
            assert alternate_determinant(t) == determinant(alternate_gram(t))
        # every nonempty M-component is an alternate form with h^2 and P fixed
        for eta in range(-1, 4):
            G = family_gram("M", eta)
            hits = [t for t in range(0, 4)
                    if are_isometric(G, alternate_gram(t), fixed=(0, 1)) is not None]
            assert hits, eta
            assert alternate_determinant(hits[0]) == determinant(G)


class TestCrossFamily:
    def test_n_minus_two_inside_m_minus_one(self):
        v = embed_surface_class("M", -1, "N", -2)
        assert v is not None
        G = family_gram("M", -1)
        assert (G.inner(v, (1, 0, 0)), G.inner(v, (0, 1, 0)), vector_norm(G, v)) == (4, -2, 12)

    def test_n_four_inside_m_one(self):
        v = embed_surface_class("M", 1, "N", 4)
        assert v == (0, 1, 1)

    def test_missing(self):
        assert embed_surface_class("M", 0, "N", 0) is None


class TestReports:
    def test_annotations(self):
        for kind in ("M", "N"):
            for r in classify_all(kind):
                assert (MODULI_NOTE in r.notes) == r.nonempty

    def test_report_dict_is_stable(self):
        a = [r.to_dict() for r in classify_all("N")]
        b = [r.to_dict() for r in classify_all("N")]
        assert a == b
        assert a[0]["gram"] == [[3, 1, 4], [1, 3, -2], [4, -2, 12]]


class TestInvariants:
    def test_merged_groups_share_invariants(self):
        from hassettlab.classifier import short_vector_profile
        for kind in FamilyKind:
            for group in merged_components(kind):
                grams = [family_gram(kind, p) for p in group]
                assert len({determinant(G) for G in grams}) == 1
                assert len({tuple(short_vector_profile(G).items()) for G in grams}) == 1

    def test_merge_is_a_partition(self):
        from hassettlab.classifier import merge_isometric
        for kind in FamilyKind:
            groups = merge_isometric(kind)
            flat = sorted(p for g in groups for p in g)
            assert flat == admissible_params(kind)

    def test_glue_order(self):
        for kind in FamilyKind:
            for p in admissible_params(kind):
                keys = [(c.n, c.xp, c.yp) for c in glue_candidates(kind, p)]
                assert keys == sorted(keys)


@pytest.mark.parametrize("family", ["m12", "m20"])
def test_classify_golden(family):
    """The JSON report is byte-identical to the checked-in golden file."""
    from pathlib import Path
    from hassettlab import cli
    lines = []
    assert cli.main(["classify", "--family", family, "--json"], out=lines.append) == 0
    golden = (Path(__file__).parent / "golden" / f"classify_{family}.json").read_text()
    assert lines[0] + "\n" == golden
