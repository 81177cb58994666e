import json
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from dessinpairs.constructions import sym_handle
from dessinpairs.hypermap import genus_of, regular_hypermap_from_triple
from dessinpairs.perm import PermGroup, Permutation, parse_perm, perm_from_cycles, symmetric_group
from dessinpairs.triangle import (
    GroupHandle,
    TriangleType,
    build_pair,
    catalog_rows,
    classify_pair,
    cover_genus,
    index2_subtriple,
    is_hyperbolic,
    make_triple,
    parity_classify,
    rh_genus,
    singerman_lookup,
)

from conftest import perm_pairs


def is_even(g):
    return g.parity() == "even"


class TestTypes:
    def test_hyperbolicity(self):
        assert is_hyperbolic((2, 3, 7))
        assert not is_hyperbolic((2, 3, 6))
        assert not is_hyperbolic((1, 4, 4))

    def test_parse(self):
        assert TriangleType.parse("(8,16,16)") == TriangleType(8, 16, 16)
        with pytest.raises(ValueError):
            TriangleType.parse("2,3")


class TestGenus:
    @pytest.mark.parametrize("t, order, genus", [
        ((3, 6, 6), 120, 21),
        ((2, 3, 7), 168, 3),
        ((8, 16, 16), 4896, 1837),
        ((3, 6, 6), 336, 57),
    ])
    def test_reference_values(self, t, order, genus):
        assert rh_genus(t, order) == genus

    def test_non_integral(self):
        with pytest.raises(ValueError):
            rh_genus((2, 3, 7), 100)

    def test_negative(self):
        with pytest.raises(ValueError):
            rh_genus((2, 2, 2), 8)

    @pytest.mark.parametrize("index, genus", [(1, 3), (2**6, 129), (8, 17)])
    def test_cover_genus(self, index, genus):
        assert cover_genus(3, index) == genus


@given(st.integers(2, 12), st.integers(1, 40))
def test_case3_types_share_genus(n, k):
    N = 4 * n * k
    expected = 1 + Fraction(N * (2 * n - 3), 4 * n)
    assume(expected.denominator == 1)
    assert rh_genus((2 * n,) * 3, N) == rh_genus((n, 4 * n, 4 * n), N) == expected


class TestCatalog:
    def test_lookups(self):
        e = singerman_lookup((3, 8, 8), (2, 3, 8))
        assert (e.label, e.index, e.normal, e.dessin_count) == ("E", 10, False, 10)
        b = singerman_lookup((7, 7, 7), (3, 3, 7))
        assert (b.index, b.normal) == (3, True)
        a = singerman_lookup((7, 7, 7), (2, 3, 7))
        assert (a.index, a.normalizer, a.dessin_count) == (24, TriangleType(3, 3, 7), 8)
        i = singerman_lookup((5, 10, 10), (2, 4, 10))
        assert (i.label, i.normalizer, i.dessin_count) == ("I", TriangleType(10, 2, 10), 2)

    def test_absent(self):
        assert singerman_lookup((2, 3, 7), (2, 3, 8)) is None

    def test_dessin_counts_at_most_ten(self):
        assert max(r.dessin_count for r in catalog_rows(12)) == 10

    def test_normal_rows_have_count_one(self):
        assert all(r.dessin_count == 1 for r in catalog_rows(10) if r.normal)


class TestClassify:
    def test_cases(self):
        assert classify_pair((3, 6, 6), (3, 6, 6)).case == "2"
        s = classify_pair((4, 4, 4), (2, 8, 8))
        assert (s.case, s.n) == ("3|4", 2)
        assert classify_pair((2, 3, 7), (2, 3, 7)).case == "1"

    def test_non_hyperbolic(self):
        with pytest.raises(ValueError):
            classify_pair((2, 3, 6), (2, 3, 6))


class TestParity:
    def test_examples(self, ex5_triple):
        assert parity_classify(ex5_triple, is_even) == 0
        k, d = 2, 25
        x = parse_perm(f"(1,{12 * k + 1})(2,{6 * k + 3})(3,{2 * k + 4})(4,{k + 5})(5,6)", d)
        z = perm_from_cycles([tuple(range(1, 12 * k + 1))], d)
        assert parity_classify(make_triple(x, (z * x).inverse(), z), is_even) == 1

    def test_all_inside(self):
        t = make_triple(parse_perm("(1,2,3)", 3), parse_perm("(1,3,2)", 3))
        with pytest.raises(ValueError):
            parity_classify(t, is_even)


@given(perm_pairs(min_degree=2, max_degree=8))
def test_parity_classify_unique_or_error(pair):
    x, y = pair
    t = make_triple(x, y)
    inside = [is_even(g) for g in t]
    if inside.count(True) == 1:
        j = parity_classify(t, is_even)
        assert inside[j]
    else:
        with pytest.raises(ValueError):
            parity_classify(t, is_even)


class TestIndexTwo:
    def test_example5_contains_y(self, ex5_triple):
        sub = index2_subtriple(ex5_triple, "contains_y")
        assert sub.type == TriangleType(6, 6, 3)
        assert (sub.x * sub.y * sub.z).is_identity()
        # x is even and y odd, so this subgroup is not the kernel of the sign: it is all of S5
        assert sub.generated().order == 120

    def test_abelian_toy(self):
        x = perm_from_cycles([(1, 2)], 6)
        y = perm_from_cycles([(3, 4, 5, 6)], 6)
        t = make_triple(x, y)
        sub = index2_subtriple(t, "contains_y")
        assert sub.generated() == PermGroup([y], 6)
        assert t.generated().order == 2 * sub.generated().order

    def test_contains_z_example10(self):
        n = 2
        x = parse_perm(f"(1,{4 * n + 1})(2,{2 * n + 3})(3,{n + 4})(4,5)", 9)
        z = perm_from_cycles([tuple(range(1, 4 * n + 1))], 9)
        t = make_triple(x, (z * x).inverse(), z, type=(2, 2 * n, 4 * n))
        sub = index2_subtriple(t, "contains_z")
        assert sub.type == TriangleType(4 * n, 4 * n, n)

    def test_rejects_odd_periods(self):
        t = make_triple(parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3))
        with pytest.raises(ValueError):
            index2_subtriple(t, "contains_y")


@st.composite
def even_triples(draw):
    """Triples (x, y, z) in some S_d with x an involution and y, z of even order."""
    d = draw(st.integers(4, 8))
    k = draw(st.integers(1, d // 2))
    pts = draw(st.permutations(list(range(1, d + 1))))
    x = perm_from_cycles([tuple(pts[2 * i:2 * i + 2]) for i in range(k)], d)
    y = Permutation(list(draw(st.permutations(list(range(d))))))
    t = make_triple(x, y)
    assume(t.type.m % 2 == 0 and t.type.n % 2 == 0)
    return t


@given(even_triples(), st.sampled_from(["contains_y", "contains_z"]))
def test_index2_subtriple_is_valid(t, which):
    G = t.generated()
    try:
        sub = index2_subtriple(t, which)
    except ValueError:
        # only allowed when a period collapses in this quotient
        x, y, z = t
        _, M, N = t.type
        if which == "contains_y":
            elems, declared = (y, y.conj(x), y * z * z * y.inverse()), (M, M, N // 2)
        else:
            elems, declared = (z, z.conj(x), y * y), (N, N, M // 2)
        assert tuple(g.order() for g in elems) != declared
        return
    assert (sub.x * sub.y * sub.z).is_identity()
    H = sub.generated()
    assert all(g in G for g in sub)
    assert G.order in (H.order, 2 * H.order)
    # a proper parity pattern (x odd, the chosen generator even) forces index exactly 2
    keep = t.y if which == "contains_y" else t.z
    if not is_even(t.x) and is_even(keep):
        assert G.order == 2 * H.order and t.x not in H


class TestBuildPair:
    def test_example5(self, ex5_triple):
        report = build_pair("cor52", sym_handle(5), ex5_triple)
        assert report.verdict == "isomorphic" and report.genus == 21
        assert [list(t) for t in report.types] == [[3, 6, 6], [3, 6, 6]]
        assert all(s.euler_genus == 21 for s in report.specs)
        doc = json.loads(report.to_json())
        assert doc["construction"] == "cor52" and doc["group"]["order"] == 120

    def test_parity_mismatch(self, ex5_triple):
        with pytest.raises(ValueError):
            build_pair("cor53", sym_handle(5), ex5_triple)

    def test_type_mismatch(self, ex5_triple):
        with pytest.raises(ValueError):
            build_pair("cor61", sym_handle(5), ex5_triple)

    def test_cor53_splits_off_a_central_involution(self):
        x = parse_perm("(2,3)(4,5)(6,7)", 7)
        y = parse_perm("(1,2)(3,6)(4,5,7)", 7)
        t = make_triple(x, y, type=(2, 6, 6))
        report = build_pair("cor53", sym_handle(7), t)
        assert report.parity_j == 1
        side = next(s for s in report.specs if s.structure == "HxC2")
        D, deg = side.group, 7
        flip = Permutation(list(range(deg)) + [deg + 1, deg])
        assert flip in D
        assert all(flip * g == g * flip for g in D.generators)
        # D is generated by its part fixing the two extra points together with the flip
        base = PermGroup([g if g.images[deg] == deg else g * flip for g in D.generators], deg + 2)
        assert flip not in base and 2 * base.order == D.order
        assert all(is_even(Permutation(list(g.images[:deg]))) for g in base.generators)
        for s in report.specs:
            assert s.genus == s.euler_genus == report.genus
        assert report.specs[0].group.order == report.specs[1].group.order

    def test_no_membership_test(self, ex5_triple):
        handle = GroupHandle("custom", {}, symmetric_group(5))
        with pytest.raises(ValueError):
            build_pair("cor52", handle, ex5_triple)


def test_regular_model_genus_matches(ex5_triple):
    G = ex5_triple.generated()
    h = regular_hypermap_from_triple(G, ex5_triple)
    assert genus_of(h) == rh_genus(ex5_triple.type, G.order)
