import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dessinpairs import counting
from dessinpairs.counting import (
    CharacterTable,
    ClassStructure,
    conjugacy_classes,
    count_kernels,
    count_smooth_epimorphisms,
    count_triples_bruteforce,
    fixture_path,
    frobenius_count,
    frobenius_count_r,
    gamma_index,
    load_table,
    match_classes,
    modular_dessin_data,
    parse_table,
    parse_value,
    qualifying_class_triples,
)
from dessinpairs.linfp import PGL2
from dessinpairs.perm import PermGroup, Permutation, perm_from_cycles, symmetric_group

from conftest import closure, sl2_order_bruteforce

FIXTURES = {"s4.tbl": lambda: symmetric_group(4), "s5.tbl": lambda: symmetric_group(5),
            "pgl2_7.tbl": lambda: PGL2(7).group}


@pytest.fixture(scope="module", params=sorted(FIXTURES))
def fixture_group(request):
    table = load_table(fixture_path(request.param))
    cs = ClassStructure(FIXTURES[request.param]())
    return table, cs, match_classes(table, cs)


class TestClasses:
    def test_cyclic(self):
        classes = conjugacy_classes(PermGroup([perm_from_cycles([(1, 2, 3)], 3)]))
        assert sorted(c.size for c in classes) == [1, 1, 1]

    def test_s5(self):
        classes = conjugacy_classes(symmetric_group(5))
        assert len(classes) == 7
        assert sorted(c.cycle_type for c in classes) == sorted(
            c.cycle_type for c in counting.symmetric_classes(5))

    def test_pgl2_7(self):
        assert sum(c.size for c in conjugacy_classes(PGL2(7).group)) == 336

    def test_large_symmetric_uses_partitions(self):
        assert len(conjugacy_classes(symmetric_group(12))) == 77


class TestTables:
    def test_values(self):
        assert parse_value("3") == 3
        assert parse_value("-1/2") == -0.5
        assert parse_value("-0.5+1.3229i") == complex(-0.5, 1.3229)
        assert parse_value("-i") == -1j

    def test_trivial(self):
        t = load_table(fixture_path("trivial.tbl"))
        assert frobenius_count(t, 0, 0, 0) == 1

    def test_missing_line(self):
        with pytest.raises(ValueError):
            parse_table("group X\norder 1\nclasses 1\nsizes 1\n1\n")

    def test_rejects_bad_degrees(self):
        text = fixture_path("s4.tbl").read_text().replace("\n3 1 -1 0 -1", "\n2 1 -1 0 -1")
        with pytest.raises(ValueError):
            parse_table(text)

    def test_rejects_non_orthogonal_rows(self):
        text = fixture_path("s4.tbl").read_text().replace("\n1 -1 1 1 -1", "\n1 -1 1 1 1")
        with pytest.raises(ValueError):
            parse_table(text)

    def test_non_integral_sum(self):
        t = load_table(fixture_path("s4.tbl"))
        broken = CharacterTable(t.name, t.order, t.sizes, t.orders, t.values * 0.9)
        with pytest.raises(ValueError):
            frobenius_count(broken, 1, 1, 3)

    def test_load_falls_back_to_packaged(self):
        assert load_table("fixtures/pgl2_7.tbl").order == 336


def test_frobenius_equals_brute_force_everywhere(fixture_group):
    table, cs, matching = fixture_group
    k = table.k
    for a, b in itertools.product(range(k), repeat=2):
        brute = cs.pair_counts(matching[a], matching[b])
        for c in range(k):
            assert frobenius_count(table, a, b, c) == brute[matching[c]]


def test_pair_counts_sum(fixture_group):
    _, cs, _ = fixture_group
    for X, Y in itertools.product(range(len(cs)), repeat=2):
        assert cs.pair_counts(X, Y).sum() == cs.classes[X].size * cs.classes[Y].size


def test_brute_force_against_element_scan():
    cs = ClassStructure(symmetric_group(4))
    elems = [Permutation(r) for r in cs.elements.tolist()]
    cls = {e: cs.class_of(e) for e in elems}
    for X, Y, Z in itertools.product(range(len(cs)), repeat=3):
        direct = sum(1 for x in elems for y in elems
                     if cls[x] == X and cls[y] == Y and cls[(x * y).inverse()] == Z)
        assert count_triples_bruteforce(cs, X, Y, Z) == direct


class TestFrobeniusR:
    def test_r2_gives_class_size(self, fixture_group):
        table, cs, matching = fixture_group
        column = {c: t for t, c in enumerate(matching)}
        for t, c in enumerate(matching):
            inv = column[cs.inverse_class(c)]
            assert frobenius_count_r(table, (t, inv)) == table.sizes[t]

    def test_r3_is_frobenius_count(self):
        t = load_table(fixture_path("s5.tbl"))
        assert frobenius_count_r(t, (1, 2, 3)) == frobenius_count(t, 1, 2, 3)

    def test_r4_transpositions_in_s4(self):
        table = load_table(fixture_path("s4.tbl"))
        transpositions = [perm_from_cycles([pair], 4) for pair in itertools.combinations(range(1, 5), 2)]
        brute = sum(1 for w in itertools.product(transpositions, repeat=4)
                    if (w[0] * w[1] * w[2] * w[3]).is_identity())
        assert frobenius_count_r(table, (1, 1, 1, 1)) == brute

    def test_needs_two_classes(self):
        with pytest.raises(ValueError):
            frobenius_count_r(load_table(fixture_path("s4.tbl")), (1,))


def epimorphism_oracle(G: PermGroup, orders) -> int:
    elems = [Permutation(list(e)) for e in closure(G.generators, G.degree)]
    l, m, n = orders
    return sum(1 for x in elems if x.order() == l for y in elems
               if y.order() == m and (x * y).order() == n and len(closure([x, y], G.degree)) == G.order)


class TestEpimorphisms:
    def test_c2(self):
        assert count_smooth_epimorphisms(PermGroup([Permutation([1, 0])]), (2, 2, 2)) == 0

    def test_pgl2_7(self):
        G = PGL2(7).group
        cs = ClassStructure(G)
        epi = count_smooth_epimorphisms(G, (2, 6, 6), cs)
        assert epi == 336
        assert sum(count_triples_bruteforce(cs, *q) for q in qualifying_class_triples(cs, (2, 6, 6))) == 336
        assert count_kernels(epi, counting.aut_order("pgl2", 7)) == 1

    @pytest.mark.parametrize("orders", [(2, 3, 4), (2, 4, 3), (3, 3, 4)])
    def test_s4_against_oracle(self, orders):
        G = symmetric_group(4)
        assert count_smooth_epimorphisms(G, orders) == epimorphism_oracle(G, orders)

    def test_s5_kernels(self):
        epi = count_smooth_epimorphisms(symmetric_group(5), (2, 6, 6))
        assert epi > 0 and count_kernels(epi, counting.aut_order("sym", 5)) * 120 == epi

    def test_kernel_edge_cases(self):
        assert count_kernels(0, 7) == 0
        with pytest.raises(ValueError):
            count_kernels(10, 3)

    @pytest.mark.parametrize("orders", [(2, 3, 4), (2, 4, 4), (3, 4, 4)])
    def test_at_most_class_count(self, orders):
        cs = ClassStructure(symmetric_group(5))
        total = sum(count_triples_bruteforce(cs, *q) for q in qualifying_class_triples(cs, orders))
        assert count_smooth_epimorphisms(cs.group, orders, cs) <= total


def test_count_report():
    G = PGL2(7).group
    r = counting.count_report(G, (2, 6, 6), "pgl2:7", load_table(fixture_path("pgl2_7.tbl")), 336)
    d = r.as_dict()
    assert (d["brute_count"], d["frobenius_count"], d["epi_count"], d["kernel_count"]) == (336, 336, 336, 1)
    assert r.consistent


class TestCongruence:
    @pytest.mark.parametrize("m", range(3, 13))
    def test_gamma_index_oracle(self, m):
        assert gamma_index(m) == sl2_order_bruteforce(m) // 2

    def test_gamma_index_4(self):
        assert gamma_index(4) == 24

    def test_small_m(self):
        with pytest.raises(ValueError):
            gamma_index(2)

    def test_first_values(self):
        assert modular_dessin_data(1) == (4, 0)


@given(st.integers(1, 60))
def test_modular_dessin_data(n):
    aut, genus = modular_dessin_data(n)
    assert aut == gamma_index(4 * n) // 6
    odd = [p for p in range(3, n + 1, 2) if n % p == 0 and all(p % q for q in range(3, p, 2))]
    density = math.prod((1 - Fraction(1, p * p) for p in odd), start=Fraction(1))
    assert aut == 4 * n ** 3 * density
    assert genus >= 0
    assert genus == 1 + (2 * n - 3) * n * n * density
    assert 4 * n * (genus - 1) == aut * (2 * n - 3)


def test_pair_counts_are_integers():
    cs = ClassStructure(symmetric_group(4))
    assert cs.pair_counts(1, 1).dtype == np.int64
