"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line in the summary.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

import test_hypermap
import test_perm
import test_triangle
from conftest import closure, sl2_order_bruteforce
from dessinpairs import constructions as C
from dessinpairs.counting import (
    ClassStructure,
    count_kernels,
    count_smooth_epimorphisms,
    count_triples_bruteforce,
    fixture_path,
    frobenius_count,
    gamma_index,
    load_table,
    match_classes,
    modular_dessin_data,
    qualifying_class_triples,
)
from dessinpairs.hypermap import ROLE_PERMUTATIONS, associate, genus_of, regular_hypermap_from_triple, walsh_graph
from dessinpairs.linfp import PGL2
from dessinpairs.perm import PermGroup, Permutation, structure_fingerprint, symmetric_group
from dessinpairs.triangle import rh_genus

GENUS_GOLDENS = [
    ((3, 6, 6), 120, 21),
    ((3, 6, 6), 336, 57),
    ((3, 6, 6), 362880, 60481),
    ((8, 16, 16), 4896, 1837),
    ((4, 4, 4), 362880, 45361),
    ((2, 8, 8), 362880, 45361),
    ((4, 4, 4), 4896, 613),
    ((2, 8, 8), 4896, 613),
    ((6, 6, 6), 2184, 547),
    ((3, 12, 12), 2184, 547),
    ((2, 3, 7), 168, 3),
    ((2, 3, 8), 48, 2),
]


def within(seconds, start):
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"


def direct_product(*groups):
    """Disjoint-union direct product of permutation groups."""
    degree = sum(G.degree for G in groups)
    gens, shift = [], 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            images[shift:shift + G.degree] = [shift + i for i in g.images]
            gens.append(Permutation(images))
        shift += G.degree
    return PermGroup(gens, degree)


def all_passed(result):
    failures = [(c.name, c.expected, c.computed) for c in result.failures()]
    assert not failures, failures


@pytest.mark.criterion(1, "reference genera from Riemann-Hurwitz (exact)")
def test_criterion_1_genus_goldens():
    for t, order, genus in GENUS_GOLDENS:
        assert rh_genus(t, order) == genus, (t, order)


@pytest.mark.criterion(2, "(2,6,6) triples in PGL2(7): 336 brute, 336 character sum, all generate, one kernel")
def test_criterion_2_counting_golden():
    start = time.perf_counter()
    G = PGL2(7).group
    cs = ClassStructure(G)
    table = load_table(fixture_path("pgl2_7.tbl"))
    column = {c: t for t, c in enumerate(match_classes(table, cs))}
    qualifying = qualifying_class_triples(cs, (2, 6, 6))
    assert sum(count_triples_bruteforce(cs, *q) for q in qualifying) == 336

    # raw character sum, checked against the integrality tolerance
    raw = 0.0
    for q in qualifying:
        ids = [column[c] for c in q]
        vals = table.values[:, ids]
        terms = vals[:, 0] * vals[:, 1] * vals[:, 2] / table.values[:, 0]
        raw += math.prod(table.sizes[i] for i in ids) / table.order * terms.sum()
    assert abs(raw - 336) < 1e-3
    assert sum(frobenius_count(table, *(column[c] for c in q)) for q in qualifying) == 336

    epi = count_smooth_epimorphisms(G, (2, 6, 6), cs)
    assert epi == 336
    assert count_kernels(epi, 336) == 1
    within(10, start)


@pytest.mark.criterion(3, "character sum equals brute force on every class triple of S4 and S5")
def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    for name, G in (("s4.tbl", symmetric_group(4)), ("s5.tbl", symmetric_group(5))):
        table = load_table(fixture_path(name))
        cs = ClassStructure(G)
        matching = match_classes(table, cs)
        for a, b, c in itertools.product(range(table.k), repeat=3):
            assert frobenius_count(table, a, b, c) == count_triples_bruteforce(cs, *(matching[i] for i in (a, b, c)))
    within(30, start)


@pytest.mark.criterion(4, "pair constructions: Examples 5, 6, 7 (both variants), 10, 12, 13")
def test_criterion_4_pair_goldens():
    start = time.perf_counter()
    runs = {i: C.run_example(i) for i in (
        "ex5", "ex6", "ex7:n=8,p=17,variant=swap", "ex7:n=8,p=17,variant=noswap",
        "ex10:n=2", "ex12:n=2", "ex13:n=3,p=13")}
    for result in runs.values():
        all_passed(result)
    rep = {i: r.report for i, r in runs.items()}

    assert rep["ex5"].verdict == "isomorphic" and rep["ex5"].genus == 21
    assert rep["ex6"].verdict == "not-isomorphic"
    assert [s.group.order for s in rep["ex6"].specs] == [362880, 362880]
    assert rep["ex7:n=8,p=17,variant=swap"].verdict == "isomorphic"
    assert rep["ex7:n=8,p=17,variant=noswap"].verdict == "not-isomorphic"
    assert rep["ex7:n=8,p=17,variant=swap"].genus == 1837

    # order 9!, trivial center, derived subgroup of index 2, acting as S9 on the first nine points
    for s in rep["ex10:n=2"].specs:
        fp = s.fingerprint
        assert (fp.order, fp.center_order, fp.derived_order) == (362880, 1, 181440)
        moved = PermGroup([Permutation(list(g.images[:9])) for g in s.group.generators], 9)
        assert moved.order == 362880

    a9c2, s9 = (s.fingerprint for s in rep["ex12:n=2"].specs)
    assert a9c2.order == s9.order == 362880
    assert (a9c2.center_order, a9c2.derived_order) == (2, 181440)
    assert (s9.center_order, s9.derived_order) == (1, 181440)

    l2c2, pgl = (s.fingerprint for s in rep["ex13:n=3,p=13"].specs)
    assert l2c2.order == pgl.order == 2184
    assert (l2c2.center_order, l2c2.derived_order) == (2, 1092)
    assert (pgl.center_order, pgl.derived_order) == (1, 1092)
    assert [s.structure for s in rep["ex13:n=3,p=13"].specs] == ["HxC2", "G"]
    within(60, start)


@pytest.mark.criterion(5, "Example 4 for 3 <= n <= 8: orders, center, genus (n-1)^2, Walsh graphs 2K_{n,n} and nC_{2n}")
def test_criterion_5_example4_suite():
    start = time.perf_counter()
    for n in range(3, 9):
        built = C.build_example4(n)
        E = built.group
        assert E.order == 4 * n * n == E.perm_group.order
        assert len(E.center()) == 2 * n
        g1, g2 = built.report.specs
        assert g1.group.order == g2.group.order == 2 * n * n
        assert g1.group.is_abelian() and not g2.group.is_abelian()
        for h in built.hypermaps:
            assert genus_of(h) == (n - 1) ** 2
        assert [s.euler_genus for s in built.report.specs] == [(n - 1) ** 2] * 2

        w1, w2 = (walsh_graph(h) for h in built.hypermaps)
        # 2K_{n,n}: every white-black pair joined by exactly two edges
        assert np.array_equal(w1.table(), np.full((n, n), 2))
        # nC_{2n}: a single 2n-cycle with every edge replaced by n parallel edges
        t2 = w2.table()
        assert (w2.n_white, w2.n_black) == (n, n)
        assert ((t2 > 0).sum(axis=0) == 2).all() and ((t2 > 0).sum(axis=1) == 2).all()
        assert set(t2[t2 > 0].tolist()) == {n}
        assert components(t2 > 0) == 1 and t2.sum() == 2 * n * n
    within(5, start)


def components(adjacency):
    """Connected components of the bipartite graph with the given biadjacency matrix."""
    n_white, n_black = adjacency.shape
    seen, count = set(), 0
    for start in range(n_white):
        if ("w", start) in seen:
            continue
        count += 1
        stack = [("w", start)]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            side, i = node
            if side == "w":
                stack.extend(("b", j) for j in range(n_black) if adjacency[i, j])
            else:
                stack.extend(("w", j) for j in range(n_white) if adjacency[j, i])
    return count


@pytest.mark.criterion(6, "case-4 pairs for d = 1, 2, 3, 6: (V4,C4), (Q8,C8), (V4xC3,C12), (Q8xC3,C24)")
def test_criterion_6_case4_suite():
    start = time.perf_counter()
    fp = structure_fingerprint
    expected = {
        1: (fp(C.klein_four()), fp(C.cyclic_group(4)), 0),
        2: (fp(C.quaternion_group()), fp(C.cyclic_group(8)), 2),
        3: (fp(direct_product(C.klein_four(), C.cyclic_group(3))), fp(C.cyclic_group(12)), 4),
        6: (fp(direct_product(C.quaternion_group(), C.cyclic_group(3))), fp(C.cyclic_group(24)), 10),
    }
    for d, (f1, f2, genus) in expected.items():
        result = C.build_example14(d)
        all_passed(result)
        rep = result.report
        assert tuple(s.fingerprint for s in rep.specs) == (f1, f2), d
        assert rep.genus == genus and [s.euler_genus for s in rep.specs] == [genus, genus]
    within(10, start)


@pytest.mark.criterion(7, "congruence index against |SL2(Z_m)|/2 and modular dessin genera for n <= 20")
def test_criterion_7_congruence():
    start = time.perf_counter()
    for m in range(3, 13):
        assert gamma_index(m) == sl2_order_bruteforce(m) // 2
    for n in range(1, 21):
        aut, genus = modular_dessin_data(n)
        assert isinstance(genus, int) and genus >= 0
        odd_primes = [p for p in range(3, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
        density = math.prod((1 - Fraction(1, p * p) for p in odd_primes), start=Fraction(1))
        assert aut == 4 * n ** 3 * density
        # Riemann-Hurwitz for type (n, 4n, 4n) with that automorphism group order
        assert 2 * genus - 2 == aut * (1 - Fraction(1, n) - Fraction(2, 4 * n))
    within(10, start)


def corpus_groups():
    yield "S4", symmetric_group(4)
    yield "S5", symmetric_group(5)
    yield "PGL2(7)", PGL2(7).group
    yield "L2(7)", PGL2(7).psl_group
    yield "PGL2(13)", PGL2(13).group
    yield "PGL2(17)", PGL2(17).group
    yield "GL2(3)", C.gl2_3()
    for n in range(3, 9):
        yield f"ex4 n={n}", C.Example4Group(n).perm_group
    for d in (1, 2, 3, 6):
        for s in C.build_example14(d).report.specs:
            yield f"ex14 d={d} {s.label}", s.group
    for s in C.run_example("ex13:n=3,p=13").report.specs:
        yield f"ex13 {s.structure}", s.group


@pytest.mark.criterion(8, "property suites: genus, associates, parity, index-2 subgroups, BSGS orders")
def test_criterion_8_properties():
    # Euler genus = Riemann-Hurwitz genus and associate invariance on regular dessins
    test_hypermap.test_regular_cycle_counts()
    test_hypermap.test_pair_acceptance_matches_orbit_count()
    L = PGL2(7).psl_group
    h = regular_hypermap_from_triple(L, C.first_triple(L, (2, 3, 7)))
    assert {genus_of(associate(h, s)) for s in ROLE_PERMUTATIONS} == {3}
    # parity and index-2 properties
    test_triangle.test_parity_classify_unique_or_error()
    test_triangle.test_index2_subtriple_is_valid()
    # BSGS order against closure, on generated samples and on every corpus group up to order 5000
    test_perm.test_order_matches_brute_force_closure()
    for name, G in corpus_groups():
        if G.order <= 5000:
            assert len(closure(G.generators, G.degree)) == G.order, name


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
