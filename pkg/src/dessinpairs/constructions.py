"""Builders for the worked examples, each returning a report and a list of checked claims."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import counting
from .hypermap import (
    Hypermap,
    genus_of,
    is_multiple_complete_bipartite,
    is_multiple_cycle,
    is_regular,
    regular_hypermap_from_triple,
    walsh_graph,
)
from .linfp import (
    PGL2,
    ParameterError,
    Mat2,
    MatrixTriple,
    ProjElement,
    build_example7_triple,
    build_example11_triple,
    build_example13_triple,
    eigen_ratios,
    example7_swaps,
)
from .perm import (
    PermGroup,
    Permutation,
    alternating_group,
    direct_product,
    element_orders,
    embed,
    format_perm,
    normal_closure,
    perm_from_cycles,
    structure_fingerprint,
    symmetric_group,
)
from .triangle import (
    DessinSpec,
    GeneratingTriple,
    GroupHandle,
    PairReport,
    build_pair,
    case4_pipeline,
    cover_genus,
    make_triple,
    rh_genus,
    singerman_lookup,
)

log = logging.getLogger(__name__)


@dataclass
class Claim:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def as_dict(self) -> dict:
        return {"claim": self.name, "expected": _jsonable(self.expected),
                "computed": _jsonable(self.computed), "passed": self.passed}


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(u) for k, u in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, np.integer):
        return int(v)
    return str(v)


@dataclass
class ExampleResult:
    id: str
    claims: list[Claim]
    report: PairReport | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "passed": self.passed,
            "claims": [c.as_dict() for c in self.claims],
            "report": None if self.report is None else self.report.to_dict(),
            **({"extra": _jsonable(self.extra)} if self.extra else {}),
        }


# -- group handles ------------------------------------------------------------------

def _is_even(g: Permutation) -> bool:
    return g.parity() == "even"


def sym_handle(d: int) -> GroupHandle:
    return GroupHandle("sym", {"d": d}, symmetric_group(d), h_member=_is_even, complete=d not in (2, 6))


def alt_handle(d: int) -> GroupHandle:
    return GroupHandle("alt", {"d": d}, alternating_group(d))


def pgl2_handle(p: int, labels=None) -> GroupHandle:
    model = PGL2(p)
    return GroupHandle("pgl2", {"p": p}, model.group, h_member=model.psl_group.contains,
                       complete=p > 3, labels=labels)


def psl2_handle(p: int) -> GroupHandle:
    return GroupHandle("psl2", {"p": p}, PGL2(p).psl_group)


def ex4_handle(n: int) -> GroupHandle:
    return GroupHandle("ex4", {"n": n}, Example4Group(n).perm_group)


_SPEC_KINDS: dict[str, Callable[[int], GroupHandle]] = {
    "sym": sym_handle, "alt": alt_handle, "pgl2": pgl2_handle, "psl2": psl2_handle, "ex4": ex4_handle,
}


def parse_group_spec(spec: str) -> GroupHandle:
    """Group from a spec such as ``sym:5``, ``alt:6``, ``pgl2:7``, ``psl2:13`` or ``ex4:3``."""
    kind, sep, param = spec.partition(":")
    if not sep or kind not in _SPEC_KINDS or not param.isdigit() or int(param) < 1:
        raise ParameterError(f"malformed group spec {spec!r}; expected one of {sorted(_SPEC_KINDS)} followed by :N")
    return _SPEC_KINDS[kind](int(param))


# -- Example 4: a semidirect product C_2n x C_n : C_2 ----------------------------------

class Example4Group:
    """Elements a^i b^j c^e with a^2n = b^n = c^2 = 1, ab = ba, bc = cb, c a c = a^-1 b^-1."""

    def __init__(self, n: int):
        if n < 3:
            raise ParameterError("n must be at least 3")
        self.n = n
        self.elements = [(i, j, e) for e in range(2) for i in range(2 * n) for j in range(n)]
        self.identity = (0, 0, 0)
        self.a, self.b, self.c = (1, 0, 0), (0, 1, 0), (0, 0, 1)

    @property
    def order(self) -> int:
        return 4 * self.n * self.n

    def mul(self, g, h):
        n = self.n
        (i, j, e), (k, l, f) = g, h
        if e == 0:
            return ((i + k) % (2 * n), (j + l) % n, f)
        # c a^k b^l = a^-k b^(l-k) c
        return ((i - k) % (2 * n), (j - k + l) % n, (1 + f) % 2)

    def inv(self, g):
        i, j, e = g
        if e == 0:
            return (-i % (2 * self.n), -j % self.n, 0)
        return (i, (i - j) % self.n, 1)

    def prod(self, *gs):
        out = self.identity
        for g in gs:
            out = self.mul(out, g)
        return out

    def power(self, g, k: int):
        out = self.identity
        for _ in range(k % self.element_order(g) if k >= 0 else k % self.element_order(g)):
            out = self.mul(out, g)
        return out

    def element_order(self, g) -> int:
        k, h = 1, g
        while h != self.identity:
            h, k = self.mul(h, g), k + 1
        return k

    def index(self, g) -> int:
        i, j, e = g
        return (e * 2 * self.n + i) * self.n + j

    def perm(self, g) -> Permutation:
        """Right translation x -> x g on the elements."""
        images = [0] * self.order
        for h in self.elements:
            images[self.index(h)] = self.index(self.mul(h, g))
        return Permutation(images, check=False)

    def closure(self, gens) -> set:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    k = self.mul(h, g)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        return seen

    def center(self) -> set:
        gens = (self.a, self.b, self.c)
        return {g for g in self.elements if all(self.mul(g, s) == self.mul(s, g) for s in gens)}

    @cached_property
    def perm_group(self) -> PermGroup:
        return PermGroup([self.perm(s) for s in (self.a, self.b, self.c)], self.order)


@dataclass
class Example4Build:
    group: Example4Group
    report: PairReport
    hypermaps: tuple[Hypermap, Hypermap]
    claims: list[Claim]


def build_example4(n: int) -> Example4Build:
    E = Example4Group(n)
    a, b, c = E.a, E.b, E.c
    P = E.perm
    G = E.perm_group
    claims = [Claim("|G| = 4n^2", 4 * n * n, G.order)]

    Z = E.center()
    claims.append(Claim("|Z(G)| = 2n", 2 * n, len(Z)))
    claims.append(Claim("Z(G) = <a^n, b>", True, Z == E.closure([E.power(a, n), b])))

    ab_inv = E.inv(E.mul(a, b))
    t1 = make_triple(P(a), P(b), P(ab_inv), type=(2 * n, n, 2 * n))
    h1_triple = t1.rotated().rotated()  # ((ab)^-1, a, b), type (2n, 2n, n)
    x2, y2, z2 = E.mul(E.inv(a), c), E.prod(a, b, c), E.mul(a, a)
    claims.append(Claim("(a^-1 c)(abc)(a^2) = 1", True, E.prod(x2, y2, z2) == E.identity))
    h2_triple = make_triple(P(x2), P(y2), P(z2), type=(2 * n, 2 * n, n))

    G1, G2 = h1_triple.generated(), h2_triple.generated()
    claims += [
        Claim("|G1| = 2n^2", 2 * n * n, G1.order),
        Claim("|G2| = 2n^2", 2 * n * n, G2.order),
        Claim("G1 abelian", True, G1.is_abelian()),
        Claim("G2 nonabelian", False, G2.is_abelian()),
    ]
    fp1, fp2 = structure_fingerprint(G1), structure_fingerprint(G2)
    claims.append(Claim("G1 exponent 2n", 2 * n, fp1.exponent))

    maps, specs = [], []
    for label, grp, triple, fp in (("H1", G1, h1_triple, fp1), ("H2", G2, h2_triple, fp2)):
        h = regular_hypermap_from_triple(grp, triple)
        maps.append(h)
        genus = rh_genus(triple.type, grp.order)
        euler = genus_of(h)
        claims.append(Claim(f"{label} genus (n-1)^2", (n - 1) ** 2, euler))
        claims.append(Claim(f"{label} Riemann-Hurwitz genus", (n - 1) ** 2, genus))
        specs.append(DessinSpec(label, grp, triple, genus, euler, fp, label))
    w1, w2 = walsh_graph(maps[0]), walsh_graph(maps[1])
    claims += [
        Claim("H1 has n white and n black vertices", (n, n), (w1.n_white, w1.n_black)),
        Claim("H1 has 2n faces", 2 * n, maps[0].counts[2]),
        Claim("H1 Walsh graph is 2K_{n,n}", True, is_multiple_complete_bipartite(w1, 2)),
        Claim("H2 Walsh graph is nC_{2n}", True, is_multiple_cycle(w2, n) and w2.n_white + w2.n_black == 2 * n),
    ]

    D = E.closure([E.mul(E.mul(a, a), b), c])
    r = E.mul(E.mul(a, a), b)
    claims.append(Claim("D = <a^2 b, c> dihedral of order 2n", (2 * n, n, True),
                        (len(D), E.element_order(r), E.prod(c, r, c) == E.inv(r))))
    ZD = {E.mul(z, d) for z in Z for d in D}
    if n % 2:
        claims.append(Claim("odd n: Z meets D trivially and G = ZD", (1, E.order), (len(Z & D), len(ZD))))
    else:
        special = E.mul(E.power(a, n), E.power(b, n // 2))
        claims.append(Claim("even n: Z meets D in <a^n b^(n/2)>", {E.identity, special}, Z & D))
        claims.append(Claim("even n: |G:ZD| = 2", 2, E.order // len(ZD)))

    report = PairReport(
        construction="direct",
        kind="ex4",
        params={"n": n},
        group_order=G.order,
        triple=tuple(format_perm(g) for g in h2_triple),
        specs=tuple(specs),
        genus=specs[0].genus,
        parity_j=None,
        verdict="not-isomorphic",
        notes=["one automorphism group is abelian, the other is not"],
    )
    return Example4Build(E, report, (maps[0], maps[1]), claims)


# -- shared claim helpers -------------------------------------------------------------

def _pair_claims(report: PairReport, genus: int | None, verdict: str, types, structures) -> list[Claim]:
    claims = [
        Claim("types", [list(t) for t in types], [list(t) for t in report.types]),
        Claim("verdict", verdict, report.verdict),
        Claim("structures", list(structures), [s.structure for s in report.specs]),
        Claim("equal dessin group orders", True, report.specs[0].group.order == report.specs[1].group.order),
    ]
    if genus is not None:
        claims.append(Claim("genus", genus, report.genus))
    for s in report.specs:
        if s.euler_genus is not None:
            claims.append(Claim(f"{s.label} Euler genus", s.genus, s.euler_genus))
    return claims


def _perm_triple(model: PGL2, t: MatrixTriple) -> GeneratingTriple:
    return make_triple(model.perm(t.x), model.perm(t.y), model.perm(t.z))


def _labels(t: MatrixTriple) -> tuple[str, str, str]:
    return (str(t.X), str(t.Y), str(t.Z))


# -- Examples 5 and 6: (2,6,6) triples in symmetric groups -------------------------------

def build_example5() -> ExampleResult:
    x = perm_from_cycles([(1, 2), (3, 4)], 5)
    y = perm_from_cycles([(1, 3), (2, 4, 5)], 5)
    handle = sym_handle(5)
    triple = make_triple(x, y, type=(2, 6, 6))
    report = build_pair("cor52", handle, triple)
    g = perm_from_cycles([(2, 5), (3, 4)], 5)
    claims = [
        Claim("z = (14)(253)", "(1,4)(2,5,3)", format_perm(triple.z)),
        Claim("|<x,y>| = 120", 120, triple.generated().order),
        Claim("parity position j", 0, report.parity_j),
        Claim("(25)(34) transposes y and z", True, triple.y.conj(g) == triple.z and triple.z.conj(g) == triple.y),
    ] + _pair_claims(report, 21, "isomorphic", [(3, 6, 6), (3, 6, 6)], ["G", "G"])
    return ExampleResult("ex5", claims, report)


def build_example6() -> ExampleResult:
    x = perm_from_cycles([(1, 7), (2, 8), (4, 6), (5, 9)], 9)
    y = perm_from_cycles([(1, 2, 3, 4, 5, 6)], 9)
    handle = sym_handle(9)
    triple = make_triple(x, y, type=(2, 6, 6))
    G = triple.generated()
    log.info("ex6: building the pair in S9 x C2")
    report = build_pair("cor52", handle, triple)
    claims = [
        Claim("z = (143827)(569)", "(1,4,3,8,2,7)(5,6,9)", format_perm(triple.z)),
        Claim("|<x,y>| = 362880", 362880, G.order),
        Claim("<x,y> is 2-transitive", True, G.is_two_transitive()),
        Claim("x y^2 = (17359)(284)", "(1,7,3,5,9)(2,8,4)", format_perm(x * y * y)),
        Claim("parity of x, y, z", ["even", "odd", "odd"], [g.parity() for g in triple]),
        Claim("y, z cycle types differ", True, triple.y.cycle_type() != triple.z.cycle_type()),
        Claim("dessin group orders", [362880, 362880], [s.group.order for s in report.specs]),
    ] + _pair_claims(report, 60481, "not-isomorphic", [(3, 6, 6), (3, 6, 6)], ["G", "G"])
    return ExampleResult("ex6", claims, report)


# -- Examples 7 and 8: PGL2(p) -----------------------------------------------------------

_EX7_REFERENCE = {
    "swap": {"a": 2, "b": 3, "c": 4, "Z": Mat2(5, -1, -4, 2, 17)},
    "noswap": {"a": -1, "b": 2, "c": -1, "Z": Mat2(6, 5, 1, -1, 17)},
}


def build_example7(n: int = 8, p: int = 17, variant: str = "swap") -> ExampleResult:
    if variant not in ("swap", "noswap"):
        raise ParameterError(f"variant must be swap or noswap, got {variant!r}")
    reference = _EX7_REFERENCE[variant] if (n, p) == (8, 17) else None
    if reference:
        mt = build_example7_triple(n, p, 3, reference["a"], reference["b"], reference["c"], variant=variant)
    else:
        mt = build_example7_triple(n, p, variant=variant)
    model = PGL2(p)
    triple = _perm_triple(model, mt)
    handle = pgl2_handle(p, labels=_labels(mt))
    log.info("ex7: building the pair in PGL2(%d) x C2", p)
    report = build_pair("cor52", handle, triple)
    expected_genus = rh_genus((n, 2 * n, 2 * n), model.order())
    claims = [
        Claim("matrix orders", (2, 2 * n, 2 * n), mt.orders()),
        Claim("x in PSL2(p), y and z outside", [True, False, False],
              [model.psl_group.contains(g) for g in triple]),
        Claim("<x,y> = PGL2(p)", model.order(), triple.generated().order),
        Claim("eigenvalue ratio of Z gives a swap", variant == "swap", example7_swaps(mt)),
    ]
    if reference:
        claims.append(Claim("Z matches the reference matrix", ProjElement(reference["Z"]), mt.z))
        claims.append(Claim("genus 1837", 1837, expected_genus))
    verdict = "isomorphic" if variant == "swap" else "not-isomorphic"
    claims += _pair_claims(report, expected_genus, verdict, [(n, 2 * n, 2 * n)] * 2, ["G", "G"])
    result = ExampleResult(f"ex7:n={n},p={p},variant={variant}", claims, report)
    result.extra = {"params": mt.params, "Z_eigen_ratios": sorted(eigen_ratios(mt.Z) or [])}
    return result


def first_triple(G: PermGroup, orders, accept: Callable[[GeneratingTriple], bool] | None = None,
                 limit: int = 10**5) -> GeneratingTriple | None:
    """First generating triple of exact orders (l, m, n) in rank order of x, then y."""
    l, m, n = orders
    E = G.element_array(limit)
    ords = element_orders(G, limit)
    xs, ys = E[ords == l], E[ords == m]
    for xrow in xs:
        prods = ys[:, xrow]  # x*y
        for yrow in ys[ords[G.rank(prods)] == n]:
            x = Permutation(xrow.tolist(), check=False)
            y = Permutation(yrow.tolist(), check=False)
            if PermGroup([x, y], G.degree).order != G.order:
                continue
            t = make_triple(x, y)
            if accept is None or accept(t):
                return t
    return None


def build_example8() -> ExampleResult:
    model = PGL2(7)
    G = model.group
    handle = pgl2_handle(7)
    triple = first_triple(G, (2, 6, 6))
    table = counting.load_table(counting.fixture_path("pgl2_7.tbl"))
    counts = counting.count_report(G, (2, 6, 6), "PGL2(7)", table, counting.aut_order("pgl2", 7))
    report = build_pair("cor52", handle, triple)
    claims = [
        Claim("|PGL2(7)| = 336", 336, G.order),
        Claim("(2,6,6) triples, brute force", 336, counts.brute_count),
        Claim("(2,6,6) triples, character sum", 336, counts.frobenius_count),
        Claim("all triples generate", 336, counts.epi_count),
        Claim("normal subgroups with quotient PGL2(7)", 1, counts.kernel_count),
        Claim("x in L2(7)", True, model.psl_group.contains(triple.x)),
        Claim("parity position j", 0, report.parity_j),
    ] + _pair_claims(report, 57, "isomorphic", [(3, 6, 6)] * 2, ["G", "G"])
    result = ExampleResult("ex8", claims, report)
    result.extra = counts.as_dict()
    return result


# -- Examples 9, 10, 12: symmetric groups of odd degree ------------------------------------

def _cycle(start: int, stop: int) -> tuple[int, ...]:
    return tuple(range(start, stop + 1))


def example9_perms(k: int) -> tuple[Permutation, Permutation]:
    d = 12 * k + 1
    x = perm_from_cycles([(1, 12 * k + 1), (2, 6 * k + 3), (3, 2 * k + 4), (4, k + 5), (5, 6)], d)
    z = perm_from_cycles([_cycle(1, 12 * k)], d)
    return x, z


def build_example9(k: int = 2, materialize: bool = False) -> ExampleResult:
    if k < 2:
        raise ParameterError("k must be at least 2")
    d, n = 12 * k + 1, 6 * k
    x, z = example9_perms(k)
    y = (z * x).inverse()
    triple = make_triple(x, y, z, type=(2, 2 * n, 2 * n))
    handle = sym_handle(d)
    G = PermGroup([x, z], d)
    log.info("ex9: building the pair in S%d x C2", d)
    limit = 10**6 if not materialize else math.factorial(d) * 2
    report = build_pair("cor53", handle, triple, materialize_limit=limit)
    claims = [
        Claim("y cycle type", tuple(sorted((6 * k, 4 * k, k, k, 1), reverse=True)), y.cycle_type()),
        Claim("parity of x, y, z", ["odd", "even", "odd"], [g.parity() for g in triple]),
        Claim("<x,z> is 2-transitive", True, G.is_two_transitive()),
        Claim("<x,z> = S_d", math.factorial(d), G.order),
        Claim("parity position j", 1, report.parity_j),
        Claim("centre orders", [2, 1], [s.fingerprint.center_order for s in report.specs]),
    ] + _pair_claims(report, rh_genus((n, 2 * n, 2 * n), math.factorial(d)), "not-isomorphic",
                     [(n, 2 * n, 2 * n)] * 2, ["HxC2", "G"])
    return ExampleResult(f"ex9:k={k}", claims, report)


def build_example10(n: int = 2) -> ExampleResult:
    if n < 2:
        raise ParameterError("n must be at least 2")
    d = 4 * n + 1
    x = perm_from_cycles([(1, 4 * n + 1), (2, 2 * n + 3), (3, n + 4), (4, 5)], d)
    z = perm_from_cycles([_cycle(1, 4 * n)], d)
    y = (z * x).inverse()
    triple = make_triple(x, y, z, type=(2, 2 * n, 4 * n))
    G = PermGroup([x, z], d)
    claims = [
        Claim("y^-1 = zx cycle type", tuple(sorted((2 * n, n, n, 1), reverse=True)), (z * x).cycle_type()),
        Claim("parity of x, y, z", ["even", "odd", "odd"], [g.parity() for g in triple]),
        Claim("<x,z> is 2-transitive", True, G.is_two_transitive()),
        Claim("<x,z> = S_d", math.factorial(d), G.order),
    ]
    reference = {2: "(1,5,8,6,9)(2,4)", 3: "(1,5,8,11,9,12,7,10,13)(2,4,3,6)"}
    if n in reference:
        claims.append(Claim("z^3 x", reference[n], format_perm(z ** 3 * x)))
    log.info("ex10: building the pair in S%d x C2", d)
    report = build_pair("cor61", sym_handle(d), triple)
    genus = rh_genus((2 * n, 2 * n, 2 * n), math.factorial(d))
    claims += [Claim("parity position j", 0, report.parity_j)]
    claims += _pair_claims(report, genus, "not-isomorphic", [(2 * n,) * 3, (n, 4 * n, 4 * n)], ["G", "G"])
    if n == 2:
        claims.append(Claim("genus 45361", 45361, report.genus))
    return ExampleResult(f"ex10:n={n}", claims, report)


def build_example12(n: int = 2) -> ExampleResult:
    if n < 2:
        raise ParameterError("n must be at least 2")
    d = 4 * n + 1
    x = perm_from_cycles([(1, 4 * n + 1), (2, 2 * n + 3), (4, 5)], d)
    z = perm_from_cycles([_cycle(1, 4 * n)], d)
    y = (z * x).inverse()
    triple = make_triple(x, y, z, type=(2, 2 * n, 4 * n))
    G = PermGroup([x, z], d)
    claims = [
        Claim("y cycle type", (2 * n, 2 * n, 1), y.cycle_type()),
        Claim("parity of x, y, z", ["odd", "even", "odd"], [g.parity() for g in triple]),
        Claim("<x,z> = S_d", math.factorial(d), G.order),
    ]
    if n == 2:
        claims.append(Claim("z^2 x", "(1,3,4,6,8,7,9)(2,5)", format_perm(z ** 2 * x)))
    log.info("ex12: building the pair in S%d x C2", d)
    report = build_pair("cor62", sym_handle(d), triple)
    fps = [s.fingerprint for s in report.specs]
    claims += [
        Claim("parity position j", 1, report.parity_j),
        Claim("centre orders (A_d x C2, S_d)", [2, 1], [f.center_order for f in fps]),
        Claim("derived subgroup orders", [math.factorial(d) // 2] * 2, [f.derived_order for f in fps]),
    ]
    claims += _pair_claims(report, rh_genus((2 * n,) * 3, math.factorial(d)), "not-isomorphic",
                           [(2 * n,) * 3, (n, 4 * n, 4 * n)], ["HxC2", "G"])
    return ExampleResult(f"ex12:n={n}", claims, report)


# -- Examples 11 and 13: Case 3 from linear groups ------------------------------------------

def build_example11(n: int = 2, p: int = 17) -> ExampleResult:
    mt = build_example11_triple(n, p)
    model = PGL2(p)
    deg = model.degree
    flip = Permutation(list(range(deg)) + [deg + 1, deg], check=False)
    x, y, z = (embed(model.perm(e), deg + 2) for e in (mt.x, mt.y, mt.z))
    # G = L2(p) x C2 along the character that is 0 on x and 1 on y, z
    triple = make_triple(x, y * flip, z * flip, type=(2, 2 * n, 4 * n))
    H = model.psl_group
    G = PermGroup([embed(g, deg + 2) for g in H.generators] + [flip], deg + 2)
    handle = GroupHandle("psl2xc2", {"n": n, "p": p}, G, h_member=lambda g: g.images[deg] == deg,
                         labels=_labels(mt))
    claims = [
        Claim("matrix orders (x, y, z)", (2, 2 * n, 4 * n), mt.orders()),
        Claim("<x,z> = L2(p)", H.order, PermGroup([model.perm(mt.x), model.perm(mt.z)], deg).order),
        Claim("triple generates L2(p) x C2", G.order, triple.generated().order),
    ]
    log.info("ex11: building the pair in (L2(%d) x C2) x C2", p)
    report = build_pair("cor61", handle, triple)
    genus = rh_genus((2 * n,) * 3, G.order)
    claims += _pair_claims(report, genus, "not-isomorphic", [(2 * n,) * 3, (n, 4 * n, 4 * n)], ["G", "G"])
    if (n, p) == (2, 17):
        claims.append(Claim("genus 613", 613, report.genus))
    result = ExampleResult(f"ex11:n={n},p={p}", claims, report)
    result.extra = {"params": mt.params}
    return result


def build_example13(n: int = 3, p: int = 13) -> ExampleResult:
    mt = build_example13_triple(n, p)
    model = PGL2(p)
    triple = _perm_triple(model, mt)
    handle = pgl2_handle(p, labels=_labels(mt))
    claims = [
        Claim("matrix orders", (2, 2 * n, 4 * n), mt.orders()),
        Claim("membership in L2(p) of x, y, z", [False, True, False],
              [model.psl_group.contains(g) for g in triple]),
        Claim("<y,z> = PGL2(p)", model.order(), PermGroup([triple.y, triple.z]).order),
    ]
    log.info("ex13: building the pair in PGL2(%d) x C2", p)
    report = build_pair("cor62", handle, triple)
    fps = [s.fingerprint for s in report.specs]
    claims += [
        Claim("parity position j", 1, report.parity_j),
        Claim("centre orders (L2(p) x C2, PGL2(p))", [2, 1], [f.center_order for f in fps]),
    ]
    claims += _pair_claims(report, rh_genus((2 * n,) * 3, model.order()), "not-isomorphic",
                           [(2 * n,) * 3, (n, 4 * n, 4 * n)], ["HxC2", "G"])
    if (n, p) == (3, 13):
        claims.append(Claim("genus 547", 547, report.genus))
    result = ExampleResult(f"ex13:n={n},p={p}", claims, report)
    result.extra = {"params": mt.params}
    return result


# -- Example 14: central extensions of S4 ---------------------------------------------------

def cyclic_group(k: int) -> PermGroup:
    return PermGroup([perm_from_cycles([_cycle(1, k)] if k > 1 else [], max(k, 1))])


def klein_four() -> PermGroup:
    return PermGroup([perm_from_cycles([(1, 2), (3, 4)], 4), perm_from_cycles([(1, 3), (2, 4)], 4)])


def quaternion_group() -> PermGroup:
    return PermGroup([perm_from_cycles([(1, 2, 3, 4), (5, 6, 7, 8)], 8),
                      perm_from_cycles([(1, 5, 3, 7), (2, 8, 4, 6)], 8)])


def gl2_3() -> PermGroup:
    """GL2(3) acting on the eight nonzero row vectors of F_3^2."""
    vectors = [(u, v) for u in range(3) for v in range(3) if (u, v) != (0, 0)]
    index = {vec: k for k, vec in enumerate(vectors)}

    def perm(a, b, c, d):
        return Permutation([index[((u * a + v * c) % 3, (u * b + v * d) % 3)] for u, v in vectors])

    return PermGroup([perm(1, 1, 0, 1), perm(1, 0, 1, 1), perm(2, 0, 0, 1)])


EXAMPLE14_TARGETS = {
    # d: (group builder, reference groups for the two dessins, genus)
    1: (lambda: symmetric_group(4), lambda: (klein_four(), cyclic_group(4)), 0),
    2: (gl2_3, lambda: (quaternion_group(), cyclic_group(8)), 2),
    3: (lambda: direct_product(symmetric_group(4), cyclic_group(3)),
        lambda: (direct_product(klein_four(), cyclic_group(3)), cyclic_group(12)), 4),
    6: (lambda: direct_product(gl2_3(), cyclic_group(3)),
        lambda: (direct_product(quaternion_group(), cyclic_group(3)), cyclic_group(24)), 10),
}

_EX14_NAMES = {1: ("V4", "C4"), 2: ("Q8", "C8"), 3: ("V4xC3", "C12"), 6: ("Q8xC3", "C24")}


def _covers_cube(G: PermGroup, t: GeneratingTriple) -> bool:
    z = t.z
    return (G.order == 6 * normal_closure(G, [z * z]).order
            and G.order == 24 * normal_closure(G, [z ** 4]).order)


def build_example14(d: int) -> ExampleResult:
    if d not in EXAMPLE14_TARGETS:
        raise ParameterError("d must divide 6")
    make_group, make_refs, genus = EXAMPLE14_TARGETS[d]
    G = make_group()
    triple = first_triple(G, (2, 3, 4 * d), accept=lambda t: _covers_cube(G, t))
    if triple is None:
        raise ValueError(f"no (2,3,{4 * d}) triple with an S4 quotient found")
    handle = GroupHandle("ex14", {"d": d}, G)
    report = case4_pipeline(handle, triple)
    refs = [structure_fingerprint(r) for r in make_refs()]
    names = _EX14_NAMES[d]
    claims = [
        Claim("|G| = 24d", 24 * d, G.order),
        Claim(f"H1 group is {names[0]}", refs[0], report.specs[0].fingerprint),
        Claim(f"H2 group is {names[1]}", refs[1], report.specs[1].fingerprint),
        Claim("types", [[2 * d] * 3, [d, 4 * d, 4 * d]], [list(t) for t in report.types]),
        Claim("genus", genus, report.genus),
        Claim("Euler genus", [genus, genus], [s.euler_genus for s in report.specs]),
        Claim("verdict", "not-isomorphic", report.verdict),
    ]
    return ExampleResult(f"ex14:d={d}", claims, report)


# -- Examples 1, 2, 3 and 16: arithmetic and catalog claims ----------------------------------

def build_example1() -> ExampleResult:
    model = PGL2(7)
    L = model.psl_group
    klein = first_triple(L, (2, 3, 7))
    hk = regular_hypermap_from_triple(L, klein)
    # Aut of each (3,3,7) dessin: the stabiliser of infinity, of order 21
    B = PermGroup([model.perm(ProjElement.of(2, 0, 0, 1, 7)), model.perm(ProjElement.of(1, 1, 0, 1, 7))])
    t337 = first_triple(B, (3, 3, 7))
    h337 = regular_hypermap_from_triple(B, t337)
    w = walsh_graph(h337)
    rec = singerman_lookup((3, 3, 7), (2, 3, 7))
    claims = [
        Claim("genus of (2,3,7) and order 168", 3, rh_genus((2, 3, 7), 168)),
        Claim("Klein quartic model is regular", True, is_regular(hk)),
        Claim("Klein quartic model genus", 3, genus_of(hk)),
        # the trivalent (3,2,7) map: vertices are y-cycles, edges x-cycles, faces z-cycles
        Claim("trivalent map: vertices, edges, 7-gons", (56, 84, 24),
              (hk.counts[1], hk.counts[0], hk.counts[2])),
        Claim("stabiliser order", 21, B.order),
        Claim("stabiliser nonabelian", True, not B.is_abelian()),
        Claim("(3,3,7) dessin genus", 3, genus_of(h337)),
        Claim("(3,3,7) dessin vertices", (7, 7), (w.n_white, w.n_black)),
        Claim("(3,3,7) dessin faces are three 14-gons", (14, 14, 14), w.face_degrees),
        Claim("inclusion (3,3,7) < (2,3,7) index", 8, rec.index if rec else None),
        Claim("number of conjugate dessins", 8, rec.dessin_count if rec else None),
    ]
    return ExampleResult("ex1", claims)


def build_example2(m_max: int = 5) -> ExampleResult:
    claims = [Claim(f"cover genus m={m}", 2 * m ** 6 + 1, cover_genus(3, m ** 6)) for m in range(2, m_max + 1)]
    return ExampleResult("ex2", claims)


def build_example3() -> ExampleResult:
    return ExampleResult("ex3", [
        Claim("8-sheeted cover genus", 17, cover_genus(3, 8)),
        Claim("(3,3,7) dessin genus with |Aut| = 21*8", 17, rh_genus((3, 3, 7), 21 * 8)),
    ])


def build_example16(n_max: int = 20) -> ExampleResult:
    claims = []
    for n in range(1, n_max + 1):
        aut, genus = counting.modular_dessin_data(n)
        claims.append(Claim(f"n={n}: |Aut| = index/6", counting.gamma_index(4 * n) // 6, aut))
        claims.append(Claim(f"n={n}: genus from Riemann-Hurwitz", rh_genus((2 * n,) * 3, aut), genus))
        claims.append(Claim(f"n={n}: genus of (n,4n,4n) type", rh_genus((n, 4 * n, 4 * n), aut), genus))
    return ExampleResult("ex16", claims)


# -- registry -----------------------------------------------------------------------------

def _ex4(n: int = 3) -> ExampleResult:
    built = build_example4(n)
    return ExampleResult(f"ex4:n={n}", built.claims, built.report)


REGISTRY: dict[str, Callable[..., ExampleResult]] = {
    "ex1": build_example1,
    "ex2": build_example2,
    "ex3": build_example3,
    "ex4": _ex4,
    "ex5": build_example5,
    "ex6": build_example6,
    "ex7": build_example7,
    "ex8": build_example8,
    "ex9": build_example9,
    "ex10": build_example10,
    "ex11": build_example11,
    "ex12": build_example12,
    "ex13": build_example13,
    "ex14": build_example14,
    "ex16": build_example16,
}

GOLDEN_MANIFEST = (
    "ex1", "ex2", "ex3", "ex4:n=3", "ex4:n=4", "ex5", "ex6",
    "ex7:n=8,p=17,variant=swap", "ex7:n=8,p=17,variant=noswap", "ex8", "ex9:k=2",
    "ex10:n=2", "ex11:n=2,p=17", "ex12:n=2", "ex13:n=3,p=13",
    "ex14:d=1", "ex14:d=2", "ex14:d=3", "ex14:d=6", "ex16",
)


def parse_example_id(example_id: str) -> tuple[str, dict]:
    name, _, rest = example_id.partition(":")
    if name not in REGISTRY:
        raise KeyError(f"unknown example {name!r}")
    params = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ParameterError(f"malformed parameter {item!r}")
        params[key.strip()] = int(value) if value.strip().lstrip("-").isdigit() else value.strip()
    return name, params


def run_example(example_id: str) -> ExampleResult:
    name, params = parse_example_id(example_id)
    result = REGISTRY[name](**params)
    result.id = example_id
    return result
