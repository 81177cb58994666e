"""Triangle signatures, genus arithmetic, the inclusion catalog and index-2 dessin pairs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .hypermap import genus_of, regular_hypermap_from_triple
from .perm import (
    ENUMERATION_LIMIT,
    FINGERPRINT_LIMIT,
    Fingerprint,
    PermGroup,
    Permutation,
    center_order,
    derived_subgroup,
    embed,
    find_swapping_conjugator,
    format_perm,
    normal_closure,
    structure_fingerprint,
)


@dataclass(frozen=True, order=True)
class TriangleType:
    l: int
    m: int
    n: int

    def __post_init__(self):
        if min(self.l, self.m, self.n) < 1:
            raise ValueError(f"periods must be positive: {self.as_tuple()}")

    def __iter__(self) -> Iterator[int]:
        return iter((self.l, self.m, self.n))

    def __str__(self):
        return f"({self.l},{self.m},{self.n})"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.l, self.m, self.n)

    def sorted(self) -> tuple[int, int, int]:
        return tuple(sorted(self))

    def rotated(self) -> TriangleType:
        return TriangleType(self.m, self.n, self.l)

    def defect(self) -> Fraction:
        return 1 - Fraction(1, self.l) - Fraction(1, self.m) - Fraction(1, self.n)

    @classmethod
    def parse(cls, text: str) -> TriangleType:
        parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p.strip()]
        if len(parts) != 3:
            raise ValueError(f"expected l,m,n but got {text!r}")
        return cls(*(int(p) for p in parts))

    @classmethod
    def of(cls, t) -> TriangleType:
        return t if isinstance(t, TriangleType) else cls(*t)


def is_hyperbolic(t) -> bool:
    return TriangleType.of(t).defect() > 0


def rh_genus(t, group_order: int) -> int:
    """Genus of a regular dessin of type t with automorphism group of the given order."""
    g = 1 + Fraction(group_order, 2) * TriangleType.of(t).defect()
    if g.denominator != 1 or g < 0:
        raise ValueError(f"type {TriangleType.of(t)} and order {group_order} give genus {g}")
    return int(g)


def cover_genus(base_genus: int, index: int) -> int:
    """Genus of an unbranched cover of the given degree."""
    if base_genus < 2 or index < 1:
        raise ValueError("need base genus >= 2 and index >= 1")
    return index * (base_genus - 1) + 1


# -- inclusion catalog --------------------------------------------------------

@dataclass(frozen=True)
class InclusionRecord:
    label: str
    sub: TriangleType
    super: TriangleType
    index: int
    normal: bool
    normalizer: TriangleType
    dessin_count: int
    params: tuple[tuple[str, int], ...] = ()

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "sub": list(self.sub),
            "super": list(self.super),
            "index": self.index,
            "normal": self.normal,
            "normalizer": list(self.normalizer),
            "dessin_count": self.dessin_count,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class _Row:
    label: str
    names: tuple[str, ...]
    shape: Callable[..., tuple]  # params -> (sub, super, index, normalizer or None, |N:sub|)
    valid: Callable[..., bool] = lambda *a: True


_ROWS = (
    _Row("a", ("s", "t"), lambda s, t: ((s, s, t), (2, s, 2 * t), 2, None, 2), lambda s, t: (s - 2) * (t - 1) > 2),
    _Row("b", ("t",), lambda t: ((t, t, t), (3, 3, t), 3, None, 3), lambda t: t > 3),
    _Row("c", ("t",), lambda t: ((t, t, t), (2, 3, 2 * t), 6, None, 6), lambda t: t > 3),
    _Row("A", (), lambda: ((7, 7, 7), (2, 3, 7), 24, (3, 3, 7), 3)),
    _Row("B", (), lambda: ((2, 7, 7), (2, 3, 7), 9, None, 1)),
    _Row("C", (), lambda: ((3, 3, 7), (2, 3, 7), 8, None, 1)),
    _Row("D", (), lambda: ((4, 8, 8), (2, 3, 8), 12, (2, 8, 8), 2)),
    _Row("E", (), lambda: ((3, 8, 8), (2, 3, 8), 10, None, 1)),
    _Row("F", (), lambda: ((9, 9, 9), (2, 3, 9), 12, (3, 3, 9), 3)),
    _Row("G", (), lambda: ((4, 4, 5), (2, 4, 5), 6, None, 1)),
    _Row("H", ("n",), lambda n: ((n, 4 * n, 4 * n), (2, 3, 4 * n), 6, (4 * n, 2, 2 * n), 2), lambda n: n >= 2),
    _Row("I", ("n",), lambda n: ((n, 2 * n, 2 * n), (2, 4, 2 * n), 4, (2 * n, 2, 2 * n), 2), lambda n: n >= 3),
    _Row("J", ("n",), lambda n: ((3, n, 3 * n), (2, 3, 3 * n), 4, None, 1), lambda n: n >= 3),
    _Row("K", ("n",), lambda n: ((2, n, 2 * n), (2, 3, 2 * n), 3, None, 1), lambda n: n >= 4),
)


def _record(row: _Row, params: tuple[int, ...]) -> InclusionRecord:
    sub, sup, index, normalizer, over = row.shape(*params)
    normal = over == index
    if normalizer is None:
        normalizer = sup if normal else sub
    return InclusionRecord(
        label=row.label,
        sub=TriangleType(*sub),
        super=TriangleType(*sup),
        index=index,
        normal=normal,
        normalizer=TriangleType(*normalizer),
        dessin_count=index // over,
        params=tuple(zip(row.names, params)),
    )


def catalog_rows(n_max: int = 0) -> list[InclusionRecord]:
    """The fixed rows, plus parameterised rows expanded for parameters up to n_max."""
    out = []
    for row in _ROWS:
        if not row.names:
            out.append(_record(row, ()))
            continue
        values = range(2, n_max + 1)
        grid = [(v,) for v in values] if len(row.names) == 1 else [(s, t) for s in values for t in values]
        out.extend(_record(row, p) for p in grid if row.valid(*p))
    return out


def singerman_lookup(sub, sup) -> InclusionRecord | None:
    """Catalog entry for an inclusion of triangle groups, comparing periods as multisets."""
    sub, sup = TriangleType.of(sub), TriangleType.of(sup)
    target = (sub.sorted(), sup.sorted())
    values = set(sub) | set(sup)
    guesses = sorted({v // k for v in values for k in (1, 2, 3, 4) if v % k == 0})
    for row in _ROWS:
        if len(row.names) == 0:
            candidates = [()]
        elif len(row.names) == 1:
            candidates = [(v,) for v in guesses]
        else:
            candidates = [(s, t) for s in sorted(set(sub)) for t in sorted(set(sub))]
        for params in candidates:
            if min(params, default=2) < 1 or not row.valid(*params):
                continue
            rec = _record(row, params)
            if (rec.sub.sorted(), rec.super.sorted()) == target:
                return rec
    return None


@dataclass(frozen=True)
class PairShape:
    """Which alternative of the non-conjugate pair classification two types fit."""

    case: str  # "1", "2", "3|4" or "none"
    n: int | None
    supergroups: tuple[TriangleType, ...]

    def as_dict(self) -> dict:
        return {"case": self.case, "n": self.n, "supergroups": [list(t) for t in self.supergroups]}


def classify_pair(t1, t2) -> PairShape:
    t1, t2 = TriangleType.of(t1), TriangleType.of(t2)
    if not (is_hyperbolic(t1) and is_hyperbolic(t2)):
        raise ValueError("both types must be hyperbolic")
    a, b = t1.sorted(), t2.sorted()
    if a == b:
        n = a[0]
        if a == (n, 2 * n, 2 * n):
            return PairShape("2", n, (TriangleType(2, 2 * n, 2 * n),))
        return PairShape("1", None, ())
    for p, q in ((a, b), (b, a)):
        n = q[0]
        if p == (2 * n, 2 * n, 2 * n) and q == (n, 4 * n, 4 * n):
            return PairShape("3|4", n, (TriangleType(2, 2 * n, 4 * n), TriangleType(2, 3, 4 * n)))
    return PairShape("none", None, ())


# -- generating triples --------------------------------------------------------

@dataclass(frozen=True)
class GeneratingTriple:
    x: Permutation
    y: Permutation
    z: Permutation
    type: TriangleType

    def __iter__(self) -> Iterator[Permutation]:
        return iter((self.x, self.y, self.z))

    def rotated(self) -> GeneratingTriple:
        return GeneratingTriple(self.y, self.z, self.x, self.type.rotated())

    def generated(self) -> PermGroup:
        return PermGroup([self.x, self.y], self.x.degree)

    def as_strings(self) -> tuple[str, str, str]:
        return tuple(format_perm(g) for g in self)


def make_triple(x: Permutation, y: Permutation, z: Permutation | None = None, *,
                type=None, group: PermGroup | None = None) -> GeneratingTriple:
    """Validated triple: xyz = 1, exact orders, and generation of ``group`` when given."""
    if z is None:
        z = (x * y).inverse()
    if not (x * y * z).is_identity():
        raise ValueError("x*y*z is not the identity")
    orders = TriangleType(x.order(), y.order(), z.order())
    if type is not None and TriangleType.of(type) != orders:
        raise ValueError(f"orders {orders} differ from declared type {TriangleType.of(type)}")
    if group is not None:
        if not all(g in group for g in (x, y)):
            raise ValueError("triple does not lie in the group")
        if PermGroup([x, y], group.degree).order != group.order:
            raise ValueError("triple does not generate the group")
    return GeneratingTriple(x, y, z, orders)


def parity_classify(triple, h_member: Callable[[Permutation], bool]) -> int:
    """Position of the unique generator lying in the index-2 subgroup H."""
    inside = [bool(h_member(g)) for g in triple]
    if (3 - sum(inside)) % 2:
        raise ValueError("an odd number of generators lie outside H, contradicting xyz = 1")
    if sum(inside) != 1:
        raise ValueError("all generators lie in H, so they cannot generate the group")
    return inside.index(True)


def index2_subtriple(triple: GeneratingTriple, which: str) -> GeneratingTriple:
    """Canonical triple of the index-2 subgroup containing y (or z) but not x.

    For a triple (x, y, z) of type (2, M, N) this is (y, y^x, y z^2 y^-1) of type
    (M, M, N/2), or (z, z^x, y^2) of type (N, N, M/2).  Both come from the
    transversal {1, x}; the second is written so that it multiplies to 1 under
    the "p then q" product.
    """
    x, y, z = triple
    _, M, N = triple.type
    if triple.type.l != 2 or M % 2 or N % 2:
        raise ValueError(f"need a triple of type (2, even, even), got {triple.type}")
    if which == "contains_y":
        elems, declared = (y, y.conj(x), y * z * z * y.inverse()), (M, M, N // 2)
    elif which == "contains_z":
        elems, declared = (z, z.conj(x), y * y), (N, N, M // 2)
    else:
        raise ValueError(f"unknown subgroup selector {which!r}")
    return make_triple(*elems, type=declared)


def rotate_to_standard_form(t: GeneratingTriple) -> GeneratingTriple:
    """Rotate a triple of type (a, a, b) with b != a so that b comes first."""
    a, b, c = t.type
    if a == b != c:
        return t.rotated().rotated()
    return t


# -- pair reports -----------------------------------------------------------------

@dataclass
class GroupHandle:
    kind: str
    params: dict
    group: PermGroup
    h_member: Callable[[Permutation], bool] | None = None
    complete: bool = False
    labels: tuple[str, str, str] | None = None  # rendering of the base triple, e.g. as matrices


@dataclass
class DessinSpec:
    label: str
    group: PermGroup
    triple: GeneratingTriple
    genus: int
    euler_genus: int | None
    fingerprint: Fingerprint
    structure: str  # "G" or "HxC2" for pairs, a free description otherwise

    @property
    def type(self) -> TriangleType:
        return self.triple.type

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "type": list(self.type),
            "order": self.group.order,
            "genus": self.genus,
            "euler_genus": self.euler_genus,
            "structure": self.structure,
            "fingerprint": self.fingerprint.as_dict(),
        }


@dataclass
class PairReport:
    construction: str
    kind: str
    params: dict
    group_order: int
    triple: tuple[str, str, str]
    specs: tuple[DessinSpec, DessinSpec]
    genus: int
    parity_j: int | None
    verdict: str
    extension_order: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def types(self) -> list[TriangleType]:
        return [s.type for s in self.specs]

    def to_dict(self) -> dict:
        return {
            "construction": self.construction,
            "group": {"kind": self.kind, "params": self.params, "order": self.group_order},
            "triple": dict(zip("xyz", self.triple)),
            "types": [list(t) for t in self.types],
            "genus": self.genus,
            "parity_j": self.parity_j,
            "verdict": self.verdict,
            "fingerprints": [s.fingerprint.as_dict() for s in self.specs],
            "structures": [s.structure for s in self.specs],
            "euler_genera": [s.euler_genus for s in self.specs],
            "extension_order": self.extension_order,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _euler_genus(group: PermGroup, triple: GeneratingTriple, materialize_limit: int) -> int | None:
    if group.order > materialize_limit:
        return None
    return genus_of(regular_hypermap_from_triple(group, triple, limit=materialize_limit))


def _spec(label: str, group: PermGroup, triple: GeneratingTriple, fingerprint: Fingerprint,
          structure: str, materialize_limit: int) -> DessinSpec:
    genus = rh_genus(triple.type, group.order)
    euler = _euler_genus(group, triple, materialize_limit)
    if euler is not None and euler != genus:
        raise AssertionError(f"{label}: Euler genus {euler} differs from Riemann-Hurwitz genus {genus}")
    return DessinSpec(label, group, triple, genus, euler, fingerprint, structure)


def _project(p: Permutation, degree: int) -> Permutation:
    return Permutation(p.images[:degree], check=False)


_PAIR_RULES = {
    # construction: (ratio of z-order to y-order, allowed parity positions)
    "cor52": (1, {0}),
    "cor53": (1, {1, 2}),
    "cor61": (2, {0}),
    "cor62": (2, {1, 2}),
}


def extension_model(triple: GeneratingTriple, j: int) -> tuple[PermGroup, GeneratingTriple]:
    """Lift the triple into G x C2 along the character that is 0 on one generator outside H.

    C2 is realised as a transposition of two extra points.
    """
    i = min({0, 1, 2} - {j})
    deg = triple.x.degree
    flip = Permutation(list(range(deg)) + [deg + 1, deg], check=False)
    lifted = []
    for k, g in enumerate(triple):
        e = embed(g, deg + 2)
        lifted.append(e if k == i else e * flip)
    lt = make_triple(*lifted, type=triple.type)
    return PermGroup(lifted[:2], deg + 2), lt


def _side_fingerprint(D: PermGroup, P: PermGroup, direct: bool) -> Fingerprint:
    """Fingerprint of D, which is P x C2 when ``direct`` and isomorphic to P otherwise."""
    if D.order <= FINGERPRINT_LIMIT:
        return structure_fingerprint(D)
    zp = center_order(P)
    return Fingerprint(
        order=D.order,
        abelian=P.is_abelian(),
        exponent=None,
        order_histogram=None,
        center_order=None if zp is None else (2 * zp if direct else zp),
        derived_order=derived_subgroup(P).order,
    )


def build_pair(construction: str, handle: GroupHandle, triple: GeneratingTriple,
               h_member: Callable[[Permutation], bool] | None = None,
               materialize_limit: int = ENUMERATION_LIMIT) -> PairReport:
    """Two regular dessins on one surface from a triple of type (2, 2n, 2n) or (2, 2n, 4n)."""
    if construction not in _PAIR_RULES:
        raise ValueError(f"unknown construction {construction!r}")
    ratio, allowed = _PAIR_RULES[construction]
    _, m, n = triple.type
    if triple.type.l != 2 or m % 2 or n != ratio * m:
        raise ValueError(f"{construction} needs a triple of type (2,2n,{2 * ratio}n), got {triple.type}")
    h_member = h_member or handle.h_member
    if h_member is None:
        raise ValueError("no membership test for the index-2 subgroup")
    G = handle.group
    j = parity_classify(triple, h_member)
    if j not in allowed:
        raise ValueError(f"parity position j={j} does not suit {construction}")

    Gstar, lifted = extension_model(triple, j)
    if Gstar.order != 2 * G.order:
        raise ValueError(f"extension has order {Gstar.order}, expected {2 * G.order}")

    deg = G.degree
    flip = Permutation(list(range(deg)) + [deg + 1, deg], check=False)
    specs = []
    for pos, which in ((1, "contains_y"), (2, "contains_z")):
        sub = rotate_to_standard_form(index2_subtriple(lifted, which))
        D = sub.generated()
        if Gstar.order != 2 * D.order:
            raise AssertionError(f"{which} subgroup has index {Gstar.order // D.order}, expected 2")
        P = PermGroup([_project(g, deg) for g in sub], deg)
        if flip in D:
            # the side containing the kernel: H x C2
            if not all(h_member(g) for g in P.generators) or 2 * P.order != D.order:
                raise AssertionError("H x C2 side does not split as expected")
            structure, direct = "HxC2", True
        else:
            if P.order != D.order or P != G:
                raise AssertionError("projection of the G side is not an isomorphism onto G")
            structure, direct = "G", False
        if (structure == "HxC2") != (pos == j):
            raise AssertionError(f"unexpected structure {structure} at position {pos} (j={j})")
        fp = _side_fingerprint(D, P, direct)
        specs.append(_spec(f"H{pos}", D, sub, fp, structure, materialize_limit))

    if specs[0].genus != specs[1].genus:
        raise AssertionError("the two dessins have different genus")

    notes = []
    if construction == "cor52":
        g = find_swapping_conjugator(G, triple.y, triple.z)
        if g is not None:
            verdict = "isomorphic"
            notes.append(f"swapping conjugator {format_perm(g)}")
        else:
            verdict = "not-isomorphic" if handle.complete else "no-inner-swap"
    elif construction == "cor53":
        if specs[0].fingerprint != specs[1].fingerprint:
            verdict = "not-isomorphic"
            notes.append("automorphism groups differ in fingerprint")
        else:
            verdict = "no-inner-swap"
            notes.append("automorphism groups not separated by fingerprint")
    else:
        verdict = "not-isomorphic"
        notes.append("types differ")

    return PairReport(
        construction=construction,
        kind=handle.kind,
        params=dict(handle.params),
        group_order=G.order,
        triple=handle.labels or triple.as_strings(),
        specs=tuple(specs),
        genus=specs[0].genus,
        parity_j=j,
        verdict=verdict,
        extension_order=Gstar.order,
        notes=notes,
    )


def case4_pipeline(handle: GroupHandle, triple: GeneratingTriple,
                   materialize_limit: int = ENUMERATION_LIMIT) -> PairReport:
    """Pair of dessins of types (2n,2n,2n) and (n,4n,4n) from a (2,3,4n) triple with an S4 quotient."""
    G = handle.group
    x, y, z = triple
    l, m, four_n = triple.type
    if (l, m) != (2, 3) or four_n % 4:
        raise ValueError(f"need a triple of type (2,3,4n), got {triple.type}")
    n = four_n // 4
    G1 = normal_closure(G, [z * z])
    if G.order != 6 * G1.order:
        raise ValueError(f"closure of z^2 has index {G.order // G1.order}, expected 6")
    K0 = normal_closure(G, [z ** 4])
    if G.order != 24 * K0.order:
        raise ValueError(f"closure of z^4 has index {G.order // K0.order}, expected 24")
    G2 = PermGroup(list(K0.generators) + [z], G.degree)
    if G.order != 6 * G2.order:
        raise ValueError(f"second subgroup has index {G.order // G2.order}, expected 6")

    # image of the intermediate (2,2n,4n) group: preimage of a dihedral subgroup of S4
    Gmid = PermGroup(list(G1.generators) + list(G2.generators), G.degree)
    if G.order != 3 * Gmid.order:
        raise ValueError("no index-3 subgroup containing both images")
    mid = None
    for g in G.elements(materialize_limit):
        t = x.conj(g)
        if t not in Gmid:
            continue
        s = t * z.inverse()
        if s.order() == 2 * n and PermGroup([t, z], G.degree).order == Gmid.order:
            mid = make_triple(t, s, z, type=(2, 2 * n, 4 * n))
            break
    if mid is None:
        raise ValueError("no conjugate of x completes a generating triple of the index-3 subgroup")

    specs = []
    for label, which, target in (("H1", "contains_y", G1), ("H2", "contains_z", G2)):
        sub = rotate_to_standard_form(index2_subtriple(mid, which))
        D = sub.generated()
        if D != target:
            raise AssertionError(f"{label}: subtriple generates a group of order {D.order}, expected {target.order}")
        specs.append(_spec(label, D, sub, structure_fingerprint(D), label, materialize_limit))

    if specs[0].genus != specs[1].genus:
        raise AssertionError("the two dessins have different genus")
    return PairReport(
        construction="case4",
        kind=handle.kind,
        params=dict(handle.params),
        group_order=G.order,
        triple=handle.labels or triple.as_strings(),
        specs=tuple(specs),
        genus=specs[0].genus,
        parity_j=None,
        verdict="not-isomorphic",
        notes=["types differ"],
    )
