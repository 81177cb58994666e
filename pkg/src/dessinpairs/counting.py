"""Product-one tuples in conjugacy classes: brute force, character sums, epimorphisms.

Also the index arithmetic of principal congruence subgroups of the modular group.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from .perm import (
    ENUMERATION_LIMIT,
    PermGroup,
    Permutation,
    conjugacy_class_labels,
    element_orders,
    perm_from_cycles,
)

FROBENIUS_TOLERANCE = 1e-3
ORTHOGONALITY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ConjClass:
    id: int
    representative: Permutation
    size: int
    order: int

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return self.representative.cycle_type()


class ClassStructure:
    """A fully enumerated group with every element labelled by its conjugacy class."""

    def __init__(self, G: PermGroup, limit: int = ENUMERATION_LIMIT):
        self.group = G
        self.elements = G.element_array(limit)
        k, self.labels = conjugacy_class_labels(G, limit)
        firsts = np.full(k, -1, dtype=np.int64)
        for rank in range(len(self.labels) - 1, -1, -1):
            firsts[self.labels[rank]] = rank
        sizes = np.bincount(self.labels, minlength=k)
        self.classes = [
            ConjClass(c, Permutation(self.elements[firsts[c]].tolist(), check=False), int(sizes[c]),
                      Permutation(self.elements[firsts[c]].tolist(), check=False).order())
            for c in range(k)
        ]

    def __len__(self):
        return len(self.classes)

    def members(self, cid: int) -> np.ndarray:
        return self.elements[self.labels == cid]

    def class_of(self, p: Permutation) -> int:
        return int(self.labels[self.group.rank_of(p)])

    def power_class(self, cid: int, k: int) -> int:
        return self.class_of(self.classes[cid].representative ** k)

    def inverse_class(self, cid: int) -> int:
        return self.power_class(cid, -1)

    @cached_property
    def orders(self) -> np.ndarray:
        """Order of every element, indexed by rank."""
        return element_orders(self.group, limit=len(self.elements))

    def pair_counts(self, X: int, Y: int, chunk: int = 1 << 18) -> np.ndarray:
        """For each class Z, the number of (x, y, z) in X x Y x Z with xyz = 1."""
        xs, ys = self.members(X), self.members(Y)
        zinv = np.array([self.inverse_class(c) for c in range(len(self))])
        counts = np.zeros(len(self), dtype=np.int64)
        step = max(1, chunk // max(1, len(ys)))
        for start in range(0, len(xs), step):
            block = xs[start:start + step]
            # rows x*y: apply x, then y
            prods = ys[:, block].transpose(1, 0, 2).reshape(-1, self.group.degree)
            counts += np.bincount(self.labels[self.group.rank(prods)], minlength=len(self))
        # xy lies in class C exactly when z = (xy)^-1 lies in the inverse class of C
        return counts[zinv]


def _partition_rep(parts: list[int], degree: int) -> Permutation:
    cycles, start = [], 1
    for length in parts:
        cycles.append(tuple(range(start, start + length)))
        start += length
    return perm_from_cycles([c for c in cycles if len(c) > 1], degree)


def symmetric_classes(degree: int) -> list[ConjClass]:
    """Classes of S_d indexed by cycle type, without enumerating the group."""
    out = []
    for i, part in enumerate(partitions(degree)):
        parts = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
        centraliser = math.prod(k ** mult * math.factorial(mult) for k, mult in part.items())
        out.append(ConjClass(i, _partition_rep(parts, degree), math.factorial(degree) // centraliser,
                             math.lcm(*parts)))
    return out


def conjugacy_classes(G: PermGroup, limit: int = ENUMERATION_LIMIT) -> list[ConjClass]:
    if G.order > limit:
        if G.is_symmetric():
            return symmetric_classes(G.degree)
        raise ValueError(f"group order {G.order} exceeds enumeration limit {limit}")
    return ClassStructure(G, limit).classes


def count_triples_bruteforce(cs: ClassStructure, X: int, Y: int, Z: int) -> int:
    return int(cs.pair_counts(X, Y)[Z])


def qualifying_class_triples(cs: ClassStructure, orders) -> list[tuple[int, int, int]]:
    """Class triples whose elements have the given orders."""
    by_order = [[c.id for c in cs.classes if c.order == o] for o in orders]
    return list(product(*by_order))


# -- character tables ----------------------------------------------------------------

_COMPLEX_RE = re.compile(r"^([+-]?[\d.]+(?:e[+-]?\d+)?)([+-][\d.]*(?:e[+-]?\d+)?)i$")


def parse_value(token: str) -> complex:
    """Character value: an integer, a fraction p/q, a decimal, or a+bi / a-bi."""
    token = token.strip()
    if token.endswith("i"):
        if token in ("i", "+i", "-i"):
            return complex(0, -1 if token.startswith("-") else 1)
        m = _COMPLEX_RE.match(token)
        if m:
            real, imag = m.groups()
            imag = {"+": 1.0, "-": -1.0}.get(imag, None) or float(imag)
            return complex(float(real), imag)
        return complex(0, float(token[:-1]))
    if "/" in token:
        return complex(float(Fraction(token)))
    return complex(float(token))


@dataclass
class CharacterTable:
    name: str
    order: int
    sizes: list[int]
    orders: list[int]
    values: np.ndarray  # rows are characters, columns classes
    powermaps: dict[int, list[int]] = field(default_factory=dict)  # 0-based class images
    provenance: str = ""

    @property
    def k(self) -> int:
        return len(self.sizes)

    def validate(self) -> None:
        k = self.k
        if len(self.orders) != k or self.values.shape != (k, k):
            raise ValueError(f"{self.name}: table shape does not match {k} classes")
        if sum(self.sizes) != self.order:
            raise ValueError(f"{self.name}: class sizes sum to {sum(self.sizes)}, not {self.order}")
        degrees = self.values[:, 0]
        if abs(np.sum(np.abs(degrees) ** 2) - self.order) > ORTHOGONALITY_TOLERANCE:
            raise ValueError(f"{self.name}: squared degrees do not sum to the group order")
        gram = (self.values * np.asarray(self.sizes)) @ self.values.conj().T / self.order
        if np.abs(gram - np.eye(k)).max() > ORTHOGONALITY_TOLERANCE:
            raise ValueError(f"{self.name}: rows are not orthonormal")
        for p, images in self.powermaps.items():
            if len(images) != k or any(not 0 <= c < k for c in images):
                raise ValueError(f"{self.name}: malformed {p}-power map")


def parse_table(text: str) -> CharacterTable:
    meta: dict[str, list[str]] = {}
    powermaps: dict[int, list[int]] = {}
    rows: list[list[complex]] = []
    notes: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            notes.append(line.lstrip("# "))
            continue
        head, *rest = line.split()
        if head in ("group", "order", "classes", "sizes", "orders"):
            meta[head] = rest
        elif head == "powermap":
            powermaps[int(rest[0])] = [int(c) - 1 for c in rest[1:]]
        else:
            rows.append([parse_value(tok) for tok in line.split()])
    for key in ("group", "order", "classes", "sizes", "orders"):
        if key not in meta:
            raise ValueError(f"character table is missing the '{key}' line")
    k = int(meta["classes"][0])
    if len(rows) != k:
        raise ValueError(f"expected {k} character rows, found {len(rows)}")
    table = CharacterTable(
        name=" ".join(meta["group"]),
        order=int(meta["order"][0]),
        sizes=[int(s) for s in meta["sizes"]],
        orders=[int(o) for o in meta["orders"]],
        values=np.array(rows, dtype=complex),
        powermaps=powermaps,
        provenance=" ".join(notes),
    )
    table.validate()
    return table


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("dessinpairs") / "fixtures" / name))


def load_table(path: str | Path) -> CharacterTable:
    """Load a table from a path, falling back to the packaged fixtures by file name."""
    path = Path(path)
    if not path.exists():
        packaged = fixture_path(path.name)
        if not packaged.exists():
            raise FileNotFoundError(path)
        path = packaged
    return parse_table(path.read_text())


def _round_count(value: complex, what: str) -> int:
    nearest = round(value.real)
    if abs(value - nearest) > FROBENIUS_TOLERANCE or nearest < 0:
        raise ValueError(f"{what} evaluates to {value}, not a non-negative integer")
    return int(nearest)


def frobenius_count_r(table: CharacterTable, ids) -> int:
    """Number of r-tuples with product 1 drawn from the given classes (0-based ids)."""
    ids = list(ids)
    r = len(ids)
    if r < 2:
        raise ValueError("need at least two classes")
    vals = table.values
    terms = np.prod(vals[:, ids], axis=1) / vals[:, 0] ** (r - 2)
    scale = math.prod(table.sizes[i] for i in ids) / table.order
    return _round_count(scale * terms.sum(), f"character sum over classes {ids}")


def frobenius_count(table: CharacterTable, x: int, y: int, z: int) -> int:
    return frobenius_count_r(table, (x, y, z))


def match_classes(table: CharacterTable, cs: ClassStructure) -> list[int]:
    """Computed class id for each table column, by (order, size) and power maps.

    Columns the power maps cannot separate are algebraically conjugate, and
    any consistent choice among them gives the same counts.
    """
    if table.order != cs.group.order or table.k != len(cs):
        raise ValueError("table does not describe this group")
    keys = [(c.order, c.size) for c in cs.classes]
    powers = {p: [cs.power_class(c, p) for c in range(len(cs))] for p in table.powermaps}
    assignment: list[int] = []

    def consistent() -> bool:
        t = len(assignment) - 1
        for p, images in table.powermaps.items():
            for u in range(len(assignment)):
                for a, b in ((t, u), (u, t)):
                    if images[a] == b and powers[p][assignment[a]] != assignment[b]:
                        return False
        return True

    def search() -> bool:
        t = len(assignment)
        if t == table.k:
            return True
        for c in range(len(cs)):
            if c in assignment or keys[c] != (table.orders[t], table.sizes[t]):
                continue
            assignment.append(c)
            if consistent() and search():
                return True
            assignment.pop()
        return False

    if not search():
        raise ValueError("no class matching agrees with orders, sizes and power maps")
    return assignment


# -- epimorphisms ------------------------------------------------------------------

def count_smooth_epimorphisms(G: PermGroup, orders, cs: ClassStructure | None = None) -> int:
    """Generating triples (x, y, z), xyz = 1, with exactly the given orders.

    One representative x per class of order l; its count is weighted by the class size.
    """
    l, m, n = orders
    cs = cs or ClassStructure(G)
    element_order = cs.orders
    ys = cs.elements[element_order == m]
    total = 0
    for cls in cs.classes:
        if cls.order != l:
            continue
        x = cls.representative
        prods = ys[:, list(x.images)]  # x*y
        hits = ys[element_order[G.rank(prods)] == n]
        good = sum(
            1 for row in hits.tolist()
            if PermGroup([x, Permutation(row, check=False)], G.degree).order == G.order
        )
        total += cls.size * good
    return total


def count_kernels(epi_count: int, aut_order: int) -> int:
    """Normal subgroups with the given quotient: epimorphisms up to automorphisms."""
    if aut_order <= 0 or epi_count % aut_order:
        raise ValueError(f"{aut_order} does not divide {epi_count}")
    return epi_count // aut_order


def aut_order(kind: str, param: int) -> int:
    """|Aut G| for the group families with known automorphism groups."""
    if kind == "sym":
        if param == 6:
            return 1440
        return 1 if param <= 2 else math.factorial(param)
    if kind == "pgl2" and param > 3:
        return param * (param * param - 1)
    raise ValueError(f"automorphism group order not recorded for {kind}:{param}")


@dataclass
class CountReport:
    group: str
    orders: tuple[int, int, int]
    class_triples: list[tuple[int, int, int]]
    brute_count: int
    frobenius_count: int | None
    epi_count: int
    kernel_count: int | None

    @property
    def consistent(self) -> bool:
        return self.frobenius_count is None or self.frobenius_count == self.brute_count

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "orders": list(self.orders),
            "class_triple": [list(t) for t in self.class_triples],
            "brute_count": self.brute_count,
            "frobenius_count": self.frobenius_count,
            "epi_count": self.epi_count,
            "kernel_count": self.kernel_count,
        }


def count_report(G: PermGroup, orders, name: str, table: CharacterTable | None = None,
                 aut: int | None = None) -> CountReport:
    """Triples of the given orders with product 1: brute force, character sum and epimorphisms.

    Class ids in the report are the computed ones.  The character sum is
    evaluated on the table columns matched to those classes.
    """
    orders = tuple(orders)
    cs = ClassStructure(G)
    triples = qualifying_class_triples(cs, orders)
    brute = sum(count_triples_bruteforce(cs, *t) for t in triples)
    frob = None
    if table is not None:
        column = {c: t for t, c in enumerate(match_classes(table, cs))}
        frob = sum(frobenius_count(table, *(column[c] for c in t)) for t in triples)
    epi = count_smooth_epimorphisms(G, orders, cs)
    kernels = count_kernels(epi, aut) if aut else None
    return CountReport(name, orders, triples, brute, frob, epi, kernels)


# -- congruence subgroups -------------------------------------------------------------

def _prime_product(m: int, skip: int | None = None) -> Fraction:
    return math.prod((1 - Fraction(1, p * p) for p in factorint(m) if p != skip), start=Fraction(1))


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ValueError(f"{what} is not an integer: {value}")
    return int(value)


def gamma_index(m: int) -> int:
    """Index of the principal congruence subgroup of level m in the modular group."""
    if m <= 2:
        raise ValueError("level must exceed 2")
    return _exact(Fraction(m ** 3, 2) * _prime_product(m), "index")


def modular_dessin_data(n: int) -> tuple[int, int]:
    """(|Aut|, genus) of the regular dessins of types (2n,2n,2n) and (n,4n,4n) from level 4n."""
    if n < 1:
        raise ValueError("n must be positive")
    odd = _prime_product(n, skip=2)
    aut = _exact(4 * n ** 3 * odd, "automorphism group order")
    genus = _exact(1 + (2 * n - 3) * n * n * odd, "genus")
    return aut, genus
