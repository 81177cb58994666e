"""Permutations and a Schreier-Sims permutation group engine.

Conventions: a permutation is stored as the tuple of images of 0..degree-1.
Products read left to right, ``p * q`` meaning "apply p, then q", so points
are acted on from the right.  Text I/O uses 1-based disjoint cycles, e.g.
``"(1,2)(3,4)"``; the identity is ``"()"``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

ENUMERATION_LIMIT = 10**6
FINGERPRINT_LIMIT = 10**4


class Permutation:
    """An immutable permutation of ``{0, ..., degree-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images, check=True):
        images = tuple(int(i) for i in images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        return Permutation(_inv(self.images), check=False)

    def conj(self, g: Permutation) -> Permutation:
        """Return ``g^-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def cycles(self, include_fixed=False) -> list[tuple[int, ...]]:
        return _cycles(self.images, include_fixed)

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self)

    def order(self) -> int:
        return order_of(self)

    def parity(self) -> str:
        return parity_of(self)

    def support(self) -> list[int]:
        return [i for i, p in enumerate(self.images) if i != p]

    def __str__(self):
        return format_perm(self)

    def __repr__(self):
        return f"Permutation({format_perm(self)!r}, degree={self.degree})"


# -- raw tuple arithmetic, shared by the group engine --------------------------

def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _cycles(images, include_fixed=False):
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = images[start]
        while j != start:
            seen[j] = True
            cycle.append(j)
            j = images[j]
        if len(cycle) > 1 or include_fixed:
            out.append(tuple(cycle))
    return out


# -- operations -----------------------------------------------------------------

def perm_from_cycles(cycles, degree: int) -> Permutation:
    """Build a permutation from 1-based disjoint cycles; unnamed points are fixed."""
    images = list(range(degree))
    seen = set()
    for cycle in cycles:
        for point in cycle:
            if not 1 <= point <= degree:
                raise ValueError(f"point {point} out of range 1..{degree}")
            if point in seen:
                raise ValueError(f"point {point} repeated")
            seen.add(point)
        for a, b in zip(cycle, cycle[1:] + tuple(cycle[:1])):
            images[a - 1] = b - 1
    return Permutation(images, check=False)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product "p then q"."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(_mul(p.images, q.images), check=False)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths including fixed points, in decreasing order."""
    return tuple(sorted((len(c) for c in _cycles(p.images, True)), reverse=True))


def order_of(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in _cycles(p.images)), 1)


def parity_of(p: Permutation) -> str:
    ncycles = len(_cycles(p.images, True))
    return "odd" if (p.degree - ncycles) % 2 else "even"


def format_perm(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle text such as ``"(1,2)(3,4)"`` (1-based)."""
    stripped = re.sub(r"\s", "", text)
    if _CYCLE_RE.sub("", stripped):
        raise ValueError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        if body:
            cycles.append(tuple(int(t) for t in body.split(",")))
    return perm_from_cycles(cycles, degree)


# -- Schreier-Sims ----------------------------------------------------------------

def _orbit_transversal(point, gens):
    """Map each orbit point to a coset representative u with u[point] == that point."""
    ident = tuple(range(len(gens[0]))) if gens else None
    trans = {point: ident}
    queue = [point]
    for beta in queue:
        u = trans[beta]
        for s in gens:
            gamma = s[beta]
            if gamma not in trans:
                trans[gamma] = _mul(u, s)
                queue.append(gamma)
    return trans


class PermGroup:
    """A permutation group given by generators, with a base and strong generating set.

    The base is built deterministically: new base points are always the smallest
    point moved by the element that forces the extension.  The group is immutable
    after construction.
    """

    def __init__(self, gens, degree: int | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("need generators or a degree")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} vs {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        self._ident = tuple(range(degree))
        self._schreier_sims([g.images for g in gens])
        self.order = math.prod(len(t) for t in self.transversals)
        self._arrays = None
        # orbit points per level, base point first, so the identity has rank 0
        self._points = [[b] + sorted(set(t) - {b}) for b, t in zip(self.base, self.transversals)]

    # construction
    def _schreier_sims(self, gens):
        ident = self._ident
        strong = [g for g in dict.fromkeys(gens) if g != ident]
        base: list[int] = []
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(next(i for i, j in enumerate(g) if i != j))
        level_gens = [[s for s in strong if all(s[b] == b for b in base[:i])]
                      for i in range(len(base))]
        trans = [_orbit_transversal(base[i], level_gens[i]) for i in range(len(base))]
        self.base, self.transversals = base, trans
        inv_trans = [{k: _inv(v) for k, v in t.items()} for t in trans]
        self._inv_trans = inv_trans

        i = len(base) - 1
        while i >= 0:
            extended_to = self._check_level(i, strong, level_gens)
            if extended_to is None:
                i -= 1
                continue
            # levels 0..extended_to received a new strong generator
            i = extended_to
            trans[i] = _orbit_transversal(base[i], level_gens[i])
            inv_trans[i] = {k: _inv(v) for k, v in trans[i].items()}
            # lower levels are rebuilt on the way down
            for lvl in range(i):
                trans[lvl] = None

        self.strong_generators = strong
        self._level_gens = level_gens

    def _check_level(self, i, strong, level_gens):
        base, trans, inv_trans = self.base, self.transversals, self._inv_trans
        if trans[i] is None:
            trans[i] = _orbit_transversal(base[i], level_gens[i])
            inv_trans[i] = {k: _inv(v) for k, v in trans[i].items()}
        t, tinv = trans[i], inv_trans[i]
        ident = self._ident
        for beta, u in list(t.items()):
            for s in level_gens[i]:
                gamma = s[beta]
                sg = _mul(_mul(u, s), tinv[gamma])
                if sg == ident:
                    continue
                h, j = self._sift(sg, i + 1)
                if h == ident:
                    continue
                strong.append(h)
                if j == len(base):
                    base.append(next(p for p, q in enumerate(h) if p != q))
                    level_gens.append([])
                    trans.append(None)
                    inv_trans.append(None)
                for lvl in range(j + 1):
                    level_gens[lvl].append(h)
                return j
        return None

    def _sift(self, g, start=0):
        for j in range(start, len(self.base)):
            gamma = g[self.base[j]]
            tinv = self._inv_trans[j]
            if gamma not in tinv:
                return g, j
            g = _mul(g, tinv[gamma])
        return g, len(self.base)

    # queries
    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        h, _ = self._sift(p.images)
        return h == self._ident

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_symmetric(self) -> bool:
        """True when this is the full symmetric group on its points."""
        return self.order == math.factorial(self.degree)

    def orbit(self, point: int) -> set[int]:
        gens = [g.images for g in self.generators]
        return set(_orbit_transversal(point, gens)) if gens else {point}

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_two_transitive(self) -> bool:
        if self.degree < 2:
            raise ValueError("two-transitivity needs degree >= 2")
        if not self.is_transitive():
            return False
        # transitive on >= 2 points forces 0 to be the first base point
        stab = [Permutation(s, check=False) for s in self._level_gens[1]] \
            if len(self.base) > 1 else []
        if self.base[0] != 0:
            return False
        if not stab:
            return self.degree == 2
        return len(PermGroup(stab, self.degree).orbit(1)) == self.degree - 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for k, a in enumerate(gens) for b in gens[k + 1:])

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def index_in(self, other: PermGroup) -> int:
        if not self.is_subgroup_of(other):
            raise ValueError("not a subgroup")
        return other.order // self.order

    def __eq__(self, other):
        return (isinstance(other, PermGroup) and self.order == other.order
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    # vectorised enumeration
    def _tables(self):
        if self._arrays is None:
            deg = self.degree
            pos, uinv = [], []
            for points, tinv in zip(self._points, self._inv_trans):
                p = np.full(deg, -1, dtype=np.int64)
                table = np.tile(np.arange(deg, dtype=np.int64), (deg, 1))
                for k, point in enumerate(points):
                    p[point] = k
                    table[point] = tinv[point]
                pos.append(p)
                uinv.append(table)
            self._arrays = (pos, uinv)
        return self._arrays

    def element_array(self, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
        """All elements as rows of an ``(order, degree)`` array, in rank order."""
        if self.order > limit:
            raise ValueError(f"group order {self.order} exceeds enumeration limit {limit}")
        deg = self.degree
        elems = np.arange(deg, dtype=np.int64)[None, :]
        for t, points in zip(reversed(self.transversals), reversed(self._points)):
            reps = np.array([t[q] for q in points], dtype=np.int64)
            # rows become e * u with the deeper factor applied first
            elems = reps[:, elems].reshape(-1, deg)
        ranks = self.rank(elems)
        out = np.empty_like(elems)
        out[ranks] = elems
        return out

    def rank(self, arr: np.ndarray) -> np.ndarray:
        """Map rows (elements of this group) to their index in ``element_array``."""
        arr = np.asarray(arr, dtype=np.int64)
        pos, uinv = self._tables()
        idx = np.zeros(len(arr), dtype=np.int64)
        for b, p, table, t in zip(self.base, pos, uinv, self.transversals):
            gamma = arr[:, b]
            k = p[gamma]
            if (k < 0).any():
                raise ValueError("element not in group")
            idx = idx * len(t) + k
            arr = table[gamma[:, None], arr]
        if (arr != np.arange(self.degree)).any():
            raise ValueError("element not in group")
        return idx

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[Permutation]:
        return [Permutation(r, check=False) for r in self.element_array(limit).tolist()]

    def rank_of(self, p: Permutation) -> int:
        return int(self.rank(np.array([p.images]))[0])

    def element_at(self, rank: int) -> Permutation:
        """Inverse of ``rank_of`` without enumerating the group."""
        digits = []
        for t, points in zip(reversed(self.transversals), reversed(self._points)):
            rank, k = divmod(rank, len(t))
            digits.append(t[points[k]])
        g = self._ident
        for u in digits:
            g = _mul(g, u)
        return Permutation(g, check=False)


# -- subgroup constructions -------------------------------------------------------

def group_from_generators(gens) -> PermGroup:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    return PermGroup(gens)


def symmetric_group(degree: int) -> PermGroup:
    gens = [perm_from_cycles([tuple(range(1, degree + 1))], degree)]
    if degree > 2:
        gens.append(perm_from_cycles([(1, 2)], degree))
    return PermGroup(gens, degree)


def alternating_group(degree: int) -> PermGroup:
    gens = [perm_from_cycles([(1, 2, k)], degree) for k in range(3, degree + 1)]
    return PermGroup(gens, degree)


def normal_closure(G: PermGroup, elems) -> PermGroup:
    """Smallest normal subgroup of G containing ``elems``."""
    elems = list(elems)
    for e in elems:
        if e not in G:
            raise ValueError(f"{e} is not in the group")
    gens = [e for e in elems if not e.is_identity()]
    N = PermGroup(gens, G.degree)
    frontier = list(gens)
    while frontier:
        fresh = []
        for n in frontier:
            for g in G.generators:
                c = n.conj(g)
                if c not in N and c not in fresh:
                    fresh.append(c)
        if fresh:
            gens.extend(fresh)
            N = PermGroup(gens, G.degree)
        # conjugates of N's generators by G's generators all lie in N once no new ones appear
        frontier = fresh
    return N


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    return all(n.conj(g) in N for n in N.generators for g in G.generators)


def direct_product(*groups: PermGroup) -> PermGroup:
    """External direct product acting on the disjoint union of the point sets."""
    total = sum(G.degree for G in groups)
    gens, offset = [], 0
    for G in groups:
        for g in G.generators:
            images = list(range(total))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Permutation(images, check=False))
        offset += G.degree
    return PermGroup(gens, total)


def embed(p: Permutation, degree: int, offset: int = 0) -> Permutation:
    """Extend p to a larger point set, shifted by ``offset``; other points fixed."""
    images = list(range(degree))
    for i, j in enumerate(p.images):
        images[offset + i] = offset + j
    return Permutation(images, check=False)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [commutator(a, b) for k, a in enumerate(gens) for b in gens[k + 1:]]
    if not comms:
        return PermGroup([], G.degree)
    return normal_closure(G, comms)


# -- vectorised helpers on element arrays -------------------------------------

def _compose_rows(arr: np.ndarray, q) -> np.ndarray:
    """Rows g -> g * q."""
    return np.asarray(q, dtype=np.int64)[arr]


def _left_rows(p, arr: np.ndarray) -> np.ndarray:
    """Rows g -> p * g."""
    return arr[:, np.asarray(p, dtype=np.int64)]


def centralizer_elements(G: PermGroup, elems, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """Rows of all g in G commuting with every element of ``elems``."""
    E = G.element_array(limit)
    mask = np.ones(len(E), dtype=bool)
    for e in elems:
        mask &= (_left_rows(e.images, E) == _compose_rows(E, e.images)).all(axis=1)
    return E[mask]


def center_order(G: PermGroup, limit: int = ENUMERATION_LIMIT) -> int | None:
    """Order of the centre; None when the group is too large to decide."""
    if G.is_symmetric() and G.degree >= 3:
        return 1
    if G.degree >= 4 and 2 * G.order == math.factorial(G.degree):
        return 1  # the alternating group
    if G.order > limit:
        return None
    return len(centralizer_elements(G, G.generators, limit))


def element_orders(G: PermGroup, limit: int = FINGERPRINT_LIMIT) -> np.ndarray:
    E = G.element_array(limit)
    ident = np.arange(G.degree)
    orders = np.zeros(len(E), dtype=np.int64)
    power = E.copy()
    k = 1
    while (orders == 0).any():
        done = (power == ident).all(axis=1) & (orders == 0)
        orders[done] = k
        power = np.take_along_axis(E, power, axis=1)  # power * g
        k += 1
    return orders


def conjugacy_class_labels(G: PermGroup, limit: int = ENUMERATION_LIMIT) -> tuple[int, np.ndarray]:
    """Label every element (by rank) with a class id; ids ordered by first rank."""
    E = G.element_array(limit)
    n = len(E)
    src, dst = [np.arange(n)], [np.arange(n)]
    for s in G.generators:
        sinv = s.inverse().images
        conj = np.asarray(s.images)[E[:, list(sinv)]]
        src.append(np.arange(n))
        dst.append(G.rank(conj))
    graph = coo_matrix((np.ones(sum(len(a) for a in src)),
                        (np.concatenate(src), np.concatenate(dst))), shape=(n, n))
    k, labels = connected_components(graph, directed=False)
    # relabel so class ids follow the smallest rank in each class
    first = {}
    for lab in labels.tolist():
        first.setdefault(lab, len(first))
    return k, np.array([first[lab] for lab in labels.tolist()], dtype=np.int64)


# -- conjugator search ---------------------------------------------------------------

def _cycle_alignment(y: Permutation, z: Permutation) -> Permutation | None:
    """h with h^-1 y h == z, mapping each y-cycle onto a z-cycle of equal length."""
    if cycle_type(y) != cycle_type(z):
        return None
    ycyc = sorted(_cycles(y.images, True), key=lambda c: (-len(c), c))
    zcyc = sorted(_cycles(z.images, True), key=lambda c: (-len(c), c))
    images = [0] * y.degree
    for a, b in zip(ycyc, zcyc):
        for i, j in zip(a, b):
            images[i] = j
    return Permutation(images, check=False)


def find_conjugator(G: PermGroup, y: Permutation, z: Permutation) -> Permutation | None:
    """Some g in G with g^-1 y g == z, or None."""
    if y not in G or z not in G:
        raise ValueError("arguments must lie in the group")
    if cycle_type(y) != cycle_type(z):
        return None
    if G.is_symmetric():
        return _cycle_alignment(y, z)
    if G.order <= ENUMERATION_LIMIT:
        E = G.element_array()
        hits = np.nonzero((_left_rows(y.images, E) == _compose_rows(E, z.images)).all(axis=1))[0]
        return Permutation(E[hits[0]].tolist(), check=False) if len(hits) else None
    return _backtrack_conjugator(G, y, z)


def _backtrack_conjugator(G: PermGroup, y: Permutation, z: Permutation) -> Permutation | None:
    """Depth-first search over base images, pruning on y g == g z at known points."""
    base, trans = G.base, G.transversals
    ylen = {p: len(c) for c in _cycles(y.images, True) for p in c}
    zlen = {p: len(c) for c in _cycles(z.images, True) for p in c}
    yi, zi = y.images, z.images

    def consistent(g, upto):
        known = {base[i]: g[base[i]] for i in range(upto)}
        for p, img in known.items():
            if ylen[p] != zlen[img]:
                return False
            q = yi[p]
            if q in known and known[q] != zi[img]:
                return False
        return True

    def search(level, suffix):
        # suffix = u_level-1 ... u_0 applied last; deeper factors go in front
        if level == len(base):
            return suffix if _mul(yi, suffix) == _mul(suffix, zi) else None
        for _, u in sorted(trans[level].items()):
            g = _mul(u, suffix)
            if not consistent(g, level + 1):
                continue
            found = search(level + 1, g)
            if found is not None:
                return found
        return None

    found = search(0, G._ident)
    return Permutation(found, check=False) if found is not None else None


def centralizer_of(G: PermGroup, y: Permutation) -> list[Permutation]:
    """All elements of G commuting with y (symmetric groups handled structurally)."""
    if G.order <= ENUMERATION_LIMIT:
        return [Permutation(r, check=False) for r in centralizer_elements(G, [y]).tolist()]
    if not G.is_symmetric():
        raise ValueError("centraliser enumeration needs an enumerable or symmetric group")
    return _symmetric_centralizer(y)


def _symmetric_centralizer(y: Permutation) -> list[Permutation]:
    from itertools import permutations, product

    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in _cycles(y.images, True):
        by_len.setdefault(len(c), []).append(c)
    size = math.prod(math.factorial(len(cs)) * length ** len(cs) for length, cs in by_len.items())
    if size > ENUMERATION_LIMIT:
        raise ValueError(f"centraliser of order {size} is too large to enumerate")
    choices = []
    for length, cs in by_len.items():
        opts = []
        for order in permutations(range(len(cs))):
            for shifts in product(range(length), repeat=len(cs)):
                opts.append([(cs[a], cs[b], s) for a, (b, s) in enumerate(zip(order, shifts))])
        choices.append(opts)
    out = []
    for combo in product(*choices):
        images = [0] * y.degree
        for part in combo:
            for src, dst, shift in part:
                for k, p in enumerate(src):
                    images[p] = dst[(k + shift) % len(dst)]
        out.append(Permutation(images, check=False))
    return out


def find_swapping_conjugator(G: PermGroup, y: Permutation, z: Permutation) -> Permutation | None:
    """Some g in G with y^g == z and z^g == y, or None."""
    h = find_conjugator(G, y, z)
    if h is None:
        return None
    for c in centralizer_of(G, y):
        g = c * h
        if z.conj(g) == y:
            return g
    return None


# -- small-group fingerprints ------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian: bool
    exponent: int | None
    order_histogram: tuple[tuple[int, int], ...] | None
    center_order: int | None
    derived_order: int

    def as_dict(self):
        return {
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "order_histogram": None if self.order_histogram is None
            else {str(k): v for k, v in self.order_histogram},
            "center_order": self.center_order,
            "derived_order": self.derived_order,
        }


def structure_fingerprint(G: PermGroup, limit: int = FINGERPRINT_LIMIT) -> Fingerprint:
    if G.order > limit:
        raise ValueError(f"group order {G.order} exceeds fingerprint limit {limit}")
    orders = element_orders(G, limit)
    hist = tuple(sorted(Counter(orders.tolist()).items()))
    return Fingerprint(
        order=G.order,
        abelian=G.is_abelian(),
        exponent=reduce(math.lcm, orders.tolist(), 1),
        order_histogram=hist,
        center_order=center_order(G, limit),
        derived_order=derived_subgroup(G).order,
    )


def coarse_fingerprint(G: PermGroup) -> Fingerprint:
    """Fingerprint without the element-order data, usable for large groups."""
    if G.order <= FINGERPRINT_LIMIT:
        return structure_fingerprint(G)
    return Fingerprint(
        order=G.order,
        abelian=G.is_abelian(),
        exponent=None,
        order_histogram=None,
        center_order=center_order(G),
        derived_order=derived_subgroup(G).order,
    )
