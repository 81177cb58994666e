"""Combinatorial hypermaps as permutation pairs on a finite set.

Arrays hold images: ``x[i]`` is the image of point ``i``.  Products follow the
package convention "apply p, then q", so ``(p*q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import ENUMERATION_LIMIT, PermGroup, Permutation


def _as_array(p) -> np.ndarray:
    if isinstance(p, Permutation):
        p = p.images
    arr = np.asarray(p, dtype=np.int64)
    if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(len(arr))):
        raise ValueError("not a permutation array")
    return arr


def _inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def _cycle_labels(p: np.ndarray) -> tuple[int, np.ndarray]:
    """Cycle index of every point, numbered in order of each cycle's smallest point."""
    n = len(p)
    graph = coo_matrix((np.ones(n), (np.arange(n), p)), shape=(n, n))
    k, labels = connected_components(graph, directed=False)
    _, first = np.unique(labels, return_index=True)
    rename = np.empty(k, dtype=np.int64)
    rename[np.argsort(first)] = np.arange(k)
    return k, rename[labels]


def _orbit_count(*perms: np.ndarray) -> int:
    n = len(perms[0])
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return connected_components(graph, directed=False)[0]


@dataclass(frozen=True, eq=False)
class Hypermap:
    """Hypervertices, hyperedges and hyperfaces are the cycles of x, y and z = (xy)^-1."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray = field(init=False)
    labels: tuple[np.ndarray, np.ndarray, np.ndarray] = field(init=False, repr=False)
    counts: tuple[int, int, int] = field(init=False)
    monodromy_order: int | None = None

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y act on sets of different size")
        z = _inverse(self.y[self.x])
        object.__setattr__(self, "z", z)
        cx, lx = _cycle_labels(self.x)
        cy, ly = _cycle_labels(self.y)
        cz, lz = _cycle_labels(z)
        object.__setattr__(self, "labels", (lx, ly, lz))
        object.__setattr__(self, "counts", (cx, cy, cz))

    @property
    def size(self) -> int:
        return len(self.x)

    def cycle_lengths(self, role: int) -> Counter:
        """Multiset of cycle lengths of x (role 0), y (role 1) or z (role 2)."""
        return Counter(Counter(self.labels[role].tolist()).values())

    def type(self) -> tuple[int, int, int]:
        """Orders of x, y, z, i.e. the lcm of their cycle lengths."""
        from math import lcm

        return tuple(lcm(*self.cycle_lengths(r)) for r in range(3))


def hypermap_from_pair(x, y) -> Hypermap:
    """Hypermap of a pair of permutations; the pair must be transitive."""
    xa, ya = _as_array(x), _as_array(y)
    if len(xa) != len(ya):
        raise ValueError("x and y have different degrees")
    if _orbit_count(xa, ya) != 1:
        raise ValueError("the pair does not act transitively")
    return Hypermap(xa, ya)


def regular_hypermap_from_triple(G: PermGroup, triple, limit: int = ENUMERATION_LIMIT) -> Hypermap:
    """Regular hypermap on the elements of G with x, y acting by right translation."""
    x, y, z = triple
    if not (x * y * z).is_identity():
        raise ValueError("triple does not multiply to the identity")
    if PermGroup([x, y], G.degree).order != G.order or x not in G or y not in G:
        raise ValueError("triple does not generate the group")
    E = G.element_array(limit)
    xs = G.rank(np.asarray(x.images)[E])
    ys = G.rank(np.asarray(y.images)[E])
    return Hypermap(xs, ys, monodromy_order=G.order)


def genus_of(h: Hypermap) -> int:
    """Genus from c(x) + c(y) + c(z) = |Omega| + 2 - 2g."""
    defect = h.size + 2 - sum(h.counts)
    if defect % 2 or defect < 0:
        raise ValueError(f"invalid Euler defect {defect}")
    return defect // 2


def monodromy_group(h: Hypermap) -> PermGroup:
    return PermGroup([Permutation(h.x.tolist(), check=False), Permutation(h.y.tolist(), check=False)])


def is_regular(h: Hypermap) -> bool:
    order = h.monodromy_order if h.monodromy_order is not None else monodromy_group(h).order
    return order == h.size


@dataclass(frozen=True)
class WalshGraph:
    """Bipartite multigraph: white vertices are x-cycles, black vertices y-cycles, one edge per point."""

    n_white: int
    n_black: int
    multiplicity: dict[tuple[int, int], int]
    face_degrees: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(self.multiplicity.values())

    def table(self) -> np.ndarray:
        out = np.zeros((self.n_white, self.n_black), dtype=np.int64)
        for (w, b), k in self.multiplicity.items():
            out[w, b] = k
        return out

    def to_text(self) -> str:
        lines = [f"# white {self.n_white} black {self.n_black} edges {self.edge_count}"]
        lines += [f"{w} {b} {k}" for (w, b), k in sorted(self.multiplicity.items())]
        return "\n".join(lines) + "\n"


def walsh_graph(h: Hypermap) -> WalshGraph:
    lx, ly, lz = h.labels
    pairs = Counter(zip(lx.tolist(), ly.tolist()))
    faces = sorted((2 * length for length in Counter(lz.tolist()).values()), reverse=True)
    return WalshGraph(h.counts[0], h.counts[1], dict(pairs), tuple(faces))


def is_multiple_complete_bipartite(g: WalshGraph, mult: int) -> bool:
    """True for the graph mult*K_{a,b}: every white-black pair joined ``mult`` times."""
    return bool((g.table() == mult).all())


def is_multiple_cycle(g: WalshGraph, mult: int) -> bool:
    """True for mult*C_{2k}: a single even cycle whose edges all have multiplicity ``mult``."""
    t = g.table()
    support = t > 0
    if not (t[support] == mult).all():
        return False
    if not ((support.sum(axis=1) == 2).all() and (support.sum(axis=0) == 2).all()):
        return False
    w, b = np.nonzero(support)
    n = g.n_white + g.n_black
    return _orbit_count_edges(w, b + g.n_white, n) == 1


def _orbit_count_edges(src, dst, n) -> int:
    graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    return connected_components(graph, directed=False)[0]


# Role permutations act on (x, y, z).  Two moves generate all of S3:
#   rotate: (x, y, z) -> (y, z, x)
#   swap:   (x, y, z) -> (y, x^y, z)   (exchange the colours of the vertices)
def _rotate(x, y, z):
    return y, z, x


def _swap(x, y, z):
    yinv = _inverse(y)
    return y, y[x[yinv]], z


def _moves_for(sigma: tuple[int, int, int]) -> list:
    """Shortest sequence of moves realising the role permutation ``sigma``.

    ``sigma[k]`` names the old role that ends up in position k, so (1, 2, 0) is
    a rotation and (1, 0, 2) swaps hypervertices with hyperedges.
    """
    start = (0, 1, 2)
    frontier = {start: []}
    seen = {start}
    while frontier:
        nxt = {}
        for roles, path in frontier.items():
            if roles == tuple(sigma):
                return path
            for name, move in (("rotate", lambda r: (r[1], r[2], r[0])), ("swap", lambda r: (r[1], r[0], r[2]))):
                r = move(roles)
                if r not in seen:
                    seen.add(r)
                    nxt[r] = path + [name]
        frontier = nxt
    raise ValueError(f"not a role permutation: {sigma}")


ROLE_PERMUTATIONS = tuple(permutations(range(3)))


def associate(h: Hypermap, sigma: tuple[int, int, int]) -> Hypermap:
    """Hypermap with the roles of hypervertices, hyperedges and hyperfaces permuted."""
    x, y, z = h.x, h.y, h.z
    for name in _moves_for(tuple(sigma)):
        x, y, z = _rotate(x, y, z) if name == "rotate" else _swap(x, y, z)
    return Hypermap(x, y, monodromy_order=h.monodromy_order)
