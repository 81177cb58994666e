"""2x2 matrices over prime fields and the projective groups PGL2(p) >= PSL2(p).

Matrices act on row vectors, ``v -> v M``, so that the permutation image of
``M N`` is "M then N", matching the permutation engine.  The projective line
is indexed ``0, 1, ..., p-1, inf`` with infinity stored as index ``p``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .perm import Permutation, PermGroup

MAX_PRIME = 97


class ParameterError(ValueError):
    """Input parameters outside the range a construction accepts."""



def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p**0.5) + 1))


def mult_order(d: int, p: int) -> int:
    d %= p
    if d == 0:
        raise ValueError("0 has no multiplicative order")
    k, e = 1, d
    while e != 1:
        e = e * d % p
        k += 1
    return k


def is_square(t: int, p: int) -> bool:
    t %= p
    return t == 0 or pow(t, (p - 1) // 2, p) == 1


def elements_of_order(k: int, p: int) -> list[int]:
    return [t for t in range(1, p) if mult_order(t, p) == k]


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if self.det == 0:
            raise ValueError(f"singular matrix {self}")

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def __mul__(self, other: Mat2) -> Mat2:
        if self.p != other.p:
            raise ValueError("matrices over different fields")
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.p)

    def inverse(self) -> Mat2:
        k = pow(self.det, -1, self.p)
        return Mat2(self.d * k, -self.b * k, -self.c * k, self.a * k, self.p)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def eigenvalues(self) -> tuple[int, int] | None:
        """Roots of the characteristic polynomial in F_p, or None if it does not split."""
        p, tr, det = self.p, self.trace, self.det
        roots = [t for t in range(1, p) if (t * t - tr * t + det) % p == 0]
        if not roots:
            return None
        lam = roots[0]
        return tuple(sorted((lam, (tr - lam) % p)))

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.p}"


_MAT_RE = re.compile(r"\[\[(-?\d+),(-?\d+)\],\[(-?\d+),(-?\d+)\]\]mod(\d+)")


def parse_mat(text: str) -> Mat2:
    m = _MAT_RE.fullmatch(re.sub(r"\s", "", text))
    if not m:
        raise ValueError(f"cannot parse matrix {text!r}")
    a, b, c, d, p = map(int, m.groups())
    return Mat2(a, b, c, d, p)


def diag(s: int, t: int, p: int) -> Mat2:
    return Mat2(s, 0, 0, t, p)


@dataclass(frozen=True)
class ProjElement:
    """A matrix modulo scalars, stored with its first nonzero entry equal to 1."""

    mat: Mat2

    def __post_init__(self):
        m = self.mat
        lead = next(e for e in (m.a, m.b, m.c, m.d) if e)
        k = pow(lead, -1, m.p)
        object.__setattr__(self, "mat", Mat2(m.a * k, m.b * k, m.c * k, m.d * k, m.p))

    @classmethod
    def of(cls, a, b, c, d, p) -> ProjElement:
        return cls(Mat2(a, b, c, d, p))

    @property
    def p(self) -> int:
        return self.mat.p

    def __mul__(self, other: ProjElement) -> ProjElement:
        return ProjElement(self.mat * other.mat)

    def inverse(self) -> ProjElement:
        return ProjElement(self.mat.inverse())

    def is_identity(self) -> bool:
        return self.mat.is_scalar()

    def __str__(self):
        return str(self.mat)


def proj_order(e: ProjElement) -> int:
    k, g = 1, e
    while not g.is_identity():
        g = g * e
        k += 1
    return k


def in_psl(e: ProjElement) -> bool:
    """Membership of PSL2(p) inside PGL2(p): the determinant is a square."""
    return is_square(e.mat.det, e.p)


def eigen_ratios(m: Mat2) -> frozenset[int] | None:
    """The ratio of eigenvalues, as the unordered pair {r, 1/r}; None if not split."""
    ev = m.eigenvalues()
    if ev is None:
        return None
    lam, mu = ev
    p = m.p
    return frozenset({lam * pow(mu, -1, p) % p, mu * pow(lam, -1, p) % p})


# -- the action on the projective line ---------------------------------------------------

def act(m: Mat2, point: int) -> int:
    """Image of a projective-line index under v -> v M (index p is infinity)."""
    p = m.p
    s, t = (point, 1) if point < p else (1, 0)
    u, v = (s * m.a + t * m.c) % p, (s * m.b + t * m.d) % p
    return p if v == 0 else u * pow(v, -1, p) % p


class PGL2:
    """PGL2(p) as a permutation group of degree p+1, with its index-2 subgroup PSL2(p)."""

    def __init__(self, p: int):
        if not (is_prime(p) and 2 < p <= MAX_PRIME):
            raise ParameterError(f"p must be an odd prime <= {MAX_PRIME}, got {p}")
        self.p = p
        g = elements_of_order(p - 1, p)[0]
        self.primitive_root = g
        self.generators = [
            ProjElement(diag(g, 1, p)),
            ProjElement.of(1, 1, 0, 1, p),
            ProjElement.of(0, 1, 1, 0, p),
        ]

    @property
    def degree(self) -> int:
        return self.p + 1

    def perm(self, e: ProjElement) -> Permutation:
        return Permutation([act(e.mat, t) for t in range(self.p + 1)], check=False)

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup([self.perm(e) for e in self.generators], self.degree)

    @cached_property
    def psl_group(self) -> PermGroup:
        p = self.p
        g = self.primitive_root
        gens = [ProjElement(diag(g * g % p, 1, p)), ProjElement.of(1, 1, 0, 1, p),
                ProjElement.of(0, 1, p - 1, 0, p)]
        return PermGroup([self.perm(e) for e in gens], self.degree)

    def order(self) -> int:
        p = self.p
        return p * (p - 1) * (p + 1)


def pgl2_as_perm_group(p: int) -> PGL2:
    return PGL2(p)


# -- parameterised triples ------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixTriple:
    """Projective elements x, y, z with xyz = 1 and the matrices they came from."""

    X: Mat2
    Y: Mat2
    Z: Mat2
    params: dict

    @property
    def x(self) -> ProjElement:
        return ProjElement(self.X)

    @property
    def y(self) -> ProjElement:
        return ProjElement(self.Y)

    @property
    def z(self) -> ProjElement:
        return ProjElement(self.Z)

    def orders(self) -> tuple[int, int, int]:
        return proj_order(self.x), proj_order(self.y), proj_order(self.z)

    def product_is_identity(self) -> bool:
        return (self.x * self.y * self.z).is_identity()


def _generates(model: PGL2, elems, target: PermGroup) -> bool:
    return PermGroup([model.perm(e) for e in elems], model.degree).order == target.order


def _param(cond, message):
    if not cond:
        raise ParameterError(message)


def _require(cond, message):
    if not cond:
        raise ValueError(message)


def example7_swap_a(d: int, p: int) -> int:
    """The choice a = (d+1)/(d-1), making Z conjugate to Y^-1."""
    return (d + 1) * pow(d - 1, -1, p) % p


def build_example7_triple(n: int, p: int, d: int | None = None, a: int | None = None,
                          b: int | None = None, c: int | None = None,
                          variant: str = "swap") -> MatrixTriple:
    """Triple of type (2, 2n, 2n) in PGL2(p), x in PSL2(p) and y, z outside.

    Unspecified parameters are filled by the smallest admissible values; with
    ``variant="noswap"`` the search skips the choice of a that forces a swap.
    """
    _param(is_prime(p) and p % (4 * n) == (2 * n + 1) % (4 * n),
             f"need a prime p = 2n+1 mod 4n, got p={p}, n={n}")
    if d is None:
        d = elements_of_order(2 * n, p)[0]
    _param(mult_order(d, p) == 2 * n, f"d={d} does not have order {2 * n} mod {p}")
    if a is None:
        if variant == "swap":
            a = example7_swap_a(d, p)
        else:
            return _search_example7_noswap(n, p, d)
    a %= p
    _param((a * a + 1) % p != 0, "a^2 = -1 forces bc = 0 and d^2 = -1")
    if b is None and c is None:
        b = 1
    if c is None:
        c = -(a * a + 1) * pow(b, -1, p)
    if b is None:
        b = -(a * a + 1) * pow(c, -1, p)
    _param((a * a + b * c + 1) % p == 0, "need a^2 + bc + 1 = 0")
    _param(b * c % p != 0, "need bc != 0")
    X = Mat2(a, b, c, -a, p)
    Y = diag(d, 1, p)
    Z = (X * Y).inverse()
    triple = MatrixTriple(X, Y, Z, {"n": n, "p": p, "d": d, "a": a, "b": b % p, "c": c % p})
    _require(triple.orders() == (2, 2 * n, 2 * n),
             f"orders {triple.orders()} differ from (2, {2 * n}, {2 * n})")
    return triple


def _search_example7_noswap(n, p, d):
    swap_a = example7_swap_a(d, p)
    model = PGL2(p)
    for a in range(1, p):
        if a == swap_a or (a * a + 1) % p == 0:
            continue
        try:
            t = build_example7_triple(n, p, d, a, variant="noswap")
        except ValueError:
            continue
        ratios = eigen_ratios(t.Z)
        if ratios is None or d in ratios:
            continue
        if _generates(model, [t.x, t.y], model.group):
            return t
    raise ValueError(f"no non-swapping parameters for n={n}, p={p}")


def example7_swaps(t: MatrixTriple) -> bool:
    """Whether Z's eigenvalue ratio is d^{+-1}, the condition for an inner swap of y, z."""
    ratios = eigen_ratios(t.Z)
    if ratios is None:
        raise ValueError("characteristic polynomial of Z does not split over F_p")
    return t.params["d"] in ratios


def build_example11_triple(n: int, p: int, d: int | None = None) -> MatrixTriple:
    """Triple of orders (2, 2n, 4n) generating PSL2(p), for p = 1 mod 8n."""
    _param(n >= 2 and is_prime(p) and p % (8 * n) == 1, f"need prime p = 1 mod {8 * n}")
    if d is None:
        d = elements_of_order(8 * n, p)[0]
    _param(mult_order(d, p) == 8 * n, f"d={d} does not have order {8 * n} mod {p}")
    a = (d**4 + 1) * pow(d - d**3, -1, p) % p
    _param((a * a + 1) % p != 0, "a^2 = -1 forces bc = 0")
    b, c = 1, -(a * a + 1) % p
    X = Mat2(a, b, c, -a, p)
    Z = diag(d, pow(d, -1, p), p)
    Y = (Z * X).inverse()
    triple = MatrixTriple(X, Y, Z, {"n": n, "p": p, "d": d, "a": a, "b": b, "c": c})
    _require(triple.orders() == (2, 2 * n, 4 * n), f"unexpected orders {triple.orders()}")
    model = PGL2(p)
    _require(all(in_psl(e) for e in (triple.x, triple.y, triple.z)), "triple leaves PSL2(p)")
    _require(_generates(model, [triple.x, triple.z], model.psl_group),
             "x and z do not generate PSL2(p)")
    return triple


def build_example13_triple(n: int, p: int, d: int | None = None, a: int | None = None,
                           b: int | None = None, c: int | None = None) -> MatrixTriple:
    """Triple of orders (2, 2n, 4n) in PGL2(p), y in PSL2(p), x and z outside."""
    _param(n >= 3 and is_prime(p) and p % (8 * n) == 4 * n + 1,
             f"need prime p = 4n+1 mod 8n, got p={p}, n={n}")
    if d is None:
        d = elements_of_order(4 * n, p)[0]
    _param(mult_order(d, p) == 4 * n, f"d={d} does not have order {4 * n} mod {p}")
    dinv = pow(d, -1, p)
    if a is None:
        a = 1
    target_bc = a * a * (1 - d - dinv) % p
    if b is None and c is None:
        b = 1
    if c is None and b is not None and b % p:
        c = target_bc * pow(b, -1, p)
    if b is None and c % p:
        b = target_bc * pow(c, -1, p)
    _param(b is not None and c is not None and b * c % p != 0, "need bc != 0")
    _param((pow(a, -2, p) * b * c + d + dinv) % p == 1, "need a^-2 bc + d + 1/d = 1")
    _param(not is_square(a * a + b * c, p), "need a^2 + bc to be a non-square")
    X = Mat2(a, b, c, -a, p)
    Y = diag(d, dinv, p)
    Z = (X * Y).inverse()
    triple = MatrixTriple(X, Y, Z, {"n": n, "p": p, "d": d, "a": a % p, "b": b % p, "c": c % p})
    _require(triple.orders() == (2, 2 * n, 4 * n), f"unexpected orders {triple.orders()}")
    model = PGL2(p)
    _require(_generates(model, [triple.y, triple.z], model.group), "y and z do not generate PGL2(p)")
    return triple
