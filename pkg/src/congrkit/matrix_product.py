"""Principal congruences on products F_m x F_n of full matrix monoids.

Each coordinate pair (K, K') of a generator is *scalar* (K' = lam K),
*H* (H-related but not a scalar multiple) or *nonH*.  The dispatch below
picks a description from those classes; dual orientations reuse the same
class with coordinates swapped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from .congruence_fn import CongruenceFn, class_key_fn, principal_fn, related_fn
from .matrices import (
    Matrix,
    MatrixMonoid,
    general_linear,
    h_related_matrix,
    hclass_element,
    identity_matrix,
    inverse,
    is_scalar_multiple,
    matmul,
    parse_matrix_monoid,
    reduce_to_partial_identity,
    reduced,
    reduced_with,
)
from .oracle import ProductMonoid

MatrixPair = tuple[Matrix, Matrix]
CASES = ("scalar-scalar", "nonH-nonH", "nonH-H", "H-nonH", "scalar-H", "H-scalar", "H-H")


def matrix_product_monoid(left: MatrixMonoid, right: MatrixMonoid) -> ProductMonoid:
    if left.p != right.p:
        raise ValueError("both factors must be over the same field")
    return ProductMonoid(left, right)


def parse_matrix_product(text: str) -> ProductMonoid:
    parts = text.strip().split("x")
    if len(parts) != 2:
        raise ValueError(f"bad product literal {text!r}; expected e.g. F2@GF(2)xF2@GF(2)")
    return matrix_product_monoid(parse_matrix_monoid(parts[0]), parse_matrix_monoid(parts[1]))


def parse_matrix_pair_element(text: str, monoid: ProductMonoid) -> MatrixPair:
    m = re.fullmatch(r"\s*\(\s*(\[[^\]]*\])\s*,\s*(\[[^\]]*\])\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad element {text!r}; expected e.g. ([1,0;0,1],[0,0;0,0])")
    return monoid.left.parse_element(m.group(1)), monoid.right.parse_element(m.group(2))


def format_matrix_pair(x: MatrixPair) -> str:
    return f"([{x[0]}],[{x[1]}])"


def _swap(x):
    return (x[1], x[0])


def _pair_mul(x, y):
    return (matmul(x[0], y[0]), matmul(x[1], y[1]))


def _pair_inv(x):
    return (inverse(x[0]), inverse(x[1]))


def _closure(gens: set, mul, identity) -> frozenset:
    group, frontier = {identity}, [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                q = mul(h, g)
                if q not in group:
                    group.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(group)


@cache
def _conjugacy_class(x: Matrix) -> frozenset[Matrix]:
    return frozenset(g * x * inverse(g) for g in general_linear(x.p, x.n))


@cache
def gl_pair_normal_closure(pair: tuple[Matrix, Matrix]) -> frozenset[tuple[Matrix, Matrix]]:
    """Normal closure of one element of GL(i) x GL(j)."""
    x, y = pair
    gens = {(a, b) for a in _conjugacy_class(x) for b in _conjugacy_class(y)}
    return _closure(gens, _pair_mul, (identity_matrix(x.p, x.n), identity_matrix(y.p, y.n)))


def associated_normal_subgroup(
    x: MatrixPair, y: MatrixPair, reductions: tuple[tuple[Matrix, Matrix], tuple[Matrix, Matrix]] | None = None
) -> frozenset[tuple[Matrix, Matrix]]:
    """Normal subgroup of GL(i) x GL(j) attached to componentwise H-related x, y.

    ``reductions`` optionally supplies (s1, s3) and (s2, s4) reducing x's
    coordinates to partial identities; the result does not depend on them.
    """
    (k, l), (k2, l2) = x, y
    if not (h_related_matrix(k, k2) and h_related_matrix(l, l2)):
        raise ValueError("coordinates are not H-related")
    if reductions is None:
        reductions = (reduce_to_partial_identity(k), reduce_to_partial_identity(l))
    (s1, s3), (s2, s4) = reductions
    if reduced_with(s1, s3, k, k.rank) != identity_matrix(k.p, k.rank):
        raise ValueError("first reduction does not reduce K")
    if reduced_with(s2, s4, l, l.rank) != identity_matrix(l.p, l.rank):
        raise ValueError("second reduction does not reduce L")
    return gl_pair_normal_closure((reduced_with(s1, s3, k2, k.rank), reduced_with(s2, s4, l2, l.rank)))


@cache
def scalar_paired_closure(lam: int, y: Matrix) -> frozenset[tuple[int, Matrix]]:
    """Normal closure of (lam, y) in GF(p)* x GL(j)."""
    p = y.p
    gens = {(lam, c) for c in _conjugacy_class(y)}
    return _closure(gens, lambda a, b: (a[0] * b[0] % p, matmul(a[1], b[1])), (1, identity_matrix(p, y.n)))


def coordinate_kind(a: Matrix, b: Matrix) -> str:
    if is_scalar_multiple(b, a) is not None:
        return "scalar"
    return "H" if h_related_matrix(a, b) else "nonH"


@dataclass(frozen=True)
class PrincipalFmFn:
    pair: tuple[MatrixPair, MatrixPair]
    swapped: bool

    case = "?"

    def related(self, x: MatrixPair, y: MatrixPair) -> bool:
        if x == y:
            return True
        if self.swapped:
            x, y = _swap(x), _swap(y)
        return self._related(x, y)

    def key(self, x: MatrixPair):
        if self.swapped:
            x = _swap(x)
        k = self._key(x)
        return k if k is not None else ("self", x[0].rows, x[1].rows)

    def _related(self, x, y) -> bool:
        raise NotImplementedError

    def _key(self, x):
        raise NotImplementedError

    def summary(self) -> str:
        return self.case


@dataclass(frozen=True)
class ScalarScalar(PrincipalFmFn):
    """K' = lam K and L' = nu L; the identity relation when both are 1."""

    ranks: tuple[int, int] = (0, 0)
    units: tuple[int, int] = (1, 1)
    case = "scalar-scalar"

    def _orbit(self):
        p = self.pair[0][0].p
        lam, nu = self.units
        out, t = [], (1, 1)
        while t not in out:
            out.append(t)
            t = (t[0] * lam % p, t[1] * nu % p)
        return out

    def _low(self, x) -> bool:
        return x[0].rank <= self.ranks[0] and x[1].rank <= self.ranks[1]

    def _related(self, x, y):
        if not self._low(x):
            return False
        return any(y == (x[0].scale(a), x[1].scale(b)) for a, b in self._orbit())

    def _key(self, x):
        if self._low(x):
            return ("orbit", min((x[0].scale(a).rows, x[1].scale(b).rows) for a, b in self._orbit()))
        return None

    def summary(self):
        return f"{self.case} ranks={self.ranks} units={self.units}"


@dataclass(frozen=True)
class ReesFmFn(PrincipalFmFn):
    corners: tuple[tuple[int, int], ...] = ()
    case = "nonH-nonH"

    def in_ideal(self, x) -> bool:
        return any(x[0].rank <= i and x[1].rank <= k for i, k in self.corners)

    def _related(self, x, y):
        return self.in_ideal(x) and self.in_ideal(y)

    def _key(self, x):
        return ("ideal",) if self.in_ideal(x) else None

    def summary(self):
        return f"{self.case} ideal=" + "+".join(f"I{i}xI{k}" for i, k in self.corners)


@dataclass(frozen=True)
class OneSidedFmFn(PrincipalFmFn):
    """First coordinates not H-related; second ones H-related (possibly scalar)."""

    bound: int = 0
    rank: int = 0
    theta: CongruenceFn = None

    @property
    def case(self):
        return "H-nonH" if self.swapped else "nonH-H"

    def _low(self, x) -> bool:
        return x[0].rank <= self.bound and x[1].rank <= self.rank

    def _related(self, x, y):
        return self._low(x) and self._low(y) and related_fn(self.theta, x[1], y[1])

    def _key(self, x):
        return ("low", class_key_fn(self.theta, x[1])) if self._low(x) else None

    def summary(self):
        return f"{self.case} j={self.bound} k={self.rank} theta=({self.theta})"


@dataclass(frozen=True)
class ScalarH(PrincipalFmFn):
    """K' = lam K and L' H L without being a scalar multiple of L."""

    ranks: tuple[int, int] = (0, 0)
    hhat: frozenset = frozenset()

    @property
    def case(self):
        return "H-scalar" if self.swapped else "scalar-H"

    @property
    def scalars(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.hhat)

    def _related(self, x, y):
        (m, n), (m2, n2) = x, y
        i, j = self.ranks
        if m.rank > i:
            return False
        if n.rank == j:
            red = reduced(n, n2)
            return red is not None and any(
                m2 == m.scale(a) and (a, red) in self.hhat for a in range(1, m.p)
            )
        if n.rank < j and n2.rank < j:
            return any(m2 == m.scale(a) for a in self.scalars)
        return False

    def _key(self, x):
        m, n = x
        i, j = self.ranks
        if m.rank > i or n.rank > j:
            return None
        if n.rank == j:
            return ("cell", min((m.scale(a).rows, hclass_element(n, y).rows) for a, y in self.hhat))
        return ("below", min(m.scale(a).rows for a in self.scalars))

    def summary(self):
        return f"{self.case} ranks={self.ranks} |Hhat|={len(self.hhat)}"


@dataclass(frozen=True)
class BothHFmFn(PrincipalFmFn):
    """Both coordinates H-related and neither a scalar multiple."""

    ranks: tuple[int, int] = (0, 0)
    group: frozenset = frozenset()
    case = "H-H"

    @property
    def pi1(self):
        return frozenset(a for a, _ in self.group)

    @property
    def pi2(self):
        return frozenset(b for _, b in self.group)

    def _related(self, x, y):
        (m, n), (m2, n2) = x, y
        i, j = self.ranks
        if max(m.rank, m2.rank) > i or max(n.rank, n2.rank) > j:
            return False
        if m.rank < i and m2.rank < i and n.rank < j and n2.rank < j:
            return True
        if m.rank == m2.rank == i and n.rank < j and n2.rank < j:
            return reduced(m, m2) in self.pi1
        if m.rank < i and m2.rank < i and n.rank == n2.rank == j:
            return reduced(n, n2) in self.pi2
        if m.rank == m2.rank == i and n.rank == n2.rank == j:
            return (reduced(m, m2), reduced(n, n2)) in self.group
        return False

    def _key(self, x):
        m, n = x
        i, j = self.ranks
        if m.rank > i or n.rank > j:
            return None
        if m.rank < i and n.rank < j:
            return ("low",)
        if n.rank < j:
            return ("row", min(hclass_element(m, a).rows for a in self.pi1))
        if m.rank < i:
            return ("col", min(hclass_element(n, b).rows for b in self.pi2))
        return ("cell", min((hclass_element(m, a).rows, hclass_element(n, b).rows) for a, b in self.group))

    def summary(self):
        return f"{self.case} ranks={self.ranks} |H|={len(self.group)}"


def principal_fmfn(x: MatrixPair, y: MatrixPair) -> PrincipalFmFn:
    (k, l), (k2, l2) = x, y
    if k.n != k2.n or l.n != l2.n or len({k.p, l.p, k2.p, l2.p}) != 1:
        raise ValueError("generators lie in different products")
    pair = (x, y)
    kinds = (coordinate_kind(k, k2), coordinate_kind(l, l2))
    if kinds == ("scalar", "scalar"):
        units = (is_scalar_multiple(k2, k), is_scalar_multiple(l2, l))
        return ScalarScalar(pair, False, ranks=(k.rank, l.rank), units=units)
    if kinds == ("nonH", "nonH"):
        corners = tuple(sorted({(k.rank, l.rank), (k2.rank, l2.rank)}))
        return ReesFmFn(pair, False, corners=corners)
    if kinds[0] == "nonH":
        return OneSidedFmFn(pair, False, bound=max(k.rank, k2.rank), rank=l.rank, theta=principal_fn(l, l2))
    if kinds[1] == "nonH":
        return OneSidedFmFn(pair, True, bound=max(l.rank, l2.rank), rank=k.rank, theta=principal_fn(k, k2))
    if kinds == ("scalar", "H"):
        hhat = scalar_paired_closure(is_scalar_multiple(k2, k), reduced(l, l2))
        return ScalarH(pair, False, ranks=(k.rank, l.rank), hhat=hhat)
    if kinds == ("H", "scalar"):
        hhat = scalar_paired_closure(is_scalar_multiple(l2, l), reduced(k, k2))
        return ScalarH(pair, True, ranks=(l.rank, k.rank), hhat=hhat)
    return BothHFmFn(pair, False, ranks=(k.rank, l.rank), group=associated_normal_subgroup(x, y))

