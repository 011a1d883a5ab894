"""Principal congruences on products Q_m x P_n of transformation monoids.

``principal_product`` sorts a generating pair into one of seven cases and
returns a description with an exact membership test (``related``) and a
class invariant (``key``).  Dual cases are handled by swapping coordinates
internally, so each concrete class only implements one orientation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from .congruence_qn import CongruenceQn, class_key, principal_qn, related_qn
from .groups import NormalSubgroupProduct, normal_closure_product
from .oracle import ProductMonoid
from .transformations import (
    MonoidFamily,
    Transformation,
    act,
    h_related,
    hclass_witness,
    parse_element,
    parse_family,
)

ProductElement = tuple[Transformation, Transformation]
CASES = ("identity", "eq-left", "eq-right", "nonH-nonH", "nonH-H", "H-nonH", "H-H")


def product_monoid(left: MonoidFamily, right: MonoidFamily) -> ProductMonoid:
    for fam in (left, right):
        if fam.family == "T" and fam.degree == 1:
            raise ValueError("T1 is trivial and is not allowed as a product factor")
    return ProductMonoid(left, right)


def parse_product(text: str) -> ProductMonoid:
    parts = text.strip().split("x")
    if len(parts) != 2:
        raise ValueError(f"bad product literal {text!r}; expected e.g. T2xT2 or PT3xI2")
    return product_monoid(parse_family(parts[0]), parse_family(parts[1]))


def parse_product_element(text: str, monoid: ProductMonoid) -> ProductElement:
    m = re.fullmatch(r"\s*\(\s*(\[[^\]]*\])\s*,\s*(\[[^\]]*\])\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad product element {text!r}; expected e.g. ([1,2],[2,1])")
    return parse_element(m.group(1), monoid.left), parse_element(m.group(2), monoid.right)


def format_product_element(x: ProductElement) -> str:
    return f"({x[0]},{x[1]})"


def swap(x: ProductElement) -> ProductElement:
    return (x[1], x[0])


@cache
def joint_orbit_min(a: Transformation, b: Transformation, group: NormalSubgroupProduct):
    return min((act(a, s).images, act(b, t).images) for s, t in group.elements())


def joint_witness_in(a, b, c, d, group: NormalSubgroupProduct) -> bool:
    s = hclass_witness(a, c)
    if s is None:
        return False
    t = hclass_witness(b, d)
    return t is not None and (s, t) in group


@dataclass(frozen=True)
class PrincipalProduct:
    """Base class; subclasses describe one orientation of one case."""

    families: tuple[MonoidFamily, MonoidFamily]
    pair: tuple[ProductElement, ProductElement]
    swapped: bool

    case = "?"

    def related(self, x: ProductElement, y: ProductElement) -> bool:
        if x == y:
            return True
        if self.swapped:
            x, y = swap(x), swap(y)
        return self._related(x, y)

    def key(self, x: ProductElement):
        return self._key(swap(x) if self.swapped else x)

    def _related(self, x, y) -> bool:
        raise NotImplementedError

    def _key(self, x):
        raise NotImplementedError

    def landscape(self):
        from .landscape import landscape_of_principal

        return landscape_of_principal(self)

    def summary(self) -> str:
        return self.case


@dataclass(frozen=True)
class IdentityProduct(PrincipalProduct):
    case = "identity"

    def _related(self, x, y):
        return False

    def _key(self, x):
        return x


@dataclass(frozen=True)
class EqualCoordinate(PrincipalProduct):
    """First coordinates of the generators coincide (after orientation)."""

    fixed: Transformation = None
    theta: CongruenceQn = None

    @property
    def case(self):
        return "eq-right" if self.swapped else "eq-left"

    def _related(self, x, y):
        (a, b), (c, d) = x, y
        return a == c and a.rank <= self.fixed.rank and related_qn(self.theta, b, d)

    def _key(self, x):
        a, b = x
        if a.rank <= self.fixed.rank:
            return (a.images, class_key(self.theta, b))
        return (a.images, b.images)

    def summary(self):
        return f"{self.case} rank={self.fixed.rank} theta={self.theta}"


@dataclass(frozen=True)
class ReesProduct(PrincipalProduct):
    """Rees congruence of the ideal I_i x I_k union I_j x I_l."""

    corners: tuple[tuple[int, int], ...] = ()
    case = "nonH-nonH"

    def in_ideal(self, x) -> bool:
        a, b = x
        return any(a.rank <= i and b.rank <= k for i, k in self.corners)

    def _related(self, x, y):
        return self.in_ideal(x) and self.in_ideal(y)

    def _key(self, x):
        return ("ideal",) if self.in_ideal(x) else x

    def summary(self):
        return f"{self.case} ideal=" + "+".join(f"I{i}xI{k}" for i, k in self.corners)


@dataclass(frozen=True)
class OneSidedH(PrincipalProduct):
    """First coordinates not H-related, second ones H-related and distinct."""

    bound: int = 0
    theta: CongruenceQn = None

    @property
    def case(self):
        return "H-nonH" if self.swapped else "nonH-H"

    def _low(self, x) -> bool:
        return x[0].rank <= self.bound and x[1].rank <= self.theta.k

    def _related(self, x, y):
        return self._low(x) and self._low(y) and related_qn(self.theta, x[1], y[1])

    def _key(self, x):
        if self._low(x):
            return ("low", class_key(self.theta, x[1]))
        return x

    def summary(self):
        return f"{self.case} j={self.bound} theta={self.theta}"


@dataclass(frozen=True)
class BothH(PrincipalProduct):
    """Both coordinates H-related and distinct, with joint normal subgroup N."""

    ranks: tuple[int, int] = (0, 0)
    group: NormalSubgroupProduct = None
    case = "H-H"

    def _related(self, x, y):
        (a, b), (c, d) = x, y
        i, k = self.ranks
        ra, rb, rc, rd = a.rank, b.rank, c.rank, d.rank
        if max(ra, rc) > i or max(rb, rd) > k:
            return False
        if ra < i and rc < i and rb < k and rd < k:
            return True
        if ra == rc == i and rb < k and rd < k:
            s = hclass_witness(a, c)
            return s is not None and s in self.group.pi1()
        if ra < i and rc < i and rb == rd == k:
            t = hclass_witness(b, d)
            return t is not None and t in self.group.pi2()
        if ra == rc == i and rb == rd == k:
            return joint_witness_in(a, b, c, d, self.group)
        return False

    def _key(self, x):
        a, b = x
        i, k = self.ranks
        if a.rank > i or b.rank > k:
            return x
        if a.rank < i and b.rank < k:
            return ("low",)
        if b.rank < k:
            return ("row", class_key(CongruenceQn(a.family, i, self.group.pi1()), a))
        if a.rank < i:
            return ("col", class_key(CongruenceQn(b.family, k, self.group.pi2()), b))
        return ("cell", joint_orbit_min(a, b, self.group))

    def summary(self):
        return f"{self.case} ranks={self.ranks} N={self.group}"


def principal_product(x: ProductElement, y: ProductElement) -> PrincipalProduct:
    (f, g), (f2, g2) = x, y
    if f.family != f2.family or g.family != g2.family:
        raise ValueError("generators lie in different products")
    families = (f.family, g.family)
    pair = (x, y)
    if x == y:
        return IdentityProduct(families, pair, False)
    if f == f2:
        return EqualCoordinate(families, pair, False, fixed=f, theta=principal_qn(g, g2))
    if g == g2:
        return EqualCoordinate(families, pair, True, fixed=g, theta=principal_qn(f, f2))
    hf, hg = h_related(f, f2), h_related(g, g2)
    if not hf and not hg:
        corners = tuple(sorted({(f.rank, g.rank), (f2.rank, g2.rank)}))
        return ReesProduct(families, pair, False, corners=corners)
    if not hf:
        return OneSidedH(families, pair, False, bound=max(f.rank, f2.rank), theta=principal_qn(g, g2))
    if not hg:
        return OneSidedH(families, pair, True, bound=max(g.rank, g2.rank), theta=principal_qn(f, f2))
    i, k = f.rank, g.rank
    group = normal_closure_product(i, k, (hclass_witness(f, f2), hclass_witness(g, g2)))
    return BothH(families, pair, False, ranks=(i, k), group=group)


def alternative_equal_related(desc: EqualCoordinate, x: ProductElement, y: ProductElement) -> bool:
    """Alternative reading of the equal-coordinate case.

    In the H-related branch this variant drops the rank bound on the fixed
    coordinate.  It is kept only as a diagnostic; ``desc.related`` is the
    relation actually generated by the pair.
    """
    if x == y:
        return True
    if desc.swapped:
        x, y = swap(x), swap(y)
    (a, b), (c, d) = x, y
    theta, r = desc.theta, desc.fixed.rank
    if a != c:
        return False
    if theta.is_universal or theta.group.is_trivial:
        return a.rank <= r and related_qn(theta, b, d)
    k = theta.k
    if b.rank == d.rank == k:
        return related_qn(theta, b, d)
    return a.rank <= r and b.rank < k and d.rank < k


def theta_slice(related, fixed: Transformation, elements) -> set[tuple[Transformation, Transformation]]:
    """Pairs (g, g') of second coordinates with (fixed, g) related to (fixed, g')."""
    return {(g, h) for g in elements for h in elements if related((fixed, g), (fixed, h))}
