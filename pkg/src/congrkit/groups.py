"""Normal subgroups of S_k and of S_i x S_k.

The classified forms below are what the rest of the package uses.  The
generic helpers at the bottom (conjugate-and-multiply closure, exhaustive
normal-subgroup search) work on any small explicit group and serve as the
independent check.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from functools import cache
from typing import TypeVar

from .config import GROUP_DEGREE_CAP, check_cap, degree_cap
from .permutations import Permutation, symmetric_group

E = TypeVar("E", bound=Hashable)

SK_KINDS = ("eps", "V4", "A", "S")
_RANK = {kind: r for r, kind in enumerate(SK_KINDS)}


@dataclass(frozen=True, slots=True)
class NormalSubgroupSk:
    degree: int
    kind: str

    def __post_init__(self):
        if self.kind not in SK_KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "V4" and self.degree != 4:
            raise ValueError("V4 only exists inside S_4")
        # A_1, A_2, S_0 and S_1 are trivial; store them as eps
        if (self.kind == "A" and self.degree < 3) or (self.kind == "S" and self.degree < 2):
            object.__setattr__(self, "kind", "eps")

    def __contains__(self, sigma: Permutation) -> bool:
        if sigma.degree != self.degree:
            return False
        if self.kind == "eps":
            return sigma.is_identity()
        if self.kind == "V4":
            return sigma.is_identity() or sigma.cycle_type() == (2, 2)
        if self.kind == "A":
            return sigma.is_even
        return True

    def __le__(self, other: NormalSubgroupSk) -> bool:
        # the normal subgroups of S_k form a chain
        return self.degree == other.degree and _RANK[self.kind] <= _RANK[other.kind]

    def __lt__(self, other: NormalSubgroupSk) -> bool:
        return self <= other and self != other

    @property
    def is_trivial(self) -> bool:
        return self.kind == "eps"

    def elements(self) -> frozenset[Permutation]:
        return _sk_elements(self)

    def order(self) -> int:
        return len(self.elements())

    def __str__(self) -> str:
        return self.kind


@cache
def _sk_elements(n: NormalSubgroupSk) -> frozenset[Permutation]:
    return frozenset(p for p in symmetric_group(n.degree) if p in n)


def normal_subgroups_sk(degree: int) -> list[NormalSubgroupSk]:
    """All normal subgroups of S_degree, smallest first."""
    kinds = ["eps"]
    if degree >= 2:
        kinds.append("S")
    if degree >= 3:
        kinds.insert(1, "A")
    if degree == 4:
        kinds.insert(1, "V4")
    return [NormalSubgroupSk(degree, k) for k in kinds]


def normal_closure_sk(k: int, sigma: Permutation) -> NormalSubgroupSk:
    if sigma.degree != k:
        raise ValueError(f"permutation of degree {sigma.degree} is not in S_{k}")
    if sigma.is_identity():
        return NormalSubgroupSk(k, "eps")
    if not sigma.is_even:
        return NormalSubgroupSk(k, "S")
    if k == 4 and sigma.cycle_type() == (2, 2):
        return NormalSubgroupSk(k, "V4")
    return NormalSubgroupSk(k, "A")


@dataclass(frozen=True, slots=True)
class NormalSubgroupProduct:
    """A normal subgroup of S_i x S_k.

    Either a direct product ``left x right`` or, when ``parity`` is set, the
    pairs whose components have equal sign.
    """

    degrees: tuple[int, int]
    left: NormalSubgroupSk | None = None
    right: NormalSubgroupSk | None = None
    parity: bool = False

    def __post_init__(self):
        i, k = self.degrees
        if self.parity:
            if i < 2 or k < 2:
                raise ValueError("the parity subgroup needs both degrees at least 2")
            if self.left is not None or self.right is not None:
                raise ValueError("the parity subgroup has no factors")
        else:
            if self.left is None or self.right is None:
                raise ValueError("product subgroup needs both factors")
            if (self.left.degree, self.right.degree) != (i, k):
                raise ValueError("factor degrees do not match")

    @classmethod
    def product(cls, left: NormalSubgroupSk, right: NormalSubgroupSk) -> NormalSubgroupProduct:
        return cls((left.degree, right.degree), left, right)

    @classmethod
    def parity_diagonal(cls, i: int, k: int) -> NormalSubgroupProduct:
        return cls((i, k), parity=True)

    @classmethod
    def trivial(cls, i: int, k: int) -> NormalSubgroupProduct:
        return cls.product(NormalSubgroupSk(i, "eps"), NormalSubgroupSk(k, "eps"))

    def __contains__(self, pair: tuple[Permutation, Permutation]) -> bool:
        a, b = pair
        if (a.degree, b.degree) != self.degrees:
            return False
        if self.parity:
            return a.is_even == b.is_even
        return a in self.left and b in self.right

    def pi1(self) -> NormalSubgroupSk:
        return NormalSubgroupSk(self.degrees[0], "S") if self.parity else self.left

    def pi2(self) -> NormalSubgroupSk:
        return NormalSubgroupSk(self.degrees[1], "S") if self.parity else self.right

    @property
    def is_trivial(self) -> bool:
        return not self.parity and self.left.is_trivial and self.right.is_trivial

    def __le__(self, other: NormalSubgroupProduct) -> bool:
        if self.degrees != other.degrees:
            return False
        if self.parity and other.parity:
            return True
        if self.parity:
            return other.left.kind == "S" and other.right.kind == "S"
        if other.parity:
            return self.left.kind in ("eps", "V4", "A") and self.right.kind in ("eps", "V4", "A")
        return self.left <= other.left and self.right <= other.right

    def elements(self) -> frozenset[tuple[Permutation, Permutation]]:
        return _product_elements(self)

    def order(self) -> int:
        return len(self.elements())

    def __str__(self) -> str:
        return "parity" if self.parity else f"{self.left}x{self.right}"


@cache
def _product_elements(n: NormalSubgroupProduct) -> frozenset[tuple[Permutation, Permutation]]:
    i, k = n.degrees
    return frozenset(
        (a, b) for a in symmetric_group(i) for b in symmetric_group(k) if (a, b) in n
    )


def normal_closure_product(
    i: int, k: int, pair: tuple[Permutation, Permutation]
) -> NormalSubgroupProduct:
    s1, s2 = pair
    if (s1.degree, s2.degree) != (i, k):
        raise ValueError("pair degrees do not match")
    if not s1.is_even and not s2.is_even:
        return NormalSubgroupProduct.parity_diagonal(i, k)
    return NormalSubgroupProduct.product(normal_closure_sk(i, s1), normal_closure_sk(k, s2))


def all_normal_subgroups_product(i: int, k: int, cap: int | None = None) -> list[NormalSubgroupProduct]:
    limit = degree_cap(GROUP_DEGREE_CAP, cap)
    check_cap(max(i, k), limit, "symmetric group degree")
    out = [
        NormalSubgroupProduct.product(a, b)
        for a in normal_subgroups_sk(i)
        for b in normal_subgroups_sk(k)
    ]
    if i >= 2 and k >= 2:
        out.append(NormalSubgroupProduct.parity_diagonal(i, k))
    return out


def parse_sk(text: str, degree: int) -> NormalSubgroupSk:
    text = text.strip()
    if text not in SK_KINDS:
        raise ValueError(f"bad subgroup literal {text!r}; expected one of {SK_KINDS}")
    return NormalSubgroupSk(degree, text)


# generic small-group helpers ------------------------------------------------


def direct_product_ops(
    mul1: Callable[[E, E], E], mul2: Callable[[E, E], E]
) -> Callable[[tuple, tuple], tuple]:
    return lambda x, y: (mul1(x[0], y[0]), mul2(x[1], y[1]))


def normal_closure(
    generators: Iterable[E],
    ambient: Sequence[E],
    mul: Callable[[E, E], E],
    inv: Callable[[E], E],
    identity: E,
) -> frozenset[E]:
    """Smallest subgroup of ``ambient`` that contains the generators and is
    closed under conjugation by ``ambient``."""
    conj_gens: set[E] = set()
    for g in generators:
        for x in ambient:
            conj_gens.add(mul(mul(inv(x), g), x))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in conj_gens:
                p = mul(h, g)
                if p not in group:
                    group.add(p)
                    nxt.append(p)
        frontier = nxt
    return frozenset(group)


def conjugacy_classes(
    ambient: Sequence[E], mul: Callable[[E, E], E], inv: Callable[[E], E]
) -> list[frozenset[E]]:
    seen: set[E] = set()
    classes = []
    for g in ambient:
        if g in seen:
            continue
        cls = frozenset(mul(mul(inv(x), g), x) for x in ambient)
        seen |= cls
        classes.append(cls)
    return classes


def exhaustive_normal_subgroups(
    ambient: Sequence[E], mul: Callable[[E, E], E], inv: Callable[[E], E], identity: E
) -> list[frozenset[E]]:
    """Every normal subgroup, found as unions of conjugacy classes closed under products."""
    classes = conjugacy_classes(ambient, mul, inv)
    trivial = next(c for c in classes if identity in c)
    others = [c for c in classes if c is not trivial]
    reps = [next(iter(c)) for c in others]
    order = len(ambient)
    found = []

    def closed(chosen: list[int], union: frozenset[E]) -> bool:
        return all(mul(reps[c], u) in union for c in chosen for u in union)

    def search(start: int, chosen: list[int], size: int):
        if order % size == 0:
            union = trivial.union(*(others[c] for c in chosen))
            if closed(chosen, union):
                found.append(union)
        for c in range(start, len(others)):
            if size + len(others[c]) <= order:
                chosen.append(c)
                search(c + 1, chosen, size + len(others[c]))
                chosen.pop()

    search(0, [], len(trivial))
    return found


def normal_subgroups_by_closure(
    ambient: Sequence[E], mul: Callable[[E, E], E], inv: Callable[[E], E], identity: E
) -> list[frozenset[E]]:
    """Every normal subgroup, as joins of normal closures of single classes.

    Much faster than the subset search when there are many classes.
    """
    classes = conjugacy_classes(ambient, mul, inv)
    basic = {normal_closure([next(iter(c))], ambient, mul, inv, identity) for c in classes}
    found = set(basic)
    frontier = list(basic)
    while frontier:
        nxt = []
        for a in frontier:
            for b in basic:
                if b <= a or a <= b:
                    continue
                j = normal_closure(a | b, ambient, mul, inv, identity)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=len)
