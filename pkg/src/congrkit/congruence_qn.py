"""Congruences on a single monoid T_n, PT_n or I_n.

Every congruence is either universal or ``theta(k, N)``: identity on ranks
above k, one class below rank k, and on rank k two H-related elements are
related exactly when their witness permutation lies in N.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from .groups import NormalSubgroupSk, normal_closure_sk, normal_subgroups_sk, parse_sk
from .transformations import MonoidFamily, Transformation, act, h_related, hclass_witness


@dataclass(frozen=True, slots=True)
class CongruenceQn:
    family: MonoidFamily
    k: int | None = None
    group: NormalSubgroupSk | None = None

    def __post_init__(self):
        if self.k is None:
            if self.group is not None:
                raise ValueError("the universal congruence carries no group")
            return
        if not 1 <= self.k <= self.family.degree:
            raise ValueError(f"k={self.k} out of range for {self.family}")
        if self.group is None or self.group.degree != self.k:
            raise ValueError(f"theta({self.k}, N) needs N inside S_{self.k}")

    @classmethod
    def universal(cls, family: MonoidFamily) -> CongruenceQn:
        return cls(family)

    @classmethod
    def theta(cls, family: MonoidFamily, k: int, kind: str = "eps") -> CongruenceQn:
        return cls(family, k, NormalSubgroupSk(k, kind))

    @classmethod
    def identity(cls, family: MonoidFamily) -> CongruenceQn:
        return cls.theta(family, 1)

    @classmethod
    def rees(cls, family: MonoidFamily, bound: int) -> CongruenceQn:
        """Rees congruence of the ideal of elements with rank at most ``bound``."""
        if bound >= family.degree:
            return cls.universal(family)
        return cls.theta(family, bound + 1)

    @property
    def is_universal(self) -> bool:
        return self.k is None

    @property
    def is_identity(self) -> bool:
        return self.k == 1

    def __str__(self) -> str:
        if self.k is None:
            return "universal"
        if self.k == 1:
            return "iota"
        return f"theta({self.k},{self.group})"

    def __contains__(self, pair: tuple[Transformation, Transformation]) -> bool:
        return related_qn(self, *pair)

    def chain_key(self) -> tuple[int, int]:
        """Position in the chain; smaller keys are finer congruences."""
        if self.k is None:
            return (self.family.degree + 1, 0)
        return (self.k, normal_subgroups_sk(self.k).index(self.group))

    def __le__(self, other: CongruenceQn) -> bool:
        return self.family == other.family and self.chain_key() <= other.chain_key()


def related_qn(theta: CongruenceQn, f: Transformation, g: Transformation) -> bool:
    if f.family != theta.family or g.family != theta.family:
        raise ValueError(f"elements are not in {theta.family}")
    if theta.k is None or f == g:
        return True
    k = theta.k
    if f.rank < k and g.rank < k:
        return True
    if f.rank == k and g.rank == k and h_related(f, g):
        return hclass_witness(f, g) in theta.group
    return False


def principal_qn(f: Transformation, g: Transformation) -> CongruenceQn:
    if f.family != g.family:
        raise ValueError("elements from different monoids")
    family = f.family
    if f == g:
        return CongruenceQn.identity(family)
    sigma = hclass_witness(f, g)
    if sigma is not None:
        return CongruenceQn(family, g.rank, normal_closure_sk(g.rank, sigma))
    return CongruenceQn.rees(family, max(f.rank, g.rank))


def congruence_chain(family: MonoidFamily) -> list[CongruenceQn]:
    if family.degree < 2:
        raise ValueError("the chain is defined for degree at least 2")
    chain = [CongruenceQn.identity(family)]
    for k in range(2, family.degree + 1):
        chain.extend(CongruenceQn(family, k, n) for n in normal_subgroups_sk(k))
    chain.append(CongruenceQn.universal(family))
    return chain


def parse_congruence_qn(text: str, family: MonoidFamily) -> CongruenceQn:
    text = text.strip()
    if text == "universal":
        return CongruenceQn.universal(family)
    if text == "iota":
        return CongruenceQn.identity(family)
    m = re.fullmatch(r"theta\(\s*(\d+)\s*,\s*(\w+)\s*\)", text)
    if not m:
        raise ValueError(f"bad congruence literal {text!r}; expected theta(k,N), universal or iota")
    k = int(m.group(1))
    return CongruenceQn(family, k, parse_sk(m.group(2), k))


def class_key(theta: CongruenceQn, f: Transformation):
    """A value shared by exactly the elements of f's class."""
    if theta.k is None:
        return ("all",)
    if f.rank < theta.k:
        return ("low",)
    if f.rank > theta.k or theta.group.is_trivial:
        return ("one", f.images)
    return ("orbit", orbit_min(f, theta.group))


@cache
def orbit_min(f: Transformation, group) -> tuple[int, ...]:
    """Smallest image tuple in the orbit of f under a subgroup of S_|f|."""
    return min(act(f, sigma).images for sigma in group.elements())
