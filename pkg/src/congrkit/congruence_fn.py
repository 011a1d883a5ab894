"""Congruences on the full matrix monoid F_n over GF(p).

A non-universal congruence is given by a level mu, a normal subgroup gbar
of GL(mu) and a descending chain of subgroups of the unit group for the
ranks above mu:

* ranks below mu form one class;
* at rank mu, B ~ A iff B reduces (relative to A) into gbar;
* at rank i > mu, B ~ A iff B = lam * A with lam in the chain entry for i.

Level 1 adds nothing over level 0 (GL(1) is the unit group itself), so it
is folded into level 0 and the parameter tuples stay in bijection with the
congruences.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cache

from .groups import normal_closure, normal_subgroups_by_closure
from .matrices import (
    Matrix,
    MatrixMonoid,
    general_linear,
    h_related_matrix,
    hclass_translates,
    identity_matrix,
    inverse,
    is_scalar_multiple,
    kernel_space,
    matmul,
    parse_matrix,
    reduced,
    rref,
    scalar_matrices,
    unit_subgroup_generated,
    unit_subgroups,
)

UnitGroup = frozenset[int]


@dataclass(frozen=True)
class CongruenceFn:
    p: int
    n: int
    mu: int = 0
    gbar: frozenset[Matrix] = frozenset()
    chain: tuple[UnitGroup, ...] = ()
    universal: bool = False

    def __post_init__(self):
        if self.universal:
            return
        if not 0 <= self.mu <= self.n:
            raise ValueError(f"mu={self.mu} out of range for F{self.n}")
        if self.mu == 1:
            raise ValueError("level 1 is written as level 0 with chain[0] = gbar")
        if len(self.chain) != self.n - self.mu:
            raise ValueError(f"chain needs {self.n - self.mu} entries")
        gl = frozenset(general_linear(self.p, self.mu))
        if not self.gbar or not self.gbar <= gl:
            raise ValueError("gbar must be a subgroup of GL(mu)")
        if any(not b <= a for a, b in zip(self.chain, self.chain[1:])):
            raise ValueError("chain must descend")
        if self.mu and self.chain and not scalar_matrices(self.p, self.mu, self.chain[0]) <= self.gbar:
            raise ValueError("scalars of the first chain entry must lie in gbar")

    @classmethod
    def identity(cls, p: int, n: int) -> CongruenceFn:
        return cls.scalar(p, n, {})

    @classmethod
    def scalar(cls, p: int, n: int, groups: dict[int, UnitGroup]) -> CongruenceFn:
        """Level 0 with the given unit groups per rank (trivial if absent)."""
        chain = tuple(frozenset(groups.get(i, {1})) for i in range(1, n + 1))
        return cls(p, n, 0, frozenset(general_linear(p, 0)), chain)

    @classmethod
    def rees(cls, p: int, n: int, bound: int) -> CongruenceFn:
        """Rees congruence of the ideal of matrices with rank at most ``bound``."""
        if bound >= n:
            return cls.make_universal(p, n)
        if bound == 0:
            return cls.identity(p, n)
        mu = bound + 1
        return cls(p, n, mu, frozenset({identity_matrix(p, mu)}), tuple(frozenset({1}) for _ in range(n - mu)))

    @classmethod
    def make_universal(cls, p: int, n: int) -> CongruenceFn:
        return cls(p, n, universal=True)

    def chain_at(self, rank: int) -> UnitGroup:
        return self.chain[rank - self.mu - 1]

    @property
    def is_identity(self) -> bool:
        return not self.universal and self.mu == 0 and all(g == {1} for g in self.chain)

    def __str__(self) -> str:
        if self.universal:
            return "universal"
        gens = ",".join(str(min(g - {1}, default=1)) for g in self.chain)
        return f"mu={self.mu} |Gbar|={len(self.gbar)} chain=[{gens}]"

    def to_dict(self) -> dict:
        if self.universal:
            return {"universal": True, "p": self.p, "n": self.n}
        return {
            "p": self.p,
            "n": self.n,
            "mu": self.mu,
            "Gbar": sorted(str(g) for g in self.gbar),
            "chain": [_unit_generator(self.p, g) for g in self.chain],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CongruenceFn:
        p, n = data["p"], data["n"]
        if data.get("universal"):
            return cls.make_universal(p, n)
        mu = data["mu"]
        gbar = frozenset(parse_matrix(t, p) if mu else Matrix(p, ()) for t in data["Gbar"])
        chain = tuple(unit_subgroup_generated(p, g) for g in data["chain"])
        return cls(p, n, mu, gbar, chain)


def _unit_generator(p: int, group: UnitGroup) -> int:
    return next(g for g in sorted(group) if unit_subgroup_generated(p, g) == group)


def congruence_fn_to_json(theta: CongruenceFn) -> str:
    return json.dumps(theta.to_dict())


def congruence_fn_from_json(text: str) -> CongruenceFn:
    return CongruenceFn.from_dict(json.loads(text))


def related_fn(theta: CongruenceFn, a: Matrix, b: Matrix) -> bool:
    if a.p != theta.p or b.p != theta.p or a.n != theta.n or b.n != theta.n:
        raise ValueError(f"matrices are not in F{theta.n}@GF({theta.p})")
    if theta.universal or a == b:
        return True
    mu = theta.mu
    if a.rank < mu and b.rank < mu:
        return True
    if a.rank == b.rank == mu:
        red = reduced(a, b)
        return red is not None and red in theta.gbar
    if a.rank == b.rank > mu:
        lam = is_scalar_multiple(b, a)
        return lam is not None and lam in theta.chain_at(a.rank)
    return False


def class_key_fn(theta: CongruenceFn, a: Matrix):
    """A value shared by exactly the matrices in a's class."""
    if theta.universal:
        return ("all",)
    if a.rank < theta.mu:
        return ("low",)
    if a.rank == theta.mu:
        return ("coset", min(m.rows for m in hclass_translates(a, theta.gbar)))
    return ("scalar", min(a.scale(x).rows for x in theta.chain_at(a.rank)))


@cache
def gl_normal_closure(p: int, r: int, gens: frozenset[Matrix]) -> frozenset[Matrix]:
    gl = general_linear(p, r)
    return normal_closure(gens, gl, matmul, inverse, identity_matrix(p, r))


def principal_fn(a: Matrix, b: Matrix) -> CongruenceFn:
    if a.p != b.p or a.n != b.n:
        raise ValueError("matrices from different monoids")
    p, n = a.p, a.n
    lam = is_scalar_multiple(b, a)
    if lam is not None:
        g = unit_subgroup_generated(p, lam)
        return CongruenceFn.scalar(p, n, {i: g for i in range(1, a.rank + 1)})
    if h_related_matrix(a, b):
        # rank >= 2 here: H-classes of rank 1 consist of scalar multiples
        mu = a.rank
        gbar = gl_normal_closure(p, mu, frozenset({reduced(a, b)}))
        return CongruenceFn(p, n, mu, gbar, tuple(frozenset({1}) for _ in range(n - mu)))
    return CongruenceFn.rees(p, n, max(a.rank, b.rank))


@cache
def gl_normal_subgroups(p: int, r: int) -> tuple[frozenset[Matrix], ...]:
    gl = general_linear(p, r)
    return tuple(normal_subgroups_by_closure(gl, matmul, inverse, identity_matrix(p, r)))


def _chains(p: int, length: int, top: UnitGroup | None):
    """Descending chains of unit subgroups, each contained in ``top``."""
    if length == 0:
        yield ()
        return
    for g in unit_subgroups(p):
        if top is None or g <= top:
            for rest in _chains(p, length - 1, g):
                yield (g,) + rest


def enumerate_congruences_fn(p: int, n: int) -> list[CongruenceFn]:
    """All admissible parameter tuples, one per congruence, plus the universal one."""
    out = [CongruenceFn(p, n, 0, frozenset(general_linear(p, 0)), c) for c in _chains(p, n, None)]
    for mu in range(2, n + 1):
        for gbar in gl_normal_subgroups(p, mu):
            top = frozenset(x for x in range(1, p) if scalar_matrices(p, mu, {x}) <= gbar)
            out.extend(CongruenceFn(p, n, mu, gbar, c) for c in _chains(p, n - mu, top))
    out.append(CongruenceFn.make_universal(p, n))
    return out


def hyperplanes(p: int, n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Bases of all (n-1)-dimensional subspaces, one per functional up to scaling."""
    out = set()
    for phi in itertools.product(range(p), repeat=n):
        if any(phi):
            out.add(kernel_space(Matrix(p, (phi,) + ((0,) * n,) * (n - 1))))
    return sorted(out)


def fixes_hyperplanes(a: Matrix) -> bool:
    """Does a map every (n-1)-dimensional subspace onto itself?"""
    p, n = a.p, a.n
    for basis in hyperplanes(p, n):
        moved = tuple(tuple(sum(r[k] * v[k] for k in range(n)) % p for r in a.rows) for v in basis)
        if rref(moved, p)[0] != basis:
            return False
    return True


def parse_matrix_pair(a: str, b: str, monoid: MatrixMonoid) -> tuple[Matrix, Matrix]:
    return monoid.parse_element(a), monoid.parse_element(b)
