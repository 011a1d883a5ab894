"""Brute-force congruence machinery on explicit multiplication tables.

Nothing here knows about transformations or matrices.  A monoid is any
object with ``elements()``, ``multiply(x, y)`` and ``identity()``; the
table built from it is all the closure and lattice code ever looks at.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol

from .config import LATTICE_SIZE_CAP, TABLE_SIZE_CAP, check_cap

Partition = tuple[int, ...]


class Monoid(Protocol):
    def elements(self) -> Sequence[Hashable]: ...
    def multiply(self, x: Any, y: Any) -> Any: ...
    def identity(self) -> Any: ...


@dataclass(frozen=True)
class ProductMonoid:
    """Direct product of two monoids with componentwise multiplication."""

    left: Monoid
    right: Monoid

    def elements(self) -> tuple[tuple[Any, Any], ...]:
        return tuple((a, b) for a in self.left.elements() for b in self.right.elements())

    def multiply(self, x, y):
        return (self.left.multiply(x[0], y[0]), self.right.multiply(x[1], y[1]))

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def __str__(self) -> str:
        return f"{self.left}x{self.right}"


@dataclass(frozen=True)
class FiniteMonoidTable:
    size: int
    rows: tuple[tuple[int, ...], ...]
    identity: int
    elements: tuple = field(default=(), compare=False, repr=False)
    index: dict = field(default_factory=dict, compare=False, repr=False)
    generators: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def check_associative(self, triples: Iterable[tuple[int, int, int]] | None = None) -> bool:
        r = self.rows
        if triples is None:
            n = range(self.size)
            triples = ((a, b, c) for a in n for b in n for c in n)
        return all(r[r[a][b]][c] == r[a][r[b][c]] for a, b, c in triples)

    def check_identity(self) -> bool:
        e = self.identity
        return all(self.rows[e][x] == x == self.rows[x][e] for x in range(self.size))


def _generating_set(rows: Sequence[Sequence[int]], identity: int) -> tuple[int, ...]:
    """A small monoid generating set, chosen greedily."""
    n = len(rows)
    reach = [len(set(rows[x])) + len({rows[y][x] for y in range(n)}) for x in range(n)]
    order = sorted(range(n), key=lambda x: (-reach[x], x))
    gens: list[int] = []
    generated = {identity}
    for x in order:
        if x in generated:
            continue
        gens.append(x)
        frontier = list(generated)
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = rows[y][g]
                    if z not in generated:
                        generated.add(z)
                        nxt.append(z)
            frontier = nxt
        if len(generated) == n:
            break
    return tuple(gens)


def table_from_rows(rows: Sequence[Sequence[int]], identity: int, elements: Sequence = ()) -> FiniteMonoidTable:
    rows = tuple(tuple(r) for r in rows)
    elements = tuple(elements)
    return FiniteMonoidTable(
        size=len(rows),
        rows=rows,
        identity=identity,
        elements=elements,
        index={e: i for i, e in enumerate(elements)},
        generators=_generating_set(rows, identity),
    )


def build_table(monoid: Monoid, cap: int = TABLE_SIZE_CAP) -> FiniteMonoidTable:
    elements = tuple(monoid.elements())
    check_cap(len(elements), cap, "monoid size")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements in monoid enumeration")
    rows = [[index[monoid.multiply(x, y)] for y in elements] for x in elements]
    table = table_from_rows(rows, index[monoid.identity()], elements)
    if table.size <= 300 and not table.check_associative():
        raise ValueError("multiplication is not associative")
    return table


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True

    def labels(self) -> Partition:
        return canonical([self.find(x) for x in range(len(self.parent))])


def canonical(labels: Sequence[Hashable]) -> Partition:
    """Relabel blocks by order of first appearance."""
    seen: dict[Hashable, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


def congruence_closure(
    table: FiniteMonoidTable, pairs: Iterable[tuple[int, int]], start: Partition | None = None
) -> Partition:
    """Least congruence containing ``pairs`` (and ``start``, when given)."""
    uf = _UnionFind(table.size)
    pending: list[tuple[int, int]] = []
    if start is not None:
        first: dict[int, int] = {}
        for x, lab in enumerate(start):
            r = first.setdefault(lab, x)
            if r != x:
                uf.union(r, x)
    for a, b in sorted(pairs):
        if uf.union(a, b):
            pending.append((a, b))
    rows = table.rows
    gens = table.generators
    while pending:
        a, b = pending.pop()
        ra, rb = rows[a], rows[b]
        for g in gens:
            if uf.union(ra[g], rb[g]):
                pending.append((ra[g], rb[g]))
            ga, gb = rows[g][a], rows[g][b]
            if uf.union(ga, gb):
                pending.append((ga, gb))
    return uf.labels()


def partition_pairs(partition: Partition) -> list[tuple[int, int]]:
    """Spanning pairs: each element paired with the first member of its block."""
    first: dict[int, int] = {}
    out = []
    for x, lab in enumerate(partition):
        r = first.setdefault(lab, x)
        if r != x:
            out.append((r, x))
    return out


def join(p: Partition, q: Partition) -> Partition:
    uf = _UnionFind(len(p))
    for part in (p, q):
        for a, b in partition_pairs(part):
            uf.union(a, b)
    return uf.labels()


def refines(p: Partition, q: Partition) -> bool:
    """True when every block of p lies inside a block of q."""
    image: dict[int, int] = {}
    return all(image.setdefault(a, b) == b for a, b in zip(p, q))


def is_congruence(table: FiniteMonoidTable, partition: Partition) -> bool:
    """Compatibility check against every element, not just the generators."""
    rows = table.rows
    n = range(table.size)
    for a, b in partition_pairs(partition):
        for s in n:
            if partition[rows[a][s]] != partition[rows[b][s]]:
                return False
            if partition[rows[s][a]] != partition[rows[s][b]]:
                return False
    return True


def principal_congruences(table: FiniteMonoidTable) -> dict[tuple[int, int], Partition]:
    return {
        (a, b): congruence_closure(table, [(a, b)])
        for a in range(table.size)
        for b in range(a + 1, table.size)
    }


def all_congruences(table: FiniteMonoidTable, cap: int = LATTICE_SIZE_CAP) -> set[Partition]:
    """The whole congruence lattice, as joins of principal congruences."""
    check_cap(table.size, cap, "monoid size for lattice enumeration")
    identity = tuple(range(table.size))
    principals = sorted(set(principal_congruences(table).values()))
    lattice = {identity, *principals}
    frontier = list(lattice)
    while frontier:
        nxt = []
        for p in frontier:
            for q in principals:
                j = join(p, q)
                if j not in lattice:
                    lattice.add(j)
                    nxt.append(j)
        frontier = nxt
    return lattice


def partition_from_predicate(elements: Sequence, related: Callable[[Any, Any], bool]) -> Partition:
    """Blocks of an equivalence given as a predicate, matched against block representatives."""
    reps: list[int] = []
    labels = []
    for x, e in enumerate(elements):
        for lab, r in enumerate(reps):
            if related(elements[r], e):
                labels.append(lab)
                break
        else:
            labels.append(len(reps))
            reps.append(x)
    return tuple(labels)


def partition_from_key(elements: Sequence, key: Callable[[Any], Hashable]) -> Partition:
    return canonical([key(e) for e in elements])


def predicate_matches(
    elements: Sequence, related: Callable[[Any, Any], bool], partition: Partition
) -> tuple[int, int] | None:
    """Compare a predicate with a partition on every ordered pair.

    Returns the first disagreeing index pair, or None.
    """
    n = len(elements)
    for x in range(n):
        ex, px = elements[x], partition[x]
        for y in range(n):
            if related(ex, elements[y]) != (px == partition[y]):
                return (x, y)
    return None


def blocks(partition: Partition) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for x, lab in enumerate(partition):
        out.setdefault(lab, []).append(x)
    return list(out.values())


def table_to_json(table: FiniteMonoidTable) -> str:
    return json.dumps({"size": table.size, "identity": table.identity, "rows": table.rows})


def table_from_json(text: str) -> FiniteMonoidTable:
    data = json.loads(text)
    rows = data["rows"]
    if len(rows) != data["size"] or any(len(r) != data["size"] for r in rows):
        raise ValueError("table rows do not match the declared size")
    return table_from_rows(rows, data["identity"])


def partition_to_json(partition: Partition) -> str:
    return json.dumps({"blocks": blocks(partition)})


def partition_from_json(text: str) -> Partition:
    data = json.loads(text)
    labels: dict[int, int] = {}
    for lab, block in enumerate(data["blocks"]):
        for x in block:
            if x in labels:
                raise ValueError(f"element {x} appears in two blocks")
            labels[x] = lab
    if sorted(labels) != list(range(len(labels))):
        raise ValueError("blocks do not cover 0..N-1")
    return canonical([labels[x] for x in range(len(labels))])
