"""Dlock landscapes: the canonical form of a congruence on Q_m x P_n.

The grid cell (i, j) stands for the D-class of pairs with ranks (i, j).  A
landscape partitions the grid into typed parts; each type letter pair is
drawn from F, H and e (for epsilon).  Part groups are

* ``None`` for FF,
* a normal subgroup of S_i for HF and eF (row parts),
* a normal subgroup of S_j for FH and Fe (column parts),
* a normal subgroup of S_i x S_j for the single-cell types HH, eH, He, ee.
"""

from __future__ import annotations

import json
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .config import PRODUCT_DEGREE_CAP, check_cap, degree_cap
from .congruence_qn import orbit_min
from .groups import (
    NormalSubgroupProduct,
    NormalSubgroupSk,
    all_normal_subgroups_product,
    normal_subgroups_sk,
    parse_sk,
)
from .oracle import Partition, _UnionFind
from .permutations import Permutation
from .product import (
    BothH,
    EqualCoordinate,
    IdentityProduct,
    OneSidedH,
    PrincipalProduct,
    ProductElement,
    ReesProduct,
    joint_orbit_min,
    joint_witness_in,
)
from .transformations import MonoidFamily, hclass_witness, parse_family

Cell = tuple[int, int]
TYPES = ("FF", "HF", "eF", "FH", "Fe", "HH", "eH", "He", "ee")
ROW_TYPES = ("HF", "eF")
COL_TYPES = ("FH", "Fe")
CELL_TYPES = ("HH", "eH", "He", "ee")
_TRANSPOSED = {"FF": "FF", "HF": "FH", "eF": "Fe", "FH": "HF", "Fe": "eF",
               "HH": "HH", "eH": "He", "He": "eH", "ee": "ee"}

Group = NormalSubgroupSk | NormalSubgroupProduct | None


@dataclass(frozen=True)
class DlockPart:
    cells: tuple[Cell, ...]
    dtype: str
    group: Group = None

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(sorted(set(self.cells))))
        if self.dtype not in TYPES:
            raise ValueError(f"unknown dlock type {self.dtype!r}")

    def __str__(self) -> str:
        return self.dtype if self.group is None else f"{self.dtype}({group_text(self.group)})"


@dataclass(frozen=True)
class DlockLandscape:
    families: tuple[MonoidFamily, MonoidFamily]
    parts: tuple[DlockPart, ...]
    _where: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lambda p: (p.cells[0], p.dtype)))
        object.__setattr__(self, "parts", parts)
        for idx, part in enumerate(parts):
            for cell in part.cells:
                self._where.setdefault(cell, idx)

    def __hash__(self) -> int:
        return hash((self.families, self.parts))

    @property
    def rows(self) -> range:
        return self.families[0].ranks()

    @property
    def cols(self) -> range:
        return self.families[1].ranks()

    def grid(self) -> list[Cell]:
        return [(i, j) for i in self.rows for j in self.cols]

    def part_index(self, cell: Cell) -> int:
        return self._where[cell]

    def part_at(self, cell: Cell) -> DlockPart:
        return self.parts[self._where[cell]]

    def transpose(self) -> DlockLandscape:
        return DlockLandscape(
            (self.families[1], self.families[0]),
            tuple(
                DlockPart(tuple((j, i) for i, j in p.cells), _TRANSPOSED[p.dtype], _transpose_group(p.group))
                for p in self.parts
            ),
        )

    def related(self, x: ProductElement, y: ProductElement) -> bool:
        return related_landscape(self, x, y)

    def key(self, x: ProductElement):
        return landscape_key(self, x)


def _transpose_group(group: Group) -> Group:
    if isinstance(group, NormalSubgroupProduct):
        i, k = group.degrees
        if group.parity:
            return NormalSubgroupProduct.parity_diagonal(k, i)
        return NormalSubgroupProduct.product(group.right, group.left)
    return group


def _cell(x: ProductElement) -> Cell:
    return (x[0].rank, x[1].rank)


def related_landscape(land: DlockLandscape, x: ProductElement, y: ProductElement) -> bool:
    if x == y:
        return True
    cx, cy = _cell(x), _cell(y)
    if land.part_index(cx) != land.part_index(cy):
        return False
    part = land.part_at(cx)
    (a, b), (c, d) = x, y
    t = part.dtype
    if t == "FF":
        return True
    if t in ROW_TYPES:
        s = hclass_witness(a, c)
        return s is not None and s in part.group
    if t in COL_TYPES:
        s = hclass_witness(b, d)
        return s is not None and s in part.group
    return joint_witness_in(a, b, c, d, part.group)


def landscape_key(land: DlockLandscape, x: ProductElement):
    idx = land.part_index(_cell(x))
    part = land.parts[idx]
    a, b = x
    t = part.dtype
    if t == "FF":
        return (idx,)
    if t in ROW_TYPES:
        return (idx, orbit_min(a, part.group))
    if t in COL_TYPES:
        return (idx, orbit_min(b, part.group))
    return (idx, joint_orbit_min(a, b, part.group))


# validation -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: int
    part: DlockPart | None
    message: str

    def __str__(self) -> str:
        where = f" [{self.part.dtype} at {list(self.part.cells)}]" if self.part else ""
        return f"condition {self.condition}: {self.message}{where}"


def _row_segment(cells: Sequence[Cell], z2: int) -> tuple[int, int] | None:
    rows = {i for i, _ in cells}
    if len(rows) != 1:
        return None
    i = rows.pop()
    j = max(c for _, c in cells)
    return (i, j) if list(cells) == [(i, c) for c in range(z2, j + 1)] else None


def _col_segment(cells: Sequence[Cell], z1: int) -> tuple[int, int] | None:
    seg = _row_segment(sorted((j, i) for i, j in cells), z1)
    return None if seg is None else (seg[1], seg[0])


def _downward_closed(cells: set[Cell], z1: int, z2: int) -> bool:
    return all(
        (a, b) in cells for i, j in cells for a in range(z1, i + 1) for b in range(z2, j + 1)
    )


def _ff_exception(cells: set[Cell], z1: int, z2: int) -> bool:
    """Ideal shapes whose class is constant in one coordinate."""
    return (z1 == 0 and all(i == 0 for i, _ in cells)) or (z2 == 0 and all(j == 0 for _, j in cells))


def validate_landscape(land: DlockLandscape) -> list[Violation]:
    out: list[Violation] = []
    z1, z2 = land.families[0].rank_floor(), land.families[1].rank_floor()
    grid = set(land.grid())
    seen: dict[Cell, int] = {}
    for idx, part in enumerate(land.parts):
        if not part.cells:
            out.append(Violation(0, part, "empty part"))
        for cell in part.cells:
            if cell not in grid:
                out.append(Violation(0, part, f"cell {cell} outside the grid"))
            elif cell in seen:
                out.append(Violation(0, part, f"cell {cell} covered twice"))
            seen[cell] = idx
    if set(seen) != grid:
        out.append(Violation(0, None, f"cells not covered: {sorted(grid - set(seen))}"))
    if out:
        return out

    def part_at(cell):
        return land.parts[seen[cell]]

    by_type: dict[str, list[DlockPart]] = {t: [] for t in TYPES}
    for part in land.parts:
        by_type[part.dtype].append(part)

    # (1)
    ff = by_type["FF"]
    if len(ff) > 1:
        out.append(Violation(1, ff[1], "more than one FF part"))
    for part in ff:
        cells = set(part.cells)
        if part.group is not None:
            out.append(Violation(1, part, "FF parts carry no group"))
        if not _downward_closed(cells, z1, z2):
            out.append(Violation(1, part, "FF part is not downward closed"))
        elif _ff_exception(cells, z1, z2):
            out.append(Violation(1, part, "FF part is constant in one coordinate"))
    ff_cells = set(ff[0].cells) if ff else set()

    # (2), (3)
    for cond, types, seg_of, axis in ((2, ROW_TYPES, lambda c: _row_segment(c, z2), 0),
                                      (3, COL_TYPES, lambda c: _col_segment(c, z1), 1)):
        for part in by_type[types[0]] + by_type[types[1]]:
            seg = seg_of(part.cells)
            if seg is None:
                out.append(Violation(cond, part, "not an initial segment of a single line"))
                continue
            line, length = seg if axis == 0 else (seg[1], seg[0])
            if length < 1:
                out.append(Violation(cond, part, "segment must reach rank 1"))
            g = part.group
            if not isinstance(g, NormalSubgroupSk) or g.degree != line:
                out.append(Violation(cond, part, f"group must be a normal subgroup of S_{line}"))
                continue
            if part.dtype in ("HF", "FH"):
                if line < 2 or g.is_trivial:
                    out.append(Violation(cond, part, "H-type segment needs rank >= 2 and a nontrivial group"))
            elif not g.is_trivial:
                out.append(Violation(cond, part, "epsilon-type segment needs the trivial group"))

    # (4), (5)
    for cond, t, seg_of, below in ((4, "HF", lambda c: _row_segment(c, z2),
                                    lambda i, j: {(a, b) for a in range(z1, i) for b in range(z2, j + 1)}),
                                   (5, "FH", lambda c: _col_segment(c, z1),
                                    lambda i, j: {(a, b) for a in range(z1, i + 1) for b in range(z2, j)})):
        if len(by_type[t]) > 1:
            out.append(Violation(cond, by_type[t][1], f"more than one {t} part"))
        for part in by_type[t]:
            seg = seg_of(part.cells)
            if seg is None:
                continue
            if not ff or not below(*seg) <= ff_cells:
                out.append(Violation(cond, part, "not supported by the FF part"))

    # (6), (7)
    for cond, t, seg_of, support, neighbour in (
        (6, "eF", lambda c: _row_segment(c, z2), "HF", lambda line, length: [(line - 1, b) for b in range(z2, length + 1)]),
        (7, "Fe", lambda c: _col_segment(c, z1), "FH", lambda line, length: [(a, line - 1) for a in range(z1, length + 1)]),
    ):
        segs = []
        for part in by_type[t]:
            seg = seg_of(part.cells)
            if seg is not None:
                segs.append((seg[0], seg[1]) if cond == 6 else (seg[1], seg[0]))
        if not segs:
            continue
        segs.sort()
        lines = [s[0] for s in segs]
        if lines != list(range(lines[0], lines[0] + len(lines))):
            out.append(Violation(cond, by_type[t][0], "epsilon segments are not on consecutive lines"))
        lengths = [s[1] for s in segs]
        if any(x < y for x, y in zip(lengths, lengths[1:])):
            out.append(Violation(cond, by_type[t][0], "epsilon segment lengths increase"))
        floor = z1 if cond == 6 else z2
        first, length = segs[0]
        if first > floor:
            cells = neighbour(first, length)
            owners = {seen[c] for c in cells}
            owner = land.parts[owners.pop()] if len(owners) == 1 else None
            if owner is None or owner.dtype not in ("FF", support):
                out.append(Violation(cond, by_type[t][0], f"lowest epsilon segment not resting on FF or {support}"))

    # (8)
    for t in CELL_TYPES:
        for part in by_type[t]:
            if len(part.cells) != 1:
                out.append(Violation(8, part, "single-cell type spans several cells"))
                continue
            i, j = part.cells[0]
            g = part.group
            if not isinstance(g, NormalSubgroupProduct) or g.degrees != (i, j):
                out.append(Violation(8, part, f"group must be a normal subgroup of S_{i} x S_{j}"))
                continue
            ok = {
                "HH": i >= 2 and j >= 2 and not g.pi1().is_trivial and not g.pi2().is_trivial,
                "eH": j >= 2 and not g.parity and g.left.is_trivial and not g.right.is_trivial,
                "He": i >= 2 and not g.parity and g.right.is_trivial and not g.left.is_trivial,
                "ee": g.is_trivial,
            }[t]
            if not ok:
                out.append(Violation(8, part, f"group {group_text(g)} not allowed for {t}"))
    if any(v.condition == 8 for v in out):
        return out

    # (9)
    for part in by_type["HH"]:
        i, j = part.cells[0]
        g = part.group
        left, down = part_at((i, j - 1)), part_at((i - 1, j))
        if not (left.dtype == "FF" or (left.dtype == "HF" and g.pi1() <= left.group)):
            out.append(Violation(9, part, "cell to the left must be FF or a large enough HF"))
        if not (down.dtype == "FF" or (down.dtype == "FH" and g.pi2() <= down.group)):
            out.append(Violation(9, part, "cell below must be FF or a large enough FH"))

    # (10), (11)
    for part in by_type["eH"]:
        out.extend(_check_eps_h(part, part_at, z1, transpose=False))
    for part in by_type["He"]:
        out.extend(_check_eps_h(part, part_at, z2, transpose=True))
    return out


def _check_eps_h(part: DlockPart, part_at, floor: int, transpose: bool) -> list[Violation]:
    cond = 11 if transpose else 10
    i, j = part.cells[0]
    g = part.group
    if transpose:
        # work in transposed coordinates so one rule covers both cases
        i, j = j, i
        g = _transpose_group(g)

        def at(c):
            p = part_at((c[1], c[0]))
            return DlockPart(((c[0], c[1]),), _TRANSPOSED[p.dtype], _transpose_group(p.group))
    else:
        at = part_at
    n_prime = g.right
    out = []
    if at((i, j - 1)).dtype not in ("FF", "HF", "eF"):
        out.append(Violation(cond, part, "neighbour along the H coordinate must be FF, HF or eF"))
    if i > floor:
        other = at((i - 1, j))
        t = other.dtype
        if t in ("FF", "HF", "eF"):
            ok = True
        elif t == "FH":
            ok = n_prime <= other.group
        elif t in ("HH", "eH"):
            ok = NormalSubgroupProduct.product(NormalSubgroupSk(i - 1, "eps"), n_prime) <= other.group
        else:
            ok = False
        if not ok:
            out.append(Violation(cond, part, "neighbour along the epsilon coordinate is too small"))
    return out


def is_valid(land: DlockLandscape) -> bool:
    return not validate_landscape(land)


# construction -----------------------------------------------------------------


def _fill(families, parts: list[DlockPart]) -> DlockLandscape:
    covered = {c for p in parts for c in p.cells}
    rows, cols = families[0].ranks(), families[1].ranks()
    for i in rows:
        for j in cols:
            if (i, j) not in covered:
                parts.append(DlockPart(((i, j),), "ee", NormalSubgroupProduct.trivial(i, j)))
    return DlockLandscape(tuple(families), tuple(parts))


def ideal_parts(families, cells: set[Cell]) -> list[DlockPart]:
    """Parts for a single ideal class covering ``cells``."""
    if not cells:
        return []
    z1, z2 = families[0].rank_floor(), families[1].rank_floor()
    cells_t = tuple(sorted(cells))
    if z1 == 0 and all(i == 0 for i, _ in cells):
        if len(cells) == 1:
            return [DlockPart(cells_t, "ee", NormalSubgroupProduct.trivial(*cells_t[0]))]
        return [DlockPart(cells_t, "eF", NormalSubgroupSk(0, "eps"))]
    if z2 == 0 and all(j == 0 for _, j in cells):
        return [DlockPart(cells_t, "Fe", NormalSubgroupSk(0, "eps"))]
    return [DlockPart(cells_t, "FF")]


def _rect(rows: range, cols: range) -> set[Cell]:
    return {(i, j) for i in rows for j in cols}


def landscape_of_principal(desc: PrincipalProduct) -> DlockLandscape:
    fam = desc.families[::-1] if desc.swapped else desc.families
    z1, z2 = fam[0].rank_floor(), fam[1].rank_floor()
    n = fam[1].degree
    parts: list[DlockPart] = []
    if isinstance(desc, IdentityProduct):
        pass
    elif isinstance(desc, EqualCoordinate):
        theta = desc.theta
        for i in range(z1, desc.fixed.rank + 1):
            top = n if theta.is_universal else theta.k - 1
            if top >= 1:
                parts.append(DlockPart(tuple((i, b) for b in range(z2, top + 1)), "eF", NormalSubgroupSk(i, "eps")))
            if not theta.is_universal and not theta.group.is_trivial:
                parts.append(DlockPart(((i, theta.k),), "eH",
                                       NormalSubgroupProduct.product(NormalSubgroupSk(i, "eps"), theta.group)))
    elif isinstance(desc, ReesProduct):
        cells = set().union(*(_rect(range(z1, i + 1), range(z2, k + 1)) for i, k in desc.corners))
        parts = ideal_parts(fam, cells)
    elif isinstance(desc, OneSidedH):
        j, k = desc.bound, desc.theta.k
        parts = ideal_parts(fam, _rect(range(z1, j + 1), range(z2, k)))
        parts.append(DlockPart(tuple((a, k) for a in range(z1, j + 1)), "FH", desc.theta.group))
    elif isinstance(desc, BothH):
        i, k = desc.ranks
        g = desc.group
        parts = ideal_parts(fam, _rect(range(z1, i), range(z2, k)))
        parts.append(DlockPart(tuple((i, b) for b in range(z2, k)), "HF", g.pi1()))
        parts.append(DlockPart(tuple((a, k) for a in range(z1, i)), "FH", g.pi2()))
        parts.append(DlockPart(((i, k),), "HH", g))
    else:
        raise TypeError(f"unknown description {type(desc).__name__}")
    land = _fill(fam, parts)
    return land.transpose() if desc.swapped else land


def identity_landscape(families) -> DlockLandscape:
    return _fill(families, [])


def universal_landscape(families) -> DlockLandscape:
    rows, cols = families[0].ranks(), families[1].ranks()
    return _fill(families, ideal_parts(families, _rect(rows, cols)))


def landscape_from_partition(families, elements: Sequence[ProductElement], partition: Partition) -> DlockLandscape:
    """Read the landscape off a concrete congruence partition."""
    cells = sorted({_cell(x) for x in elements})
    cell_idx = {c: n for n, c in enumerate(cells)}
    members: dict[int, list[int]] = {}
    for x, lab in enumerate(partition):
        members.setdefault(lab, []).append(x)
    uf = _UnionFind(len(cells))
    for block in members.values():
        for x in block[1:]:
            uf.union(cell_idx[_cell(elements[block[0]])], cell_idx[_cell(elements[x])])
    dlocks: dict[int, list[Cell]] = {}
    for c in cells:
        dlocks.setdefault(uf.find(cell_idx[c]), []).append(c)
    related_in: dict[int, list[tuple[int, int]]] = {r: [] for r in dlocks}
    for block in members.values():
        r = uf.find(cell_idx[_cell(elements[block[0]])])
        related_in[r].extend((x, y) for x in block for y in block if x != y)

    parts = []
    for r, dcells in dlocks.items():
        pairs = [(elements[x], elements[y]) for x, y in related_in[r]]
        letters = []
        for coord in (0, 1):
            if any(hclass_witness(p[coord], q[coord]) is None for p, q in pairs):
                letters.append("F")
            elif any(p[coord] != q[coord] for p, q in pairs):
                letters.append("H")
            else:
                letters.append("e")
        dtype = "".join(letters)
        if dtype == "FF":
            group = None
        elif dtype in ROW_TYPES or dtype in COL_TYPES:
            coord = 0 if dtype in ROW_TYPES else 1
            degree = dcells[0][coord]
            witnesses = {hclass_witness(p[coord], q[coord]) for p, q in pairs}
            witnesses.add(Permutation.identity(degree))
            group = _match(witnesses, normal_subgroups_sk(degree), degree)
        else:
            i, j = dcells[0]
            witnesses = {(hclass_witness(p[0], q[0]), hclass_witness(p[1], q[1])) for p, q in pairs}
            witnesses.add((Permutation.identity(i), Permutation.identity(j)))
            group = _match(witnesses, all_normal_subgroups_product(i, j), (i, j))
        parts.append(DlockPart(tuple(dcells), dtype, group))
    return DlockLandscape(tuple(families), tuple(parts))


def _match(witnesses: set, candidates, where) -> Group:
    for cand in candidates:
        if witnesses == cand.elements():
            return cand
    raise ValueError(f"witness set at {where} is not a normal subgroup")


# enumeration ------------------------------------------------------------------


def _staircases(rows: range, cols: range) -> Iterator[set[Cell]]:
    """All downward-closed subsets of the grid, as row bounds non-increasing upward."""
    rows = list(rows)
    lo = cols.start - 1

    def rec(idx: int, cap: int, acc: list[int]):
        if idx == len(rows):
            yield {(rows[r], b) for r, top in enumerate(acc) for b in range(cols.start, top + 1)}
            return
        for top in range(lo, cap + 1):
            acc.append(top)
            yield from rec(idx + 1, top, acc)
            acc.pop()

    yield from rec(0, cols.stop - 1, [])


def _line_stacks(lines: range, free_len, floor: int, support_ok) -> Iterator[list[tuple[int, int]]]:
    """Stacks of epsilon segments on consecutive lines with non-increasing lengths.

    ``free_len(line)`` gives the longest segment length available on a line;
    ``support_ok(first, length)`` checks the condition below the lowest line.
    """
    yield []
    lines = list(lines)
    for s_idx, start in enumerate(lines):

        def rec(idx: int, cap: int, acc: list[tuple[int, int]]):
            if acc:
                yield list(acc)
            if idx == len(lines):
                return
            line = lines[idx]
            for length in range(1, min(cap, free_len(line)) + 1):
                if not acc and start > floor and not support_ok(start, length):
                    continue
                acc.append((line, length))
                yield from rec(idx + 1, length, acc)
                acc.pop()

        yield from rec(s_idx, 10**9, [])


def enumerate_landscapes(left: MonoidFamily, right: MonoidFamily, cap: int | None = None) -> Iterator[DlockLandscape]:
    limit = degree_cap(PRODUCT_DEGREE_CAP, cap)
    for fam in (left, right):
        check_cap(fam.degree, limit, f"degree of {fam}")
        if fam.family == "T" and fam.degree == 1:
            raise ValueError("T1 is trivial and is not allowed as a product factor")
    families = (left, right)
    rows, cols = left.ranks(), right.ranks()
    z1, z2 = rows.start, cols.start
    m, n = left.degree, right.degree
    grid = [(i, j) for i in rows for j in cols]

    for ff in _staircases(rows, cols):
        if ff and _ff_exception(ff, z1, z2):
            continue
        base = [DlockPart(tuple(sorted(ff)), "FF")] if ff else []
        for hf in _hf_options(ff, rows, cols, z1, z2):
            for fh in _hf_options({(j, i) for i, j in ff}, cols, rows, z2, z1):
                fh = [_transpose_part(p) for p in fh]
                placed = base + hf + fh
                taken = {c for p in placed for c in p.cells}
                if len(taken) != sum(len(p.cells) for p in placed):
                    continue
                yield from _with_stacks(families, placed, taken, grid, rows, cols, z1, z2, m, n)


def _transpose_part(p: DlockPart) -> DlockPart:
    return DlockPart(tuple((j, i) for i, j in p.cells), _TRANSPOSED[p.dtype], _transpose_group(p.group))


def _hf_options(ff: set[Cell], rows: range, cols: range, z1: int, z2: int) -> Iterator[list[DlockPart]]:
    yield []
    for i in rows:
        if i < 2 or (i, z2) in ff:
            continue
        for j in range(max(1, z2), cols.stop):
            if all((a, b) in ff for a in range(z1, i) for b in range(z2, j + 1)):
                for g in normal_subgroups_sk(i)[1:]:
                    yield [DlockPart(tuple((i, b) for b in range(z2, j + 1)), "HF", g)]


def _with_stacks(families, placed, taken, grid, rows, cols, z1, z2, m, n):
    owner = {c: p for p in placed for c in p.cells}

    def free_row(i):
        length = z2 - 1
        while length + 1 <= n and (i, length + 1) not in taken:
            length += 1
        return length

    def row_support(i, length):
        ps = {id(owner.get((i - 1, b))) for b in range(z2, length + 1)}
        p = owner.get((i - 1, z2))
        return len(ps) == 1 and p is not None and p.dtype in ("FF", "HF")

    for ef in _line_stacks(rows, free_row, z1, row_support):
        ef_parts = [DlockPart(tuple((i, b) for b in range(z2, length + 1)), "eF", NormalSubgroupSk(i, "eps"))
                    for i, length in ef]
        taken2 = taken | {c for p in ef_parts for c in p.cells}

        def free_col(j):
            length = z1 - 1
            while length + 1 <= m and (length + 1, j) not in taken2:
                length += 1
            return length

        def col_support(j, length):
            ps = {id(owner.get((a, j - 1))) for a in range(z1, length + 1)}
            p = owner.get((z1, j - 1))
            return len(ps) == 1 and p is not None and p.dtype in ("FF", "FH")

        for fe in _line_stacks(cols, free_col, z2, col_support):
            fe_parts = [DlockPart(tuple((a, j) for a in range(z1, length + 1)), "Fe", NormalSubgroupSk(j, "eps"))
                        for j, length in fe]
            parts = placed + ef_parts + fe_parts
            taken3 = taken2 | {c for p in fe_parts for c in p.cells}
            rest = [c for c in grid if c not in taken3]
            yield from _fill_cells(families, parts, rest, z1, z2)


def _cell_choices(i: int, j: int) -> list[DlockPart]:
    out = [DlockPart(((i, j),), "ee", NormalSubgroupProduct.trivial(i, j))]
    eps_i, eps_j = NormalSubgroupSk(i, "eps"), NormalSubgroupSk(j, "eps")
    if j >= 2:
        out += [DlockPart(((i, j),), "eH", NormalSubgroupProduct.product(eps_i, g)) for g in normal_subgroups_sk(j)[1:]]
    if i >= 2:
        out += [DlockPart(((i, j),), "He", NormalSubgroupProduct.product(g, eps_j)) for g in normal_subgroups_sk(i)[1:]]
    if i >= 2 and j >= 2:
        out += [DlockPart(((i, j),), "HH", g) for g in all_normal_subgroups_product(i, j)
                if not g.pi1().is_trivial and not g.pi2().is_trivial]
    return out


def _fill_cells(families, parts, rest, z1, z2):
    owner = {c: p for p in parts for c in p.cells}

    def ok(part: DlockPart) -> bool:
        return part.dtype == "ee" or not _local_violations(part, owner, z1, z2)

    def rec(idx: int):
        if idx == len(rest):
            land = DlockLandscape(tuple(families), tuple(owner_parts()))
            if is_valid(land):
                yield land
            return
        i, j = rest[idx]
        for choice in _cell_choices(i, j):
            if ok(choice):
                owner[(i, j)] = choice
                yield from rec(idx + 1)
                del owner[(i, j)]

    def owner_parts():
        seen, out = set(), []
        for p in owner.values():
            if id(p) not in seen:
                seen.add(id(p))
                out.append(p)
        return out

    yield from rec(0)


def _local_violations(part: DlockPart, owner: dict, z1: int, z2: int) -> bool:
    i, j = part.cells[0]
    g = part.group
    if part.dtype == "HH":
        left, down = owner[(i, j - 1)], owner[(i - 1, j)]
        return not (
            (left.dtype == "FF" or (left.dtype == "HF" and g.pi1() <= left.group))
            and (down.dtype == "FF" or (down.dtype == "FH" and g.pi2() <= down.group))
        )
    transpose = part.dtype == "He"
    return bool(_check_eps_h(part, owner.__getitem__, z2 if transpose else z1, transpose))


# text forms -----------------------------------------------------------------


def group_text(group: Group) -> str:
    if group is None:
        return ""
    if isinstance(group, NormalSubgroupSk):
        return group.kind
    return "parity" if group.parity else f"{group.left.kind}x{group.right.kind}"


def parse_group(text: str | None, dtype: str, cell: Cell) -> Group:
    i, j = cell
    if dtype == "FF":
        if text:
            raise ValueError("FF parts carry no group")
        return None
    if dtype in ROW_TYPES or dtype in COL_TYPES:
        degree = i if dtype in ROW_TYPES else j
        return parse_sk(text or "eps", degree)
    if dtype == "ee" and not text:
        return NormalSubgroupProduct.trivial(i, j)
    if text == "parity":
        return NormalSubgroupProduct.parity_diagonal(i, j)
    left, sep, right = (text or "").partition("x")
    if not sep:
        raise ValueError(f"bad product group {text!r}; expected e.g. AxS or parity")
    return NormalSubgroupProduct.product(parse_sk(left, i), parse_sk(right, j))


def landscape_to_dict(land: DlockLandscape) -> dict:
    def enc(g: Group):
        if g is None:
            return None
        if isinstance(g, NormalSubgroupSk):
            return g.kind
        return "parity" if g.parity else [g.left.kind, g.right.kind]

    return {
        "families": [str(f) for f in land.families],
        "parts": [{"cells": [list(c) for c in p.cells], "type": p.dtype, "group": enc(p.group)}
                  for p in land.parts],
    }


def landscape_from_dict(data: dict) -> DlockLandscape:
    families = tuple(parse_family(f) for f in data["families"])
    if len(families) != 2:
        raise ValueError("a landscape needs exactly two families")
    parts = []
    for raw in data["parts"]:
        cells = tuple(tuple(c) for c in raw["cells"])
        if not cells:
            raise ValueError("empty part")
        dtype = raw["type"]
        if dtype not in TYPES:
            raise ValueError(f"unknown dlock type {dtype!r}")
        g = raw.get("group")
        text = "x".join(g) if isinstance(g, list) else g
        parts.append(DlockPart(cells, dtype, parse_group(text, dtype, cells[0])))
    return DlockLandscape(families, tuple(parts))


def landscape_to_json(land: DlockLandscape) -> str:
    return json.dumps(landscape_to_dict(land))


def landscape_from_json(text: str) -> DlockLandscape:
    return landscape_from_dict(json.loads(text))
