"""Text diagrams of dlock landscapes, and the matching parser.

Each grid cell is labelled with its part's type, followed by the group in
parentheses when there is one, e.g. ``HF(S)`` or ``HH(parity)``.  Parts are
recovered from labels alone: FF, HF and FH occur at most once, eF parts are
whole row segments, Fe parts whole column segments, and the remaining types
occupy single cells.

Diamond mode follows the usual picture: the bottom cell is (0*, 0*), the
first coordinate grows towards the upper left and the second towards the
upper right.  Matrix mode prints rows top-down with the largest first rank
on top.
"""

from __future__ import annotations

import re

from .landscape import (
    CELL_TYPES,
    DlockLandscape,
    DlockPart,
    parse_group,
)
from .transformations import parse_family

_HEADER = re.compile(r"landscape\s+(\S+)x(\S+)\s+(diamond|matrix)\s*$")


def _labels(land: DlockLandscape) -> dict[tuple[int, int], str]:
    return {c: str(p) for p in land.parts for c in p.cells}


def render_landscape(land: DlockLandscape, mode: str = "diamond") -> str:
    labels = _labels(land)
    left, right = land.families
    width = max(len(s) for s in labels.values()) + 2
    lines = [f"landscape {left}x{right} {mode}"]
    rows, cols = list(land.rows), list(land.cols)
    if mode == "matrix":
        for i in reversed(rows):
            cells = "".join(labels[(i, j)].ljust(width) for j in cols).rstrip()
            lines.append(f"{i:>2} | {cells}")
        lines.append("   +" + "-" * (width * len(cols)))
        lines.append("     " + "".join(str(j).ljust(width) for j in cols).rstrip())
        return "\n".join(lines) + "\n"
    if mode != "diamond":
        raise ValueError(f"unknown render mode {mode!r}")
    half = (width + 1) // 2
    lo = cols[0] - rows[-1]
    for s in range(rows[-1] + cols[-1], rows[0] + cols[0] - 1, -1):
        row = ""
        for j in cols:
            i = s - j
            if i not in rows:
                continue
            pos = (j - i - lo) * half
            row = row.ljust(pos) + labels[(i, j)]
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"([A-Za-z]{2})(?:\(([^()]*)\))?$")


def parse_landscape(text: str) -> DlockLandscape:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty landscape text")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise ValueError("first line must read 'landscape <FAM>x<FAM> diamond|matrix'")
    left, right = parse_family(m.group(1)), parse_family(m.group(2))
    rows, cols = list(left.ranks()), list(right.ranks())
    labels: dict[tuple[int, int], str] = {}
    body = lines[1:]
    if m.group(3) == "matrix":
        grid_lines = [ln for ln in body if "|" in ln]
        if len(grid_lines) != len(rows):
            raise ValueError(f"expected {len(rows)} grid rows, found {len(grid_lines)}")
        for ln in grid_lines:
            head, _, rest = ln.partition("|")
            i = int(head)
            tokens = rest.split()
            if len(tokens) != len(cols):
                raise ValueError(f"row {i}: expected {len(cols)} cells, found {len(tokens)}")
            labels.update({(i, j): tok for j, tok in zip(cols, tokens)})
    else:
        sums = list(range(rows[-1] + cols[-1], rows[0] + cols[0] - 1, -1))
        if len(body) != len(sums):
            raise ValueError(f"expected {len(sums)} diagonal lines, found {len(body)}")
        for s, ln in zip(sums, body):
            cells = [(s - j, j) for j in cols if s - j in rows]
            tokens = ln.split()
            if len(tokens) != len(cells):
                raise ValueError(f"diagonal {s}: expected {len(cells)} cells, found {len(tokens)}")
            labels.update(dict(zip(cells, tokens)))
    return DlockLandscape((left, right), tuple(_parts_from_labels(labels)))


def _parts_from_labels(labels: dict[tuple[int, int], str]) -> list[DlockPart]:
    groups: dict[tuple, list[tuple[int, int]]] = {}
    parsed = {}
    for cell, tok in labels.items():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad cell label {tok!r} at {cell}")
        dtype, gtext = m.group(1), m.group(2)
        parsed[cell] = (dtype, gtext)
        if dtype in CELL_TYPES:
            key = (dtype, cell)
        elif dtype == "eF":
            key = (dtype, cell[0])
        elif dtype == "Fe":
            key = (dtype, cell[1])
        else:
            key = (dtype,)
        groups.setdefault(key, []).append(cell)
    parts = []
    for key, cells in groups.items():
        dtype = key[0]
        texts = {parsed[c][1] for c in cells}
        if len(texts) != 1:
            raise ValueError(f"cells of one {dtype} part carry different groups")
        parts.append(DlockPart(tuple(cells), dtype, parse_group(texts.pop(), dtype, min(cells))))
    return parts
