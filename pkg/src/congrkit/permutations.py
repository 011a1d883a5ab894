"""Permutations of {1..k}, composed left to right.

``p * q`` applies ``p`` first, then ``q``; this matches the right action of
symmetric groups on transformations used throughout the package.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cache


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(1, degree + 1)))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[x - 1] for x in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def conjugate(self, g: Permutation) -> Permutation:
        """Return g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    @property
    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)


def parity(sigma: Permutation) -> str:
    return "even" if sigma.is_even else "odd"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` is the identity."""
    stripped = text.replace(" ", "").replace(",", "")
    if not stripped or _CYCLE.sub("", text.strip()).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    images = list(range(1, degree + 1))
    # cycles written left to right compose left to right
    result = Permutation(tuple(images))
    for body in _CYCLE.findall(text):
        points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if len(set(points)) != len(points) or any(not 1 <= p <= degree for p in points):
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        mapping = list(range(1, degree + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            mapping[a - 1] = b
        result = result * Permutation(tuple(mapping))
    return result


@cache
def symmetric_group(degree: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(1, degree + 1)))
