"""The monoids T_n, PT_n and I_n.

Elements are stored as tuples of images on the points 1..n, with 0 marking
an undefined point.  Composition runs left to right, so ``compose(f, g)``
first applies ``f`` and then ``g``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cache

from .config import ELEMENT_DEGREE_CAP, check_cap, degree_cap
from .permutations import Permutation

UNDEFINED = 0
FAMILIES = ("T", "PT", "I")


@dataclass(frozen=True, slots=True, order=True)
class MonoidFamily:
    family: str
    degree: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.degree < 1:
            raise ValueError("degree must be at least 1")

    def rank_floor(self) -> int:
        return 1 if self.family == "T" else 0

    def ranks(self) -> range:
        return range(self.rank_floor(), self.degree + 1)

    def __str__(self) -> str:
        return f"{self.family}{self.degree}"

    # the oracle treats any object with these three methods as a monoid
    def elements(self) -> tuple[Transformation, ...]:
        return enumerate_elements(self)

    def identity(self) -> Transformation:
        return Transformation(self, tuple(range(1, self.degree + 1)))

    def multiply(self, x: Transformation, y: Transformation) -> Transformation:
        return compose(x, y)

    def parse_element(self, text: str) -> Transformation:
        return parse_element(text, self)

    def contains(self, images: tuple[int, ...]) -> bool:
        if len(images) != self.degree or any(not 0 <= v <= self.degree for v in images):
            return False
        if self.family == "T":
            return UNDEFINED not in images
        if self.family == "I":
            defined = [v for v in images if v]
            return len(defined) == len(set(defined))
        return True


def parse_family(text: str) -> MonoidFamily:
    m = re.fullmatch(r"\s*(PT|T|I)(\d+)\s*", text)
    if not m:
        raise ValueError(f"bad family literal {text!r}; expected e.g. T3, PT2, I4")
    return MonoidFamily(m.group(1), int(m.group(2)))


@dataclass(frozen=True, slots=True)
class Transformation:
    family: MonoidFamily
    images: tuple[int, ...]
    rank: int = field(init=False, compare=False, repr=False)
    image: tuple[int, ...] = field(init=False, compare=False, repr=False)
    # kernel signature: 0 off the domain, else the least point with the same image
    kernel: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.family.contains(self.images):
            raise ValueError(f"{self.images} is not an element of {self.family}")
        image = tuple(sorted(set(v for v in self.images if v)))
        first: dict[int, int] = {}
        kernel = []
        for x, v in enumerate(self.images, start=1):
            if v:
                kernel.append(first.setdefault(v, x))
            else:
                kernel.append(0)
        object.__setattr__(self, "rank", len(image))
        object.__setattr__(self, "image", image)
        object.__setattr__(self, "kernel", tuple(kernel))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(x for x, v in enumerate(self.images, start=1) if v)

    def __str__(self) -> str:
        return "[" + ",".join(str(v) if v else "-" for v in self.images) + "]"


def _check_same(f: Transformation, g: Transformation) -> None:
    if f.family != g.family:
        raise ValueError(f"elements from different monoids: {f.family} vs {g.family}")


def compose(f: Transformation, g: Transformation) -> Transformation:
    _check_same(f, g)
    gi = g.images
    return Transformation(f.family, tuple(gi[v - 1] if v else 0 for v in f.images))


def green_related(f: Transformation, g: Transformation, relation: str) -> bool:
    _check_same(f, g)
    if relation == "D":
        return f.rank == g.rank
    if relation == "L":
        return f.image == g.image
    if relation == "R":
        return f.kernel == g.kernel
    if relation == "H":
        return f.image == g.image and f.kernel == g.kernel
    raise ValueError(f"unknown Green relation {relation!r}")


def h_related(f: Transformation, g: Transformation) -> bool:
    return f.image == g.image and f.kernel == g.kernel


def act(f: Transformation, omega: Permutation) -> Transformation:
    """Right action of S_|f| on f, permuting the sorted image of f."""
    if omega.degree != f.rank:
        raise ValueError(f"permutation of degree {omega.degree} cannot act on rank {f.rank}")
    pos = {a: j for j, a in enumerate(f.image, start=1)}
    return Transformation(
        f.family, tuple(f.image[omega(pos[v]) - 1] if v else 0 for v in f.images)
    )


def hclass_witness(f: Transformation, g: Transformation) -> Permutation | None:
    """The unique sigma with g = f.sigma, or None when f and g are not H-related."""
    _check_same(f, g)
    if not h_related(f, g):
        return None
    pos = {a: j for j, a in enumerate(f.image, start=1)}
    sigma = [0] * f.rank
    for v, w in zip(f.images, g.images):
        if v:
            sigma[pos[v] - 1] = pos[w]
    return Permutation(tuple(sigma))


@cache
def _enumerate(family: MonoidFamily) -> tuple[Transformation, ...]:
    n = family.degree
    values = range(1, n + 1) if family.family == "T" else range(0, n + 1)
    out = []
    for images in itertools.product(values, repeat=n):
        if family.family == "I":
            defined = [v for v in images if v]
            if len(defined) != len(set(defined)):
                continue
        out.append(Transformation(family, images))
    return tuple(out)


def enumerate_elements(family: MonoidFamily, cap: int | None = None) -> tuple[Transformation, ...]:
    check_cap(family.degree, degree_cap(ELEMENT_DEGREE_CAP, cap), f"degree of {family}")
    return _enumerate(family)


@dataclass(frozen=True, slots=True)
class Ideal:
    family: MonoidFamily
    bound: int

    def __post_init__(self):
        if not self.family.rank_floor() <= self.bound <= self.family.degree:
            raise ValueError(f"ideal bound {self.bound} out of range for {self.family}")

    def __contains__(self, f: Transformation) -> bool:
        return f.family == self.family and f.rank <= self.bound


def parse_element(text: str, family: MonoidFamily) -> Transformation:
    m = re.fullmatch(r"\s*\[([^\[\]]*)\]\s*", text)
    if not m:
        raise ValueError(f"bad element literal {text!r}; expected e.g. [2,1,-]")
    tokens = [t.strip() for t in m.group(1).split(",")]
    try:
        images = tuple(0 if t == "-" else int(t) for t in tokens)
    except ValueError:
        raise ValueError(f"bad entry in element literal {text!r}") from None
    return Transformation(family, images)


def constant(family: MonoidFamily, value: int) -> Transformation:
    return Transformation(family, (value,) * family.degree)
