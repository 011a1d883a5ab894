"""Square matrices over GF(p) for p in {2, 3, 5}.

Matrices act on column vectors, so the image is the column space and two
matrices are L-related when they share a kernel (equivalently, a row
space).  Products are ordinary matrix products, read left to right as
``A * B``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cache

from .config import ELEMENT_DEGREE_CAP, TABLE_SIZE_CAP, CapExceeded, check_cap, degree_cap

PRIMES = (2, 3, 5)

Rows = tuple[tuple[int, ...], ...]


def check_prime(p: int) -> None:
    if p not in PRIMES:
        raise ValueError(f"field GF({p}) not supported; use one of {PRIMES}")


def units(p: int) -> tuple[int, ...]:
    return tuple(range(1, p))


def inv_mod(x: int, p: int) -> int:
    return pow(x, p - 2, p)


def unit_subgroups(p: int) -> list[frozenset[int]]:
    """Subgroups of the cyclic group GF(p)*, smallest first."""
    order = p - 1
    out = []
    for d in range(1, order + 1):
        if order % d == 0:
            out.append(frozenset(x for x in units(p) if pow(x, d, p) == 1))
    return out


def unit_subgroup_generated(p: int, lam: int) -> frozenset[int]:
    out, x = {1}, lam % p
    while x not in out:
        out.add(x)
        x = x * lam % p
    return frozenset(out)


def rref(rows: Rows, p: int) -> tuple[Rows, tuple[int, ...]]:
    """Reduced row echelon form (non-zero rows only) and pivot columns."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv_mod(m[r][c], p)
        m[r] = [v * s % p for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [(a - f * b) % p for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def transpose(rows: Rows) -> Rows:
    return tuple(zip(*rows)) if rows else ()


@dataclass(frozen=True, slots=True)
class Matrix:
    p: int
    rows: Rows
    rank: int = field(init=False, compare=False, repr=False)
    image: Rows = field(init=False, compare=False, repr=False)
    rowspace: Rows = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        if any(not 0 <= v < self.p for r in self.rows for v in r):
            raise ValueError(f"entries must lie in 0..{self.p - 1}")
        rs, _ = rref(self.rows, self.p)
        cs, _ = rref(transpose(self.rows), self.p)
        object.__setattr__(self, "rank", len(rs))
        object.__setattr__(self, "rowspace", rs)
        object.__setattr__(self, "image", cs)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: Matrix) -> Matrix:
        return matmul(self, other)

    def scale(self, lam: int) -> Matrix:
        return Matrix(self.p, tuple(tuple(v * lam % self.p for v in r) for r in self.rows))

    def __str__(self) -> str:
        return ";".join(",".join(map(str, r)) for r in self.rows)


@cache
def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.p != b.p or a.n != b.n:
        raise ValueError("matrices from different monoids")
    p = a.p
    cols = transpose(b.rows)
    return Matrix(p, tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in cols) for r in a.rows))


def identity_matrix(p: int, n: int) -> Matrix:
    return partial_identity(p, n, n)


def partial_identity(p: int, n: int, r: int) -> Matrix:
    """E_r: ones in the first r diagonal positions."""
    return Matrix(p, tuple(tuple(1 if i == j and i < r else 0 for j in range(n)) for i in range(n)))


def zero_matrix(p: int, n: int) -> Matrix:
    return partial_identity(p, n, 0)


def matrix_rank(a: Matrix) -> int:
    return a.rank


def image_space(a: Matrix) -> Rows:
    """Canonical basis (as rows) of the column space."""
    return a.image


def kernel_space(a: Matrix) -> Rows:
    """Canonical basis (as rows) of the null space."""
    rs, pivots = rref(a.rows, a.p)
    n, p = a.n, a.p
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(rs, pivots):
            v[pc] = -row[f] % p
        basis.append(tuple(v))
    return rref(tuple(basis), p)[0] if basis else ()


def green_related_matrix(a: Matrix, b: Matrix, relation: str) -> bool:
    if relation == "D":
        return a.rank == b.rank
    if relation == "R":
        return a.image == b.image
    if relation == "L":
        return a.rowspace == b.rowspace
    if relation == "H":
        return a.image == b.image and a.rowspace == b.rowspace
    raise ValueError(f"unknown Green relation {relation!r}")


def h_related_matrix(a: Matrix, b: Matrix) -> bool:
    return a.image == b.image and a.rowspace == b.rowspace


def is_scalar_multiple(a: Matrix, b: Matrix) -> int | None:
    """Some unit lam with a = lam * b, or None."""
    for lam in units(a.p):
        if b.scale(lam) == a:
            return lam
    return None


def inverse(a: Matrix) -> Matrix:
    n, p = a.n, a.p
    aug = tuple(tuple(r) + tuple(1 if i == j else 0 for j in range(n)) for i, r in enumerate(a.rows))
    rs, pivots = rref(aug, p)
    if pivots[:n] != tuple(range(n)) or len(rs) < n:
        raise ValueError("matrix is singular")
    return Matrix(p, tuple(r[n:] for r in rs))


@cache
def reduce_to_partial_identity(a: Matrix) -> tuple[Matrix, Matrix]:
    """Invertible (s1, s2) with s1 * a * s2 = E_rank."""
    n, p = a.n, a.p
    aug = tuple(tuple(r) + tuple(1 if i == j else 0 for j in range(n)) for i, r in enumerate(a.rows))
    full, _ = rref(aug, p)
    # rows of the augmented RREF: the right half records the row operations
    s1 = Matrix(p, tuple(r[n:] for r in full))
    _, pivots = rref(a.rows, p)
    cols = [tuple(1 if k == c else 0 for k in range(n)) for c in pivots]
    cols += list(_null_basis(a))
    s2 = Matrix(p, transpose(tuple(cols)))
    return s1, s2


def _null_basis(a: Matrix) -> list[tuple[int, ...]]:
    rs, pivots = rref(a.rows, a.p)
    out = []
    for f in (c for c in range(a.n) if c not in pivots):
        v = [0] * a.n
        v[f] = 1
        for row, pc in zip(rs, pivots):
            v[pc] = -row[f] % a.p
        out.append(tuple(v))
    return out


def block(a: Matrix, r: int) -> Matrix:
    """Top-left r x r block."""
    return Matrix(a.p, tuple(row[:r] for row in a.rows[:r]))


def embed(x: Matrix, n: int) -> Matrix:
    r = x.n
    return Matrix(x.p, tuple(
        tuple(x.rows[i][j] if i < r and j < r else 0 for j in range(n)) for i in range(n)
    ))


def in_gl_block(a: Matrix, r: int) -> bool:
    """Is a in the maximal subgroup containing E_r?"""
    e = partial_identity(a.p, a.n, r)
    return a.rank == r and h_related_matrix(a, e)


@cache
def reduced(a: Matrix, b: Matrix) -> Matrix | None:
    """The r x r block of s1 * b * s2, where (s1, s2) reduces a to E_r.

    Returns None unless a and b are H-related.
    """
    if not h_related_matrix(a, b):
        return None
    s1, s2 = reduce_to_partial_identity(a)
    return block(s1 * b * s2, a.rank)


@cache
def hclass_translates(a: Matrix, group: frozenset[Matrix]) -> frozenset[Matrix]:
    """All b in the H-class of a whose reduction relative to a lies in ``group``."""
    s1, s2 = reduce_to_partial_identity(a)
    t1, t2 = inverse(s1), inverse(s2)
    return frozenset(t1 * embed(g, a.n) * t2 for g in group)


@dataclass(frozen=True)
class MatrixMonoid:
    p: int
    n: int

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1:
            raise ValueError("matrix size must be at least 1")

    def __str__(self) -> str:
        return f"F{self.n}@GF({self.p})"

    def elements(self) -> tuple[Matrix, ...]:
        return all_matrices(self.p, self.n)

    def multiply(self, a: Matrix, b: Matrix) -> Matrix:
        return matmul(a, b)

    def identity(self) -> Matrix:
        return identity_matrix(self.p, self.n)

    def parse_element(self, text: str) -> Matrix:
        m = parse_matrix(text, self.p)
        if m.n != self.n:
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        return m


@cache
def all_matrices(p: int, n: int) -> tuple[Matrix, ...]:
    check_cap(p ** (n * n), TABLE_SIZE_CAP * 10, f"size of F{n}@GF({p})")
    return tuple(
        Matrix(p, tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))
        for vals in itertools.product(range(p), repeat=n * n)
    )


@cache
def general_linear(p: int, r: int) -> tuple[Matrix, ...]:
    if r == 0:
        return (Matrix(p, ()),)
    check_cap(r, degree_cap(ELEMENT_DEGREE_CAP), "GL degree")
    if p ** (r * r) > 10**6:
        raise CapExceeded(f"GL({r},{p}) is too large to list")
    return tuple(m for m in all_matrices_unchecked(p, r) if m.rank == r)


def all_matrices_unchecked(p: int, n: int):
    for vals in itertools.product(range(p), repeat=n * n):
        yield Matrix(p, tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))


def scalar_matrices(p: int, r: int, lams) -> frozenset[Matrix]:
    return frozenset(identity_matrix(p, r).scale(x) if r else Matrix(p, ()) for x in lams)


_MONOID = re.compile(r"\s*F(\d+)@GF\((\d+)\)\s*$")


def parse_matrix_monoid(text: str) -> MatrixMonoid:
    m = _MONOID.match(text)
    if not m:
        raise ValueError(f"bad matrix monoid {text!r}; expected e.g. F2@GF(3)")
    return MatrixMonoid(int(m.group(2)), int(m.group(1)))


def parse_matrix(text: str, p: int | None = None) -> Matrix:
    body, _, field_part = text.strip().partition("@")
    if field_part:
        fm = re.fullmatch(r"GF\((\d+)\)", field_part.strip())
        if not fm:
            raise ValueError(f"bad field in {text!r}")
        q = int(fm.group(1))
        if p is not None and q != p:
            raise ValueError(f"matrix over GF({q}) given where GF({p}) is expected")
        p = q
    if p is None:
        raise ValueError("field not given; append e.g. @GF(2)")
    check_prime(p)
    body = body.strip().strip("[]")
    try:
        rows = tuple(tuple(int(v) % p for v in row.split(",")) for row in body.split(";"))
    except ValueError:
        raise ValueError(f"bad matrix literal {text!r}; expected e.g. 1,0;0,1") from None
    return Matrix(p, rows)


@cache
def _reduction_inverses(a: Matrix) -> tuple[Matrix, Matrix]:
    s1, s2 = reduce_to_partial_identity(a)
    return inverse(s1), inverse(s2)


def hclass_element(a: Matrix, y: Matrix) -> Matrix:
    """The member of a's H-class whose reduction relative to a is y."""
    t1, t2 = _reduction_inverses(a)
    return t1 * embed(y, a.n) * t2


def reduced_with(s1: Matrix, s2: Matrix, b: Matrix, r: int) -> Matrix:
    return block(s1 * b * s2, r)
