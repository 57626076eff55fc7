"""Exact rational scalars, dense exact linear algebra, and polynomial arithmetic.

Everything downstream computes over the rationals, so all identities can be
checked as exact equalities instead of within floating-point tolerances.
Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator); matrices and polynomials are small immutable containers on top
of them.  Sizes stay tiny (spaces of dimension at most 2**6), so dense
storage and schoolbook algorithms are the right tool.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

#: The field every model quantity lives in.
ExactScalar = Fraction

ScalarLike = Union[int, str, Fraction]


class ShapeMismatchError(ValueError):
    """Operands do not have conforming shapes."""


class SingularMatrixError(ValueError):
    """Coefficient matrix is rank deficient."""


class InconsistentSystemError(ValueError):
    """Overdetermined system has no exact solution."""


def rat(x: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def rat_to_str(x: Fraction) -> str:
    """Serialize a scalar as "p" or "p/q" without precision loss."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    """A dense matrix of exact scalars, immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]]):
        rows = tuple(tuple(rat(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeMismatchError("matrix must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatchError("ragged rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def column(cls, values: Sequence[ScalarLike]) -> "ExactMatrix":
        return cls([[v] for v in values])

    # -- basics --------------------------------------------------------

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(rat_to_str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("addition needs equal shapes")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, s: ScalarLike) -> "ExactMatrix":
        s = rat(s)
        return ExactMatrix([[s * x for x in row] for row in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeMismatchError("trace needs a square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def column_vector(self, j: int = 0) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    # -- serialization ---------------------------------------------------

    def to_jsonable(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[rat_to_str(x) for x in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable())

    @classmethod
    def from_jsonable(cls, obj: dict) -> "ExactMatrix":
        m = cls(obj["entries"])
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
            raise ShapeMismatchError("declared shape does not match entries")
        return m

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        return cls.from_jsonable(json.loads(text))


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product.

    Skips zero entries of the left factor; the fused operators are built from
    very sparse embedded factors, and this keeps those chains cheap.
    """
    if a.cols != b.rows:
        raise ShapeMismatchError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    brows = b.entries
    out = [[Fraction(0)] * b.cols for _ in range(a.rows)]
    for i, arow in enumerate(a.entries):
        oi = out[i]
        for j, aij in enumerate(arow):
            if not aij:
                continue
            brow = brows[j]
            for k, bjk in enumerate(brow):
                if bjk:
                    oi[k] += aij * bjk
    return ExactMatrix(out)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with (a x b)[(i*rb + k), (j*cb + l)] = a[i,j] * b[k,l]."""
    out = []
    for arow in a.entries:
        for brow in b.entries:
            out.append([aij * bkl for aij in arow for bkl in brow])
    return ExactMatrix(out)


def solve_exact(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve a @ x = b exactly.

    ``a`` may be square or overdetermined; full column rank is required.  For
    an overdetermined system the pivot rows determine the solution and every
    remaining row is verified, so a consistent system solves and an
    inconsistent one raises.
    """
    if a.rows != b.rows:
        raise ShapeMismatchError("matrix and right-hand side must have equal row count")
    if a.rows < a.cols:
        raise ShapeMismatchError("underdetermined systems are not supported")
    n, m = a.rows, a.cols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    width = m + b.cols
    pivot_row = 0
    for col in range(m):
        pivot = next((r for r in range(pivot_row, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("singular")
        aug[pivot_row], aug[pivot] = aug[pivot], aug[pivot_row]
        pv = aug[pivot_row][col]
        aug[pivot_row] = [x / pv for x in aug[pivot_row]]
        for r in range(n):
            if r != pivot_row and aug[r][col] != 0:
                f = aug[r][col]
                row_p = aug[pivot_row]
                aug[r] = [x - f * y for x, y in zip(aug[r], row_p)]
        pivot_row += 1
    for r in range(m, n):
        if any(aug[r][c] != 0 for c in range(m, width)):
            raise InconsistentSystemError("inconsistent")
    return ExactMatrix([row[m:] for row in aug[:m]])


def det(a: ExactMatrix) -> Fraction:
    """Exact determinant via fraction-free-enough Gaussian elimination."""
    if a.rows != a.cols:
        raise ShapeMismatchError("determinant needs a square matrix")
    n = a.rows
    mat = [list(row) for row in a.entries]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            result = -result
        pv = mat[col][col]
        result *= pv
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                f = mat[r][col] / pv
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return result


class ExactPolynomial:
    """A polynomial in one variable with exact coefficients, lowest power first.

    Trailing zero coefficients are stripped on construction, so ``degree`` is
    the honest degree (-1 for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPolynomial is immutable")

    @classmethod
    def zero(cls) -> "ExactPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "ExactPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coeff: ScalarLike = 1) -> "ExactPolynomial":
        return cls([0] * power + [coeff])

    @classmethod
    def from_roots(cls, roots: Sequence[ScalarLike]) -> "ExactPolynomial":
        p = cls.one()
        for r in roots:
            p = p * cls((-rat(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def coeff_vector(self, dim: int) -> tuple[Fraction, ...]:
        """Coefficients padded with zeros to length ``dim``."""
        if len(self.coeffs) > dim:
            raise ShapeMismatchError(f"degree {self.degree} does not fit in dimension {dim}")
        return self.coeffs + (Fraction(0),) * (dim - len(self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "ExactPolynomial(0)"
        terms = ", ".join(rat_to_str(c) for c in self.coeffs)
        return f"ExactPolynomial([{terms}])"

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPolynomial(
            [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + other.scale(-1)

    def scale(self, s: ScalarLike) -> "ExactPolynomial":
        s = rat(s)
        return ExactPolynomial([s * c for c in self.coeffs])

    def __mul__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        if self.is_zero() or other.is_zero():
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj:
                    out[i + j] += ci * cj
        return ExactPolynomial(out)

    def __call__(self, z: ScalarLike) -> Fraction:
        z = rat(z)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def poly_shift(p: ExactPolynomial, h: ScalarLike) -> ExactPolynomial:
    """The polynomial z -> p(z + h), expanded by the binomial theorem."""
    h = rat(h)
    out = [Fraction(0)] * max(len(p.coeffs), 1)
    for j, c in enumerate(p.coeffs):
        if not c:
            continue
        hp = Fraction(1)
        for i in range(j, -1, -1):
            out[i] += c * comb(j, i) * hp
            hp *= h
    return ExactPolynomial(out)


def poly_gcd(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, _poly_mod(a, b)
    if a.is_zero():
        return a
    return a.scale(1 / a.coeffs[-1])


def _poly_mod(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    if b.is_zero():
        raise ZeroDivisionError("polynomial modulo zero")
    r = list(a.coeffs)
    d = b.degree
    lead = b.coeffs[-1]
    while len(r) - 1 >= d and r:
        if r[-1] == 0:
            r.pop()
            continue
        f = r[-1] / lead
        shift = len(r) - 1 - d
        for i, c in enumerate(b.coeffs):
            r[shift + i] -= f * c
        while r and r[-1] == 0:
            r.pop()
    return ExactPolynomial(r)


def poly_divmod(a: ExactPolynomial, b: ExactPolynomial):
    """Exact polynomial division: returns (q, r) with a = q*b + r, deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a.coeffs) - len(b.coeffs) + 1, 1)
    r = list(a.coeffs)
    d = b.degree
    lead = b.coeffs[-1]
    while len(r) - 1 >= d and r:
        if r[-1] == 0:
            r.pop()
            continue
        f = r[-1] / lead
        shift = len(r) - 1 - d
        q[shift] = f
        for i, c in enumerate(b.coeffs):
            r[shift + i] -= f * c
        while r and r[-1] == 0:
            r.pop()
    return ExactPolynomial(q), ExactPolynomial(r)


def lagrange_interpolate(points: Sequence[tuple[ScalarLike, ScalarLike]]) -> ExactPolynomial:
    """The unique polynomial of degree < len(points) through the given points."""
    xs = [rat(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = ExactPolynomial.zero()
    for i, (xi, yi) in enumerate(points):
        xi, yi = rat(xi), rat(yi)
        if yi == 0:
            continue
        basis = ExactPolynomial.one()
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * ExactPolynomial((-xj, 1))
            denom *= xi - xj
        result = result + basis.scale(yi / denom)
    return result
