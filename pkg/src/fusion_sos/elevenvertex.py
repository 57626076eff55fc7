"""The eleven-vertex family: shift conjugation of the fused seven-vertex operators.

Conjugating by lower-triangular shift operators whose polynomial action is
z -> z + alpha*u turns the fused family into a new solution family whose
simplest member is the eleven-vertex matrix.  The conjugated operators
depend only on the spectral difference, and the intertwining vectors become
spectral-parameter independent while the face weights stay unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcore import ExactMatrix, ExactPolynomial, ScalarLike, kron, mat_mul, rat
from .fusion import fuse_nm, sym_basis
from .vertex import ModelParams


@dataclass(frozen=True)
class ShiftOp:
    """Restriction of the n-fold elementary shift to the symmetric space."""

    n: int
    u: Fraction
    matrix: ExactMatrix


@lru_cache(maxsize=None)
def shift_op(n: int, u: Fraction, params: ModelParams) -> ShiftOp:
    u = rat(u)
    a1 = ExactMatrix([[1, 0], [-params.alpha * u, 1]])
    full = a1
    for _ in range(n - 1):
        full = kron(full, a1)
    basis = sym_basis(n)
    mat = mat_mul(mat_mul(basis.project, full), basis.embed)
    return ShiftOp(n, u, mat)


def r11v(d: ScalarLike, params: ModelParams) -> ExactMatrix:
    """Eleven-vertex weight matrix at spectral parameter d."""
    d = rat(d)
    al = params.alpha
    return ExactMatrix(
        [
            [d + 1, 0, 0, 0],
            [al * d, d, 1, 0],
            [-al * d, 1, d, 0],
            [al * al * d, al * d, -al * d, d + 1],
        ]
    )


def similarity_fused(
    n: int, m: int, u: ScalarLike, v: ScalarLike, params: ModelParams
) -> ExactMatrix:
    """[A(u) (x) A(v)] R(u - v) [A(u) (x) A(v)]^(-1) on the restricted spaces.

    Inverses are shift operators at the negated argument (group property),
    so the whole conjugation stays exact.
    """
    u, v = rat(u), rat(v)
    left = kron(shift_op(n, u, params).matrix, shift_op(m, v, params).matrix)
    right = kron(shift_op(n, -u, params).matrix, shift_op(m, -v, params).matrix)
    return mat_mul(mat_mul(left, fuse_nm(n, m, u - v, params)), right)


def psi_const(n: int, a: int, b: int, params: ModelParams) -> ExactPolynomial:
    """Spectral-parameter-free intertwining polynomial of the shifted family."""
    d = b - a
    if abs(d) > n or (n + d) % 2:
        return ExactPolynomial.zero()
    n_plus = (n + d) // 2
    n_minus = (n - d) // 2
    alpha, s, t = params.alpha, params.s, params.t
    roots = [alpha * (n - a - 2 * p + 1 - t) for p in range(1, n_plus + 1)]
    roots += [alpha * (n + a - 2 * q + 1 + s) for q in range(1, n_minus + 1)]
    return ExactPolynomial.from_roots(roots).scale((-1) ** n)
