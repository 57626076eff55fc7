"""Intertwining vectors and the vertex-to-face-model correspondence.

The fused intertwining vectors convert the action of a fused R-operator into
face weights.  Expanding the image of one intertwining polynomial in the
basis of neighbouring ones is an exact linear solve, and the weights it
produces are the ground truth against which the closed-form and series
formulas in :mod:`fusion_sos.sos` are tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcore import (
    ExactMatrix,
    ExactPolynomial,
    ScalarLike,
    det,
    mat_mul,
    rat,
    solve_exact,
)
from .fusion import fuse_nm, sym_basis, symmetrizer
from .polyrep import intertwiner_poly, o_m_product_form
from .vertex import ModelParams


def _up_step_count(a: int, b: int, n: int):
    """Number of +1 steps on any unit-step path a -> b of length n, or None."""
    diff = b - a
    if abs(diff) > n or (n + diff) % 2:
        return None
    return (n + diff) // 2


def fused_intertwiner_tensor(
    n: int,
    u: ScalarLike,
    a: int,
    b: int,
    path,
    params: ModelParams,
) -> tuple[Fraction, ...]:
    """Symmetrized tensor product of elementary intertwining vectors.

    ``path`` is the height sequence (c_0 = a, ..., c_n = b) with unit steps,
    or "canonical" for all up-steps first.  The i-th factor (leftmost first)
    is the elementary vector at spectral argument u + n - 1 - i for the step
    c_i -> c_{i+1}; the result is a coordinate vector in the 2**n tensor
    space.
    """
    u = rat(u)
    ups = _up_step_count(a, b, n)
    if ups is None:
        return tuple(Fraction(0) for _ in range(1 << n))
    if path == "canonical":
        path = [a + i for i in range(ups + 1)]
        path += [path[-1] - i for i in range(1, n - ups + 1)]
    path = list(path)
    if len(path) != n + 1 or path[0] != a or path[-1] != b:
        raise ValueError("path must run from a to b in n unit steps")
    if any(abs(p - q) != 1 for p, q in zip(path, path[1:])):
        raise ValueError("path must move by one unit per step")

    alpha, s, t = params.alpha, params.s, params.t
    vec = [Fraction(1)]
    for i in range(n):
        arg = u + n - 1 - i
        lvl = path[i]
        if path[i + 1] == lvl + 1:
            second = alpha * (arg - lvl - t)
        else:
            second = alpha * (arg + lvl + s)
        vec = [x * comp for x in vec for comp in (Fraction(1), second)]
    tensor = ExactMatrix.column(vec)
    symmetrized = mat_mul(symmetrizer(n), tensor) if n > 1 else tensor
    return symmetrized.column_vector()


def intertwiner_sym_coords(
    n: int, u: ScalarLike, a: int, b: int, params: ModelParams
) -> tuple[Fraction, ...]:
    """The fused vector projected to the (n+1)-dimensional monomial basis."""
    full = fused_intertwiner_tensor(n, u, a, b, "canonical", params)
    project = sym_basis(n).project
    return mat_mul(project, ExactMatrix.column(full)).column_vector()


@dataclass(frozen=True)
class IntertwinerSet:
    """A complete family of fused intertwining vectors sharing one anchor height.

    ``direction`` is "outgoing" for {psi(u)^anchor_b : b} and "incoming" for
    {psi(u)^b_anchor : b}; ``vectors`` are the polynomials in height order.
    """

    n: int
    u: Fraction
    anchor: int
    direction: str
    vectors: tuple[ExactPolynomial, ...]


def intertwiner_set(
    n: int, u: ScalarLike, anchor: int, direction: str, params: ModelParams
) -> IntertwinerSet:
    u = rat(u)
    if direction == "outgoing":
        polys = [intertwiner_poly(n, u, anchor, anchor - n + 2 * j, params) for j in range(n + 1)]
    elif direction == "incoming":
        polys = [intertwiner_poly(n, u, anchor - n + 2 * j, anchor, params) for j in range(n + 1)]
    else:
        raise ValueError("direction must be 'outgoing' or 'incoming'")
    return IntertwinerSet(n, u, anchor, direction, tuple(polys))


def independence_determinant(family: IntertwinerSet) -> Fraction:
    """Determinant of the coefficient matrix; nonzero certifies independence."""
    dim = family.n + 1
    cols = [p.coeff_vector(dim) for p in family.vectors]
    return det(ExactMatrix(list(zip(*cols))))


@lru_cache(maxsize=None)
def _solve_weights(
    n: int, m: int, a: int, b: int, c: int, u: Fraction, params: ModelParams
) -> tuple[tuple[int, Fraction], ...]:
    source = intertwiner_poly(n, 0, a, b, params)
    if source.is_zero():
        raise ValueError("heights a, b are not adjacent at distance n")
    operator = o_m_product_form(m, u, b, c, params, n)
    image = operator.apply(source)
    dim = n + 1
    heights = [c - n + 2 * j for j in range(dim)]
    basis_cols = [intertwiner_poly(n, 0, bp, c, params).coeff_vector(dim) for bp in heights]
    basis = ExactMatrix(list(zip(*basis_cols)))
    rhs = ExactMatrix.column(image.coeff_vector(dim))
    solution = solve_exact(basis, rhs)
    return tuple((bp, solution[j, 0]) for j, bp in enumerate(heights))


def solve_weights_from_relation(
    n: int, m: int, a: int, b: int, c: int, u: ScalarLike, params: ModelParams
) -> dict[int, Fraction]:
    """Face weights from first principles: apply the height-changing operator
    to one intertwining polynomial and expand in the basis at the far corner.

    Returns the weight for every height b' adjacent to c at distance n; the
    expansion is a square exact solve, and weights automatically vanish for
    b' not adjacent to a at distance m.
    """
    return dict(_solve_weights(n, m, a, b, c, rat(u), params))


def check_vertex_sos_matrix(
    n: int,
    m: int,
    a: int,
    b: int,
    c: int,
    u: ScalarLike,
    v: ScalarLike,
    params: ModelParams,
) -> bool:
    """Exact test of the correspondence at the level of restricted tensors.

    The fused operator at spectral difference u - v, applied to the pair of
    fused intertwining vectors, must equal the weight-weighted sum of the
    transposed pair.
    """
    u, v = rat(u), rat(v)
    r = fuse_nm(n, m, u - v, params)
    psi_n = intertwiner_sym_coords(n, u, a, b, params)
    psi_m = intertwiner_sym_coords(m, v, b, c, params)
    vec = [x * y for x in psi_n for y in psi_m]
    lhs = mat_mul(r, ExactMatrix.column(vec)).column_vector()

    weights = solve_weights_from_relation(n, m, a, b, c, u - v, params)
    rhs = [Fraction(0)] * len(lhs)
    for bp, weight in weights.items():
        if weight == 0:
            continue
        left = intertwiner_sym_coords(n, u, bp, c, params)
        right = intertwiner_sym_coords(m, v, a, bp, params)
        for i, x in enumerate(left):
            for j, y in enumerate(right):
                rhs[i * (m + 1) + j] += weight * x * y
    return list(lhs) == rhs
