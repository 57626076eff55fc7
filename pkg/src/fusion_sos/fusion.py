"""Fusion of the elementary R-matrix into higher-spin operators.

An operator with n+1 by m+1 edge states is produced by sandwiching ordered
products of elementary 4x4 factors between symmetrizers, then restricting to
the symmetric subspaces.  The restriction uses the unnormalized monomial
basis, so the matrices here agree entrywise with the difference-operator
realization in :mod:`fusion_sos.polyrep` without any diagonal gauge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from .exactcore import ExactMatrix, kron, mat_mul, rat
from .vertex import ModelParams, check_ybe_vertex, embed_two_site, r7v


def _bits(index: int, n: int) -> tuple[int, ...]:
    """Big-endian bit word of length n; bit 1 means basis vector e2."""
    return tuple((index >> (n - 1 - s)) & 1 for s in range(n))


@lru_cache(maxsize=None)
def symmetrizer(n: int) -> ExactMatrix:
    """Projector onto the symmetric component of (C^2)^(x n), by permutation averaging."""
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = 1 << n
    inv_fact = Fraction(1)
    for k in range(2, n + 1):
        inv_fact /= k
    out = [[Fraction(0)] * dim for _ in range(dim)]
    for col in range(dim):
        word = _bits(col, n)
        for sigma in permutations(range(n)):
            row = 0
            for s in range(n):
                row = (row << 1) | word[sigma[s]]
            out[row][col] += inv_fact
    return ExactMatrix(out)


@dataclass(frozen=True)
class SymBasis:
    """Embedding of the (n+1)-dimensional symmetric space into (C^2)^(x n).

    Column k of ``embed`` is the symmetrization of the word with k copies of
    e2, which corresponds to the monomial with k powers of the second
    variable; ``project`` recovers monomial coefficients.  They satisfy
    project @ embed = identity and embed @ project = symmetrizer.
    """

    n: int
    embed: ExactMatrix
    project: ExactMatrix


@lru_cache(maxsize=None)
def sym_basis(n: int) -> SymBasis:
    dim = 1 << n
    embed = [[Fraction(0)] * (n + 1) for _ in range(dim)]
    project = [[Fraction(0)] * dim for _ in range(n + 1)]
    for idx in range(dim):
        k = sum(_bits(idx, n))
        embed[idx][k] = Fraction(1, comb(n, k))
        project[k][idx] = Fraction(1)
    return SymBasis(n, ExactMatrix(embed), ExactMatrix(project))


def _sym_on_first(n: int, aux_dim: int) -> ExactMatrix:
    return kron(symmetrizer(n), ExactMatrix.identity(aux_dim))


def fusion_scalar(n: int, u: Fraction) -> Fraction:
    """Normalization prod_{j=1}^{n-1} (u + j) relating the raw ordered product
    to the difference-operator realization of the (n,1) operator.

    The raw product of elementary factors carries this extra scalar; dividing
    it out makes the fused operators agree entrywise with the polynomial
    realization and makes the face weights of the correspondence come out in
    their standard normalization.
    """
    out = Fraction(1)
    for j in range(1, n):
        out *= u + j
    return out


@lru_cache(maxsize=None)
def fuse_n1_unrestricted(n: int, u: Fraction, params: ModelParams) -> ExactMatrix:
    """The fused (n,1) operator on (C^2)^(x n) (x) C^2, before restriction."""
    u = rat(u)
    scale = fusion_scalar(n, u)
    if scale == 0:
        raise ZeroDivisionError(
            f"fusion normalization vanishes at u = {u}; the (n,1) product degenerates"
        )
    dims = tuple([2] * (n + 1))
    prod = None
    for i in range(1, n + 1):
        factor = embed_two_site(r7v(u + n - i, params), (i - 1, n), dims)
        prod = factor if prod is None else mat_mul(prod, factor)
    return mat_mul(_sym_on_first(n, 2), prod).scale(1 / scale)


@lru_cache(maxsize=None)
def fuse_n1(n: int, u: Fraction, params: ModelParams) -> ExactMatrix:
    """The fused (n,1) operator restricted to the symmetric space, 2(n+1) square."""
    basis = sym_basis(n)
    op = fuse_n1_unrestricted(n, rat(u), params)
    left = kron(basis.project, ExactMatrix.identity(2))
    right = kron(basis.embed, ExactMatrix.identity(2))
    return mat_mul(mat_mul(left, op), right)


@lru_cache(maxsize=None)
def fuse_nm_unrestricted(n: int, m: int, u: Fraction, params: ModelParams) -> ExactMatrix:
    """The fused (n,m) operator on (C^2)^(x (n+m)), before restriction.

    Products are evaluated in the full 2**(n+m)-dimensional space and only
    restricted at the end; intermediate factors need not preserve the
    symmetric subspaces until the outer projector acts.
    """
    u = rat(u)
    nslots = n + m
    dims = tuple([2] * nslots)
    sym_n_full = embed_op_on_slots(symmetrizer(n), range(n), nslots) if n > 1 else ExactMatrix.identity(1 << nslots)
    prod = None
    scale = Fraction(1)
    # Leftmost factor couples the last auxiliary slot at the undecremented argument.
    for j in range(m, 0, -1):
        scale *= fusion_scalar(n, u - (m - j))
        block = None
        for i in range(1, n + 1):
            factor = embed_two_site(r7v(u - (m - j) + n - i, params), (i - 1, n + j - 1), dims)
            block = factor if block is None else mat_mul(block, factor)
        block = mat_mul(sym_n_full, block)
        prod = block if prod is None else mat_mul(prod, block)
    if scale == 0:
        raise ZeroDivisionError(
            f"fusion normalization vanishes at u = {u}; the (n,m) product degenerates"
        )
    sym_m_full = embed_op_on_slots(symmetrizer(m), range(n, n + m), nslots) if m > 1 else ExactMatrix.identity(1 << nslots)
    return mat_mul(sym_m_full, prod).scale(1 / scale)


def embed_op_on_slots(op: ExactMatrix, slots, nslots: int) -> ExactMatrix:
    """Embed an operator acting on contiguous 2-dim slots, identity elsewhere."""
    slots = list(slots)
    k = len(slots)
    if op.rows != 1 << k:
        raise ValueError("operator size does not match slot count")
    before = slots[0]
    after = nslots - slots[-1] - 1
    if slots != list(range(before, before + k)):
        raise ValueError("slots must be contiguous")
    out = op
    if before:
        out = kron(ExactMatrix.identity(1 << before), out)
    if after:
        out = kron(out, ExactMatrix.identity(1 << after))
    return out


@lru_cache(maxsize=None)
def fuse_nm(n: int, m: int, u: Fraction, params: ModelParams) -> ExactMatrix:
    """The fused (n,m) operator restricted to its (n+1)(m+1)-dimensional space."""
    u = rat(u)
    op = fuse_nm_unrestricted(n, m, u, params)
    bn, bm = sym_basis(n), sym_basis(m)
    left = kron(bn.project, bm.project)
    right = kron(bn.embed, bm.embed)
    return mat_mul(mat_mul(left, op), right)


def symmetric_residual(n: int, m: int, u: Fraction, params: ModelParams) -> ExactMatrix:
    """(I - Pi_n Pi_m) applied to the unrestricted fused operator; zero iff contained."""
    op = fuse_nm_unrestricted(n, m, rat(u), params)
    nslots = n + m
    full = ExactMatrix.identity(1 << nslots)
    pi = full
    if n > 1:
        pi = mat_mul(pi, embed_op_on_slots(symmetrizer(n), range(n), nslots))
    if m > 1:
        pi = mat_mul(pi, embed_op_on_slots(symmetrizer(m), range(n, n + m), nslots))
    return mat_mul(full - pi, op)


def check_fused_ybe(k: int, n: int, l: int, u: Fraction, v: Fraction, params: ModelParams) -> bool:
    """Yang-Baxter test for the fused triple (k,n), (k,l), (n,l) at (u, v)."""
    u, v = rat(u), rat(v)
    dims = (k + 1, n + 1, l + 1)
    r12 = embed_two_site(fuse_nm(k, n, v, params), (0, 1), dims)
    r13 = embed_two_site(fuse_nm(k, l, u, params), (0, 2), dims)
    r23 = embed_two_site(fuse_nm(n, l, u - v, params), (1, 2), dims)
    return check_ybe_vertex(r12, r13, r23, dims)
