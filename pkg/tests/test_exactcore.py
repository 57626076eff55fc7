import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusion_sos.exactcore import (
    ExactMatrix,
    ExactPolynomial,
    InconsistentSystemError,
    ShapeMismatchError,
    SingularMatrixError,
    kron,
    lagrange_interpolate,
    mat_mul,
    poly_shift,
    rat_to_str,
    solve_exact,
)

from conftest import rand_rat

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=20
)


def schoolbook_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Independent triple-loop product used as the oracle for mat_mul."""
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = Fraction(0)
            for k in range(a.cols):
                acc += a[i, k] * b[k, j]
            row.append(acc)
        rows.append(row)
    return ExactMatrix(rows)


class TestMatMul:
    def test_identity(self):
        i2 = ExactMatrix.identity(2)
        assert mat_mul(i2, i2) == i2

    def test_permutation_column_swap(self):
        a = ExactMatrix([[1, 2], [3, 4]])
        p = ExactMatrix([[0, 1], [1, 0]])
        assert mat_mul(a, p) == ExactMatrix([[2, 1], [4, 3]])

    def test_random_vs_schoolbook(self):
        rng = random.Random(11)
        for _ in range(10):
            a = ExactMatrix([[rand_rat(rng, 5) for _ in range(3)] for _ in range(3)])
            b = ExactMatrix([[rand_rat(rng, 5) for _ in range(3)] for _ in range(3)])
            assert mat_mul(a, b) == schoolbook_product(a, b)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            mat_mul(ExactMatrix.identity(2), ExactMatrix.identity(3))


class TestKron:
    def test_identity(self):
        assert kron(ExactMatrix.identity(2), ExactMatrix.identity(2)) == ExactMatrix.identity(4)

    def test_unit_factor(self):
        a = ExactMatrix([[1, 2], [3, 4]])
        assert kron(a, ExactMatrix.identity(1)) == a
        assert kron(ExactMatrix.identity(1), a) == a

    def test_mixed_shape_against_definition(self):
        rng = random.Random(12)
        a = ExactMatrix([[rand_rat(rng, 5) for _ in range(3)] for _ in range(2)])
        b = ExactMatrix([[rand_rat(rng, 5) for _ in range(2)] for _ in range(4)])
        k = kron(a, b)
        for i in range(a.rows):
            for j in range(a.cols):
                for p in range(b.rows):
                    for q in range(b.cols):
                        assert k[i * b.rows + p, j * b.cols + q] == a[i, j] * b[p, q]

    def test_product_identity(self):
        rng = random.Random(13)
        a = ExactMatrix([[rand_rat(rng, 4) for _ in range(2)] for _ in range(3)])
        c = ExactMatrix([[rand_rat(rng, 4) for _ in range(3)] for _ in range(2)])
        b = ExactMatrix([[rand_rat(rng, 4) for _ in range(3)] for _ in range(2)])
        d = ExactMatrix([[rand_rat(rng, 4) for _ in range(2)] for _ in range(3)])
        assert mat_mul(kron(a, b), kron(c, d)) == kron(mat_mul(a, c), mat_mul(b, d))


class TestSolve:
    def test_identity(self):
        b = ExactMatrix.column([1, 2, 3])
        assert solve_exact(ExactMatrix.identity(3), b) == b

    def test_diagonal(self):
        a = ExactMatrix([[2, 0], [0, 3]])
        assert solve_exact(a, ExactMatrix.column([4, 9])) == ExactMatrix.column([2, 3])

    def test_round_trip_random(self):
        rng = random.Random(14)
        for _ in range(6):
            while True:
                a = ExactMatrix([[rand_rat(rng, 5) for _ in range(4)] for _ in range(4)])
                try:
                    x = ExactMatrix.column([rand_rat(rng, 5) for _ in range(4)])
                    assert solve_exact(a, mat_mul(a, x)) == x
                    break
                except SingularMatrixError:
                    continue

    def test_singular(self):
        a = ExactMatrix([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError):
            solve_exact(a, ExactMatrix.column([1, 1]))

    def test_overdetermined_consistent(self):
        a = ExactMatrix([[1, 0], [0, 1], [1, 1]])
        assert solve_exact(a, ExactMatrix.column([2, 3, 5])) == ExactMatrix.column([2, 3])

    def test_overdetermined_inconsistent(self):
        a = ExactMatrix([[1, 0], [0, 1], [1, 1]])
        with pytest.raises(InconsistentSystemError):
            solve_exact(a, ExactMatrix.column([2, 3, 6]))


class TestPolyShift:
    def test_linear(self):
        z = ExactPolynomial((0, 1))
        assert poly_shift(z, 5) == ExactPolynomial((5, 1))

    def test_square(self):
        z2 = ExactPolynomial((0, 0, 1))
        assert poly_shift(z2, 1) == ExactPolynomial((1, 2, 1))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(rationals, min_size=1, max_size=6), rationals)
    def test_round_trip(self, coeffs, h):
        p = ExactPolynomial(coeffs)
        assert poly_shift(poly_shift(p, h), -h) == p

    @settings(max_examples=30, deadline=None)
    @given(st.lists(rationals, min_size=1, max_size=5), rationals, rationals)
    def test_group_action(self, coeffs, h1, h2):
        p = ExactPolynomial(coeffs)
        assert poly_shift(poly_shift(p, h1), h2) == poly_shift(p, h1 + h2)


class TestFieldAxioms:
    @settings(max_examples=40, deadline=None)
    @given(rationals, rationals, rationals)
    def test_associativity_and_distributivity(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @settings(max_examples=20, deadline=None)
    @given(rationals, rationals)
    def test_division_inverts_multiplication(self, x, y):
        if y != 0:
            assert (x / y) * y == x


def test_lagrange_interpolation_recovers_polynomial():
    p = ExactPolynomial((Fraction(1, 3), -2, 0, 5))
    pts = [(x, p(x)) for x in range(4)]
    assert lagrange_interpolate(pts) == p


def test_scalar_string_round_trip():
    assert rat_to_str(Fraction(-3, 7)) == "-3/7"
    assert rat_to_str(Fraction(4)) == "4"
    assert Fraction("-3/7") == Fraction(-3, 7)


def test_matrix_json_round_trip():
    rng = random.Random(15)
    m = ExactMatrix([[rand_rat(rng) for _ in range(3)] for _ in range(2)])
    assert ExactMatrix.from_json(m.to_json()) == m
