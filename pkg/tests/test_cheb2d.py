import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as C

from tridct.cheb2d import (
    FoldingError,
    MultiIndex,
    ThetaPoint,
    canonicalize,
    check_decomposition,
    cospi,
    eval_T_table,
    eval_T_theta,
    eval_T_vector,
    eval_T_x,
    neighbors,
    random_theta,
    recurrence_table,
    theta_to_x,
)


def cheb1(n, t):
    return C.chebval(t, [0] * n + [1])


def product_coords(t1, t2):
    # x1 = u^2 + v^2 - 1 and x2 = u v for these two cosines.
    return np.cos(np.pi * t1), np.cos(np.pi * (t1 - 2 * t2))


class TestThetaToX:
    def test_origin(self):
        assert theta_to_x(0.0, 0.0) == (1.0, 1.0)

    def test_right_corner(self):
        x = theta_to_x(0.5, 0.5)
        assert x.x1 == pytest.approx(-1.0, abs=1e-15)
        assert x.x2 == pytest.approx(0.0, abs=1e-15)

    def test_quarter(self):
        x = theta_to_x(0.0, 0.25)
        assert x.x1 == pytest.approx(0.0, abs=1e-15)
        assert x.x2 == pytest.approx(0.0, abs=1e-15)

    def test_product_coordinates(self, thetas):
        u, v = product_coords(*thetas)
        x1, x2 = theta_to_x(*thetas)
        np.testing.assert_allclose(x1, u**2 + v**2 - 1, atol=1e-14)
        np.testing.assert_allclose(x2, u * v, atol=1e-14)

    def test_image_bounded(self, thetas):
        x1, x2 = theta_to_x(*thetas)
        assert np.all(np.abs(x1) <= 1) and np.all(np.abs(x2) <= 1)


def test_fundamental_triangle_membership():
    assert ThetaPoint(0.0, 0.5).in_fundamental_triangle()
    assert ThetaPoint(0.1, 0.2).in_fundamental_triangle()
    assert not ThetaPoint(0.3, 0.2).in_fundamental_triangle()
    assert not ThetaPoint(0.1, 0.6).in_fundamental_triangle()


@pytest.mark.parametrize("r, expected", [
    (Fraction(0), 1.0), (Fraction(1, 2), 0.0), (Fraction(1), -1.0), (Fraction(-1, 2), 0.0),
    (Fraction(3, 2), 0.0), (Fraction(1, 3), 0.5), (Fraction(7, 4), math.sqrt(0.5)),
])
def test_cospi(r, expected):
    assert cospi(r) == pytest.approx(expected, abs=1e-16)


class TestEvalTheta:
    def test_constant(self, thetas):
        np.testing.assert_array_equal(eval_T_theta((0, 0), *thetas), 1.0)

    def test_degree_one_are_coordinates(self, thetas):
        x1, x2 = theta_to_x(*thetas)
        np.testing.assert_allclose(eval_T_theta((1, 0), *thetas), x1, atol=1e-15)
        np.testing.assert_allclose(eval_T_theta((0, 1), *thetas), x2, atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_pure_indices_match_products(self, n, thetas):
        t1, t2 = thetas
        np.testing.assert_allclose(
            eval_T_theta((n, 0), t1, t2),
            np.cos(2 * n * np.pi * t2) * np.cos(2 * n * np.pi * (t1 - t2)), atol=1e-14)
        np.testing.assert_allclose(
            eval_T_theta((0, n), t1, t2),
            np.cos(n * np.pi * t1) * np.cos(n * np.pi * (t1 - 2 * t2)), atol=1e-14)

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_vanishes_on_grid(self, n):
        for k in range(n):
            for j in range(1, 2 * n, 2):
                if j >= 2 * k:
                    assert abs(eval_T_theta((n, 0), k / (2 * n), j / (4 * n))) < 1e-14

    def test_range_bound(self, thetas):
        for k in range(-6, 7):
            for l in range(-6, 7):
                assert np.abs(eval_T_theta((k, l), *thetas)).max() <= 1.0 + 1e-15


class TestCanonicalize:
    @pytest.mark.parametrize("idx, expected", [((-1, 0), (1, 0)), ((1, -2), (1, 0)), ((3, 2), (3, 2)),
                                               ((0, -1), (0, 1)), ((-1, 2), (1, 0))])
    def test_examples(self, idx, expected):
        assert canonicalize(idx) == expected

    def test_examples_agree_numerically(self, thetas):
        for idx in [(-1, 0), (1, -2), (-1, 2)]:
            np.testing.assert_allclose(eval_T_theta(idx, *thetas), eval_T_theta((1, 0), *thetas), atol=1e-14)

    def test_box(self, thetas):
        for k in range(-8, 9):
            for l in range(-8, 9):
                c = canonicalize((k, l))
                assert c.k >= 0 and c.l >= 0
                np.testing.assert_allclose(eval_T_theta((k, l), *thetas), eval_T_theta(c, *thetas),
                                           atol=1e-12, rtol=0)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(-500, 500), st.integers(-500, 500))
    def test_idempotent_and_nonnegative(self, k, l):
        c = canonicalize((k, l))
        assert c.k >= 0 and c.l >= 0
        assert canonicalize(c) == c

    @settings(max_examples=100, deadline=None)
    @given(st.integers(-40, 40), st.integers(-40, 40),
           st.floats(0, 0.5), st.floats(0, 0.5))
    def test_preserves_value(self, k, l, a, b):
        t1, t2 = min(a, b), max(a, b)
        assert eval_T_theta((k, l), t1, t2) == pytest.approx(eval_T_theta(canonicalize((k, l)), t1, t2), abs=1e-11)

    def test_folding_error_is_runtime_error(self):
        assert issubclass(FoldingError, RuntimeError)


class TestRecurrences:
    def test_neighbors_rejects_direction(self):
        with pytest.raises(ValueError):
            neighbors((1, 1), 3)

    def test_shift_rules_on_cosine_form(self, thetas):
        x1, x2 = theta_to_x(*thetas)
        worst = 0.0
        for d in range(13):
            for k in range(d + 1):
                value = eval_T_theta((k, d - k), *thetas)
                for direction, xi in ((1, x1), (2, x2)):
                    rhs = sum(eval_T_theta(t, *thetas) for t in neighbors((k, d - k), direction)) / 4
                    worst = max(worst, np.abs(xi * value - rhs).max())
        assert worst < 1e-12

    def test_x1_x2_at_origin(self):
        # x1 * T_00 folds to T_10 four times; x2 * T_00 to T_01.
        assert neighbors((0, 0), 1) == (MultiIndex(1, 0),) * 4
        assert neighbors((0, 0), 2) == (MultiIndex(0, 1),) * 4


class TestEvalX:
    def test_constant(self):
        assert eval_T_x((0, 0), 0.3, -0.2) == 1.0

    def test_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            eval_T_x((-1, 0), 0.1, 0.1)

    def test_t11_relation(self, thetas):
        x1, x2 = theta_to_x(*thetas)
        # x2 * T_10 folds to (T_11 + T_01) / 2.
        lhs = 4 * x1 * x2
        rhs = 2 * eval_T_x((1, 1), x1, x2) + 2 * x2
        np.testing.assert_allclose(lhs, rhs, atol=1e-13)
        np.testing.assert_allclose(eval_T_x((1, 1), x1, x2), eval_T_theta((1, 1), *thetas), atol=1e-13)

    def test_t20_closed_form(self, thetas):
        t1, t2 = thetas
        x1, x2 = theta_to_x(t1, t2)
        np.testing.assert_allclose(eval_T_x((2, 0), x1, x2),
                                   np.cos(4 * np.pi * t2) * np.cos(4 * np.pi * (t1 - t2)), atol=1e-13)

    def test_against_cosine_form(self, thetas):
        x1, x2 = theta_to_x(*thetas)
        table = eval_T_table(12, x1, x2)
        assert len(table) == 13 * 14 // 2
        for idx, v in table.items():
            assert np.abs(v - eval_T_theta(idx, *thetas)).max() < 1e-10, idx

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_against_univariate_chebyshev(self, n, thetas):
        u, v = product_coords(*thetas)
        x1, x2 = theta_to_x(*thetas)
        table = eval_T_table(n, x1, x2)
        np.testing.assert_allclose(table[(0, n)], cheb1(n, u) * cheb1(n, v), atol=1e-11)
        np.testing.assert_allclose(table[(n, 0)], (cheb1(2 * n, u) + cheb1(2 * n, v)) / 2, atol=1e-11)

    def test_matrix_arguments(self, rng):
        # Commuting diagonal matrices reduce to elementwise evaluation.
        t1, t2 = random_theta(5, rng)
        x1, x2 = theta_to_x(t1, t2)
        table = recurrence_table(4, np.diag(x1), np.diag(x2), one=np.eye(5), mul=np.matmul)
        for idx, m in table.items():
            np.testing.assert_allclose(np.diag(m), eval_T_theta(idx, t1, t2), atol=1e-13)


class TestVector:
    def test_degree_zero(self):
        np.testing.assert_array_equal(eval_T_vector(0, 0.2, 0.4), [1.0])

    def test_degree_one(self):
        np.testing.assert_allclose(eval_T_vector(1, 0.2, 0.4), [0.4, 0.2])

    def test_degree_two_vanishes_on_n2_nodes(self):
        for t1, t2 in [(0, 1 / 8), (0, 3 / 8), (1 / 4, 3 / 8)]:
            x = theta_to_x(t1, t2)
            assert np.abs(eval_T_vector(2, x.x1, x.x2)).max() < 1e-14


class TestDecomposition:
    def test_trivial_cases(self, thetas):
        for n in range(4):
            assert check_decomposition(0, 0, n, *thetas) == 0.0
        for k, l in [(1, 0), (0, 1), (2, 3)]:
            assert check_decomposition(k, l, 1, *thetas) < 1e-12

    def test_k1_l1_n2(self, thetas):
        assert check_decomposition(1, 1, 2, *thetas) < 1e-10

    def test_all_small(self, thetas):
        worst = max(check_decomposition(k, d - k, n, *thetas)
                    for n in range(5) for d in range(5) for k in range(d + 1))
        assert worst < 1e-10

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            check_decomposition(-1, 0, 2, 0.1, 0.2)
