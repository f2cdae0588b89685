from fractions import Fraction

import numpy as np
import pytest

from tridct.cdkernel import (
    DegenerateInputError,
    build_recurrence_matrices,
    build_weights,
    cd_kernel,
    kernel_direct,
    weight_block,
)
from tridct.cheb2d import random_theta, theta_to_x

q, h = Fraction(1, 4), Fraction(1, 2)


def displayed_A1(k):
    """Banded pattern of A_{k,1}: 1/2 at the first row's second slot, last row 1/2 then 0 then 1/4."""
    a = [[Fraction(0)] * (k + 2) for _ in range(k + 1)]
    a[0][1] = h
    for m in range(1, k):
        a[m][m - 1] = q
        a[m][m + 1] = q
    a[k][k - 1] = h
    a[k][k + 1] = q
    return a


def test_b11():
    m = build_recurrence_matrices(1, 1)
    assert m.B_exact == ((h, 0), (0, 0))


def test_k0_shapes():
    m = build_recurrence_matrices(0, 1)
    assert m.A.shape == (1, 2) and m.B.shape == (1, 1) and m.C.shape == (1, 0)
    np.testing.assert_array_equal(m.A, [[0, 1]])


@pytest.mark.parametrize("k", range(2, 7))
def test_a_matches_display(k):
    m = build_recurrence_matrices(k, 1)
    assert [list(r) for r in m.A_exact] == displayed_A1(k)


@pytest.mark.parametrize("k", range(2, 7))
def test_b_and_c_match_display(k):
    m = build_recurrence_matrices(k, 1)
    b = np.zeros((k + 1, k + 1))
    b[k - 1, k - 1] = 0.25
    np.testing.assert_array_equal(m.B, b)
    c = np.zeros((k + 1, k))
    c[0, 1] = 0.5
    for r in range(1, k):
        c[r, r - 1] = 0.25
        if r + 1 < k:
            c[r, r + 1] = 0.25
    c[k, k - 1] = 0.25
    np.testing.assert_array_equal(m.C, c)


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("k", range(0, 13))
def test_block_recurrence_residual(k, i, thetas):
    assert build_recurrence_matrices(k, i).residual(*thetas) < 1e-12


def test_rejects_direction():
    with pytest.raises(ValueError):
        build_recurrence_matrices(2, 3)


def test_weight_blocks():
    np.testing.assert_array_equal(weight_block(0), [0.5])
    np.testing.assert_array_equal(weight_block(1), [1 / 8, 1 / 8])
    np.testing.assert_array_equal(weight_block(3), [1 / 8, 1 / 16, 1 / 16, 1 / 8])


@pytest.mark.parametrize("n, expected", [(1, [2]), (2, [2, 8, 8]), (3, [2, 8, 8, 8, 16, 8])])
def test_h_oplus(n, expected):
    w = build_weights(n)
    np.testing.assert_array_equal(w.H_oplus, np.diag(expected))


def test_h_oplus_size():
    for n in range(1, 10):
        d = build_weights(n).H_oplus_diag
        assert d.shape == (n * (n + 1) // 2,) and np.all(d > 0)


def test_direct_kernel_n1():
    assert kernel_direct(1, (0.3, -0.1), (0.5, 0.2)) == 2.0


def _pairs(rng, count):
    t1, t2 = random_theta(2 * count, rng)
    x1, x2 = theta_to_x(t1, t2)
    return [((x1[2 * p], x2[2 * p]), (x1[2 * p + 1], x2[2 * p + 1])) for p in range(count)]


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_christoffel_darboux(n, rng):
    for x, y in _pairs(rng, 100):
        direct = kernel_direct(n, x, y)
        for i in (1, 2):
            assert abs(cd_kernel(n, x, y, i) - direct) / (1 + abs(direct)) < 1e-9


def test_kernel_symmetric(rng):
    for x, y in _pairs(rng, 20):
        assert cd_kernel(6, x, y) == pytest.approx(cd_kernel(6, y, x), rel=1e-9)


def test_degenerate_input():
    with pytest.raises(DegenerateInputError):
        cd_kernel(3, (0.2, 0.1), (0.2, 0.4), 1)
    # The other coordinate still works.
    assert np.isfinite(cd_kernel(3, (0.2, 0.1), (0.2, 0.4), 2))
