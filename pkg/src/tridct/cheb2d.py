"""Bivariate Chebyshev polynomials of type B2.

Two independent evaluation paths are provided:

* the closed "generalized cosine" form in angle coordinates (``eval_T_theta``),
  which is an average of four cosines and is defined for every integer index;
* a polynomial evaluation in ``x = (x1, x2)`` driven by the two shift
  recurrences (``eval_T_x`` / ``eval_T_table``).

Indices leaving the nonnegative quadrant are folded back with the two
reflections ``s1: (k, l) -> (-k, 2k + l)`` and ``s2: (k, l) -> (k + l, -l)``,
both of which leave the four-cosine form invariant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, NamedTuple, Tuple

import numpy as np

TWO_PI = 2.0 * np.pi

# The reflection group has order 8; any orbit reaches the dominant cone in a
# handful of steps.
_MAX_FOLDS = 32


class MultiIndex(NamedTuple):
    """Index pair ``(k, l)`` of ``T_{k,l}``. Entries may be negative."""

    k: int
    l: int

    @property
    def degree(self) -> int:
        return self.k + self.l


class ThetaPoint(NamedTuple):
    theta1: float
    theta2: float

    def in_fundamental_triangle(self, atol: float = 0.0) -> bool:
        """Membership in ``F = {0 <= theta1 <= theta2 <= 1/2}``."""
        return -atol <= self.theta1 <= self.theta2 + atol and self.theta2 <= 0.5 + atol


class XPoint(NamedTuple):
    x1: float
    x2: float


class FoldingError(RuntimeError):
    """Raised when index folding fails to terminate."""


def theta_to_x(theta1, theta2):
    """Map angle coordinates to polynomial coordinates.

    Works elementwise on scalars or arrays and returns ``(x1, x2)``.
    """
    theta1 = np.asarray(theta1, dtype=float)
    theta2 = np.asarray(theta2, dtype=float)
    x1 = np.cos(TWO_PI * theta2) * np.cos(TWO_PI * (theta1 - theta2))
    x2 = np.cos(np.pi * theta1) * np.cos(np.pi * (theta1 - 2.0 * theta2))
    if x1.ndim == 0:
        return XPoint(float(x1), float(x2))
    return x1, x2


def cospi(r: Fraction) -> float:
    """``cos(pi * r)`` for rational ``r``, reduced exactly to the first octant.

    Quarter and half turns come out as exact 0.0 / +-1.0.
    """
    r = Fraction(r) % 2
    if r > 1:
        r = 2 - r
    sign = 1.0
    if r > Fraction(1, 2):
        r, sign = 1 - r, -1.0
    if r == Fraction(1, 2):
        return 0.0
    if r > Fraction(1, 4):
        return sign * float(np.sin(np.pi * float(Fraction(1, 2) - r)))
    return sign * float(np.cos(np.pi * float(r)))


def theta_to_x_exact(theta1: Fraction, theta2: Fraction) -> XPoint:
    """:func:`theta_to_x` for rational angles, with exact argument reduction."""
    x1 = cospi(2 * theta2) * cospi(2 * (theta1 - theta2))
    x2 = cospi(theta1) * cospi(theta1 - 2 * theta2)
    return XPoint(x1 + 0.0, x2 + 0.0)


def eval_T_theta(idx: Tuple[int, int], theta1, theta2):
    """Evaluate ``T_{k,l}`` from its four-cosine form.

    Parameters
    ----------
    idx : tuple of int
        ``(k, l)``; any integers, negative entries allowed.
    theta1, theta2 : float or ndarray
        Angle coordinates (broadcast against each other).

    Returns
    -------
    float or ndarray
    """
    k, l = idx
    theta1 = np.asarray(theta1, dtype=float)
    theta2 = np.asarray(theta2, dtype=float)
    out = 0.25 * (
        np.cos(TWO_PI * (k * theta1 + l * theta2))
        + np.cos(TWO_PI * ((k + l) * theta1 - l * theta2))
        + np.cos(TWO_PI * (k * theta1 - (2 * k + l) * theta2))
        + np.cos(TWO_PI * ((k + l) * theta1 - (2 * k + l) * theta2))
    )
    if out.ndim == 0:
        return float(out)
    return out


@lru_cache(maxsize=4096)
def canonicalize(idx: Tuple[int, int]) -> MultiIndex:
    """Fold an arbitrary integer index into the nonnegative quadrant.

    The result ``(k', l')`` satisfies ``T_{k,l} == T_{k',l'}`` identically.

    >>> canonicalize((-1, 0))
    MultiIndex(k=1, l=0)
    """
    k, l = int(idx[0]), int(idx[1])
    for _ in range(_MAX_FOLDS):
        if k >= 0 and l >= 0:
            return MultiIndex(k, l)
        if k < 0:
            k, l = -k, 2 * k + l
        else:
            k, l = k + l, -l
    raise FoldingError(f"folding of {tuple(idx)} did not terminate")


def neighbors(idx: Tuple[int, int], direction: int) -> Tuple[MultiIndex, ...]:
    """The four canonicalized indices appearing in ``x_i * T_{k,l}``.

    Each carries weight 1/4 in the expansion.
    """
    k, l = idx
    if direction == 1:
        raw = ((k + 1, l), (k - 1, l), (k - 1, l + 2), (k + 1, l - 2))
    elif direction == 2:
        raw = ((k, l + 1), (k, l - 1), (k - 1, l + 1), (k + 1, l - 1))
    else:
        raise ValueError(f"direction must be 1 or 2, got {direction!r}")
    return tuple(canonicalize(r) for r in raw)


def shift_coefficients(k: int, direction: int) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """Exact expansion of ``x_i * T_{m,k-m}`` for every ``m`` in degree ``k``.

    Returns ``{(row, degree): {position: coefficient}}`` keyed by the row
    ``m`` and the degree bucket (``k+1``, ``k`` or ``k-1``) of each folded
    neighbor; ``position`` is the neighbor's first index, which is its slot
    in the degree block.
    """
    out: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    quarter = Fraction(1, 4)
    for m in range(k + 1):
        for t in neighbors((m, k - m), direction):
            if t.degree not in (k - 1, k, k + 1):
                raise AssertionError(f"neighbor {t} of {(m, k - m)} left the degree band")
            slot = out.setdefault((m, t.degree), {})
            slot[t.k] = slot.get(t.k, Fraction(0)) + quarter
    return out


def shift_blocks(k: int, direction: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Float blocks ``(A, B, C)`` with ``x_i T_k = A T_{k+1} + B T_k + C T_{k-1}``."""
    a = np.zeros((k + 1, k + 2))
    b = np.zeros((k + 1, k + 1))
    c = np.zeros((k + 1, k))
    target = {k + 1: a, k: b, k - 1: c}
    for (m, deg), row in shift_coefficients(k, direction).items():
        for pos, coef in row.items():
            target[deg][m, pos] = float(coef)
    return a, b, c


@lru_cache(maxsize=256)
def _block_solver(k: int):
    a1, b1, c1 = shift_blocks(k, 1)
    a2, b2, c2 = shift_blocks(k, 2)
    # Both shift equations stacked; A1 over A2 has full column rank.
    left_inv = np.linalg.pinv(np.vstack([a1, a2]))
    return left_inv, (b1, c1), (b2, c2)


def _lincomb(coefs: np.ndarray, stack: np.ndarray) -> np.ndarray:
    return np.tensordot(coefs, stack, axes=(1, 0))


def recurrence_blocks(max_degree: int, x1, x2, one=1.0, mul: Callable = np.multiply):
    """Degree blocks ``[T_0, T_1, ..., T_max]`` from the shift recurrences.

    Block ``d`` is an array whose first axis runs over ``T_{0,d}, ..., T_{d,0}``.
    ``x1``/``x2`` may be scalars or arrays (elementwise evaluation), or a pair
    of commuting square matrices, in which case ``one`` is the identity and
    ``mul`` is ``np.matmul``.

    Block ``d + 1`` is recovered from both shift equations at degree ``d`` at
    once, using the least-squares left inverse of ``[A_{d,1}; A_{d,2}]``.
    Solving with one shift direction at a time loses accuracy much faster
    near the corner ``theta = (0, 0)``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    one = np.asarray(one, dtype=float)
    blocks = [one[np.newaxis]]
    if max_degree == 0:
        return blocks
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    blocks.append(np.stack([mul(x2, one), mul(x1, one)]))
    for d in range(1, max_degree):
        left_inv, (b1, c1), (b2, c2) = _block_solver(d)
        cur, prev = blocks[d], blocks[d - 1]
        rhs1 = mul(x1, cur) - _lincomb(b1, cur) - _lincomb(c1, prev)
        rhs2 = mul(x2, cur) - _lincomb(b2, cur) - _lincomb(c2, prev)
        blocks.append(_lincomb(left_inv, np.concatenate([rhs1, rhs2])))
    return blocks


def recurrence_table(max_degree: int, x1, x2, one=1.0, mul: Callable = np.multiply):
    """Same as :func:`recurrence_blocks`, keyed by :class:`MultiIndex`."""
    table = {}
    for d, block in enumerate(recurrence_blocks(max_degree, x1, x2, one, mul)):
        for m in range(d + 1):
            table[MultiIndex(m, d - m)] = block[m]
    return table


def eval_T_table(max_degree: int, x1, x2) -> Dict[MultiIndex, np.ndarray]:
    """Elementwise recurrence evaluation at points ``(x1, x2)``."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    one = np.ones(np.broadcast(x1, x2).shape)
    return recurrence_table(max_degree, x1, x2, one=one)


def eval_T_x(idx: Tuple[int, int], x1, x2):
    """Evaluate ``T_{k,l}`` as a polynomial in ``(x1, x2)``.

    ``idx`` must be canonical (both entries nonnegative).
    """
    idx = MultiIndex(*idx)
    if idx.k < 0 or idx.l < 0:
        raise ValueError(f"index {tuple(idx)} is not canonical")
    out = eval_T_table(idx.degree, x1, x2)[idx]
    if out.ndim == 0:
        return float(out)
    return out


def eval_T_vector(k: int, x1, x2) -> np.ndarray:
    """The degree-``k`` block ``(T_{0,k}, T_{1,k-1}, ..., T_{k,0})``.

    Stacked along the first axis, so arrays of points give shape ``(k+1, ...)``.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    table = eval_T_table(k, x1, x2)
    return np.stack([table[MultiIndex(m, k - m)] for m in range(k + 1)])


def eval_T_vector_theta(k: int, theta1, theta2) -> np.ndarray:
    """Same block as :func:`eval_T_vector`, from the cosine form."""
    return np.stack([np.asarray(eval_T_theta((m, k - m), theta1, theta2)) for m in range(k + 1)])


def check_decomposition(k: int, l: int, n: int, theta1, theta2):
    """Residual of the composition rule ``T_{k,l}(T_{n,0}, T_{0,n}) = T_{nk,nl}``.

    The outer polynomial is evaluated through the recurrence path at the point
    ``(T_{n,0}(x), T_{0,n}(x))``; the inner ones and the right side use the
    cosine form.
    """
    if min(k, l, n) < 0:
        raise ValueError("k, l, n must be nonnegative")
    y1 = eval_T_theta((n, 0), theta1, theta2)
    y2 = eval_T_theta((0, n), theta1, theta2)
    lhs = eval_T_x((k, l), y1, y2)
    rhs = eval_T_theta((n * k, n * l), theta1, theta2)
    return np.abs(np.asarray(lhs) - np.asarray(rhs)).max()


def random_theta(size: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform samples from the fundamental triangle."""
    u = rng.random((size, 2)) * 0.5
    u.sort(axis=1)
    return u[:, 0], u[:, 1]
