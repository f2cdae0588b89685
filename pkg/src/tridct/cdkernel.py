"""Vector three-term recurrence and the Christoffel-Darboux kernel.

With ``T_k = (T_{0,k}, T_{1,k-1}, ..., T_{k,0})`` the shift recurrences take
the block form

    x_i T_k = A_{k,i} T_{k+1} + B_{k,i} T_k + C_{k,i} T_{k-1}.

The blocks are assembled from exact rational coefficients by folding the four
neighbors of every entry; they are never typed in by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from tridct.cheb2d import eval_T_table, eval_T_vector_theta, shift_coefficients, theta_to_x

# Closest the two points may be in the chosen coordinate before the
# difference quotient is considered unreliable.
DEGENERATE_GAP = 1e-12


class DegenerateInputError(ValueError):
    """The divided-difference form of the kernel is undefined for these points."""


def _to_float(rows) -> np.ndarray:
    out = np.zeros((len(rows), len(rows[0]) if rows else 0))
    for r, row in enumerate(rows):
        out[r, :] = [float(v) for v in row]
    return out


@dataclass(frozen=True)
class RecurrenceMatrices:
    """Blocks of the degree-``k`` recurrence in direction ``i``.

    The ``*_exact`` tuples hold the rational entries; ``A``, ``B``, ``C`` are
    their float images with shapes ``(k+1, k+2)``, ``(k+1, k+1)``, ``(k+1, k)``.
    """

    k: int
    i: int
    A_exact: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    B_exact: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    C_exact: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def A(self) -> np.ndarray:
        return _to_float(self.A_exact)

    @property
    def B(self) -> np.ndarray:
        return _to_float(self.B_exact)

    @property
    def C(self) -> np.ndarray:
        return _to_float(self.C_exact)

    def residual(self, theta1, theta2) -> float:
        """Max-norm residual of the block recurrence at angle-coordinate points.

        The polynomial blocks come from the cosine form, so the residual
        measures the matrices and not the recurrence evaluator.
        """
        k = self.k
        x1, x2 = theta_to_x(np.atleast_1d(theta1), np.atleast_1d(theta2))
        xi = x1 if self.i == 1 else x2
        lhs = xi * eval_T_vector_theta(k, theta1, theta2)
        rhs = self.A @ eval_T_vector_theta(k + 1, theta1, theta2)
        rhs = rhs + self.B @ eval_T_vector_theta(k, theta1, theta2)
        if k > 0:
            rhs = rhs + self.C @ eval_T_vector_theta(k - 1, theta1, theta2)
        return float(np.abs(lhs - rhs).max())


def build_recurrence_matrices(k: int, i: int) -> RecurrenceMatrices:
    """Assemble ``A_{k,i}``, ``B_{k,i}``, ``C_{k,i}`` from the folded shift rules.

    >>> build_recurrence_matrices(1, 1).B
    array([[0.5, 0. ],
           [0. , 0. ]])
    """
    if i not in (1, 2):
        raise ValueError(f"direction must be 1 or 2, got {i!r}")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    zero = Fraction(0)
    a = [[zero] * (k + 2) for _ in range(k + 1)]
    b = [[zero] * (k + 1) for _ in range(k + 1)]
    c = [[zero] * k for _ in range(k + 1)]
    bucket = {k + 1: a, k: b, k - 1: c}
    for (m, deg), row in shift_coefficients(k, i).items():
        for pos, coef in row.items():
            bucket[deg][m][pos] += coef
    freeze = lambda rows: tuple(tuple(r) for r in rows)
    return RecurrenceMatrices(k=k, i=i, A_exact=freeze(a), B_exact=freeze(b), C_exact=freeze(c))


def weight_block(k: int) -> np.ndarray:
    """Diagonal of ``H_k``: ``[1/2]`` for ``k = 0``, else ``1/8, 1/16, ..., 1/16, 1/8``."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return np.array([0.5])
    h = np.full(k + 1, 1.0 / 16.0)
    h[0] = h[-1] = 1.0 / 8.0
    return h


@dataclass(frozen=True)
class WeightMatrices:
    n: int
    H_blocks: List[np.ndarray] = field(repr=False)

    @property
    def H_oplus_diag(self) -> np.ndarray:
        """Diagonal of the block sum of the inverses ``H_0^-1, ..., H_{n-1}^-1``."""
        return np.concatenate([1.0 / h for h in self.H_blocks])

    @property
    def H_oplus(self) -> np.ndarray:
        return np.diag(self.H_oplus_diag)


def build_weights(n: int) -> WeightMatrices:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return WeightMatrices(n=n, H_blocks=[weight_block(k) for k in range(n)])


def kernel_direct(n: int, x, y) -> float:
    """``sum_{k<n} T_k(x)^T H_k^-1 T_k(y)`` by explicit summation."""
    tx = eval_T_table(n - 1, x[0], x[1])
    ty = eval_T_table(n - 1, y[0], y[1])
    total = 0.0
    for k in range(n):
        hinv = 1.0 / weight_block(k)
        for m in range(k + 1):
            total += float(tx[(m, k - m)] * hinv[m] * ty[(m, k - m)])
    return total


def cd_kernel(n: int, x, y, i: int = 1) -> float:
    """Christoffel-Darboux closed form of the reproducing kernel.

    Uses the divided difference in coordinate ``i``::

        [(A T_n(x))^T H^-1 T_{n-1}(y) - T_{n-1}(x)^T H^-1 A T_n(y)] / (x_i - y_i)

    with ``A = A_{n-1,i}`` and ``H = H_{n-1}``.

    Raises
    ------
    DegenerateInputError
        If ``|x_i - y_i| < 1e-12``; use :func:`kernel_direct` there.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if i not in (1, 2):
        raise ValueError(f"direction must be 1 or 2, got {i!r}")
    gap = float(x[i - 1]) - float(y[i - 1])
    if abs(gap) < DEGENERATE_GAP:
        raise DegenerateInputError(f"|x_{i} - y_{i}| = {abs(gap):.3g} is too small")
    a = build_recurrence_matrices(n - 1, i).A
    hinv = 1.0 / weight_block(n - 1)
    tx = eval_T_table(n, x[0], x[1])
    ty = eval_T_table(n, y[0], y[1])

    def block(table, d):
        return np.array([float(table[(m, d - m)]) for m in range(d + 1)])

    lhs = (a @ block(tx, n)) @ (hinv * block(ty, n - 1))
    rhs = block(tx, n - 1) @ (hinv * (a @ block(ty, n)))
    return float((lhs - rhs) / gap)
