"""Triangle cosine transform: Fourier matrix, closed-form inverse, orthogonal variant.

Conventions
-----------
``F[r, c] = T_{basis[r]}(node[c])``: rows run over the basis in degree-major
order, columns over the nodes in ``(k, j)`` order. A coefficient vector ``c``
is therefore synthesized into node samples as ``F.T @ c``, and analysis is the
inverse of that map.

With ``H`` the block sum of the inverse weight blocks and ``G = F.T @ H @ F``
(diagonal), the inverse is ``F^-1 = D F.T H`` where ``D = diag(G)^-1``, and the
orthogonal transform is ``sqrt(H) F sqrt(D)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from tridct.cdkernel import build_weights
from tridct.cheb2d import MultiIndex, eval_T_theta
from tridct.nodegrid import NodeGrid, build_nodes

log = logging.getLogger(__name__)

BASIS_ORDERING = "basis-degree-major"

# Off-diagonal mass of F^T H F relative to its smallest diagonal entry.
DIAGONALITY_TOL = 1e-9
# Diagonal entries of F^T H F smaller than this contradict invertibility.
PIVOT_TOL = 1e-12


class PlanError(RuntimeError):
    """The Gram matrix ``F^T H F`` failed a structural check."""


@dataclass(frozen=True)
class BasisOrder:
    n: int
    indices: List[MultiIndex] = field(repr=False)

    def __len__(self) -> int:
        return len(self.indices)

    def position(self, idx) -> int:
        """Row of ``idx`` in the degree-major order."""
        k, l = idx
        if k < 0 or l < 0 or k + l >= self.n:
            raise KeyError(f"{tuple(idx)} is not in the basis for n={self.n}")
        d = k + l
        return d * (d + 1) // 2 + k


def basis_order(n: int) -> BasisOrder:
    """``T_{0,0}; T_{0,1}, T_{1,0}; T_{0,2}, T_{1,1}, T_{2,0}; ...`` up to degree ``n-1``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return BasisOrder(n, [MultiIndex(m, d - m) for d in range(n) for m in range(d + 1)])


@dataclass(frozen=True)
class TransformPlan:
    """Precomputed matrices for one transform size ``n`` (``N = n(n+1)/2``).

    ``h_diag`` and ``d_diag`` are the diagonals of the weight matrix ``H``
    (basis-indexed) and of ``D`` (node-indexed); the dense forms are exposed
    as properties.
    """

    n: int
    basis: BasisOrder = field(repr=False)
    grid: NodeGrid = field(repr=False)
    F: np.ndarray = field(repr=False)
    h_diag: np.ndarray = field(repr=False)
    gram_diag: np.ndarray = field(repr=False)
    d_diag: np.ndarray = field(repr=False)
    F_inv: np.ndarray = field(repr=False)
    F_orth: np.ndarray = field(repr=False)
    gram_offdiag: float = 0.0

    @property
    def N(self) -> int:
        return len(self.basis)

    @property
    def H_oplus(self) -> np.ndarray:
        return np.diag(self.h_diag)

    @property
    def D(self) -> np.ndarray:
        return np.diag(self.d_diag)

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "basis_ordering": BASIS_ORDERING,
            "node_ordering": self.grid.order,
            "basis": [list(map(int, idx)) for idx in self.basis.indices],
            "nodes": [[int(k), int(j)] for k, j in zip(self.grid.k, self.grid.j)],
        }


def fourier_matrix(basis: BasisOrder, grid: NodeGrid) -> np.ndarray:
    """``F[r, c] = T_{basis[r]}`` at node ``c``, from the cosine form."""
    F = np.empty((len(basis), len(grid)))
    for r, idx in enumerate(basis.indices):
        F[r] = eval_T_theta(idx, grid.theta1, grid.theta2)
    return F


def build_plan(n: int, diagonality_tol: float = DIAGONALITY_TOL) -> TransformPlan:
    """Build every matrix of the size-``n`` transform.

    Raises
    ------
    PlanError
        If a diagonal entry of ``F^T H F`` is (numerically) zero, or its
        off-diagonal part exceeds ``diagonality_tol`` relative to the smallest
        diagonal entry.
    """
    basis = basis_order(n)
    grid = build_nodes(n)
    F = fourier_matrix(basis, grid)
    h = build_weights(n).H_oplus_diag

    gram = F.T @ (h[:, None] * F)
    diag = np.diag(gram).copy()
    if np.abs(diag).min() < PIVOT_TOL:
        raise PlanError(f"n={n}: Gram diagonal entry {np.abs(diag).min():.3g} vanishes")
    off = np.abs(gram - np.diag(diag)).max() if len(diag) > 1 else 0.0
    rel_off = float(off / np.abs(diag).min())
    if rel_off > diagonality_tol:
        raise PlanError(f"n={n}: F^T H F off-diagonal ratio {rel_off:.3g} exceeds {diagonality_tol:g}")
    if (diag <= 0).any():
        log.warning("n=%d: %d nonpositive Gram entries; orthogonal transform undefined",
                    n, int((diag <= 0).sum()))

    d = 1.0 / diag
    F_inv = d[:, None] * F.T * h[None, :]
    with np.errstate(invalid="ignore"):
        F_orth = np.sqrt(h)[:, None] * F * np.sqrt(d)[None, :]

    for arr in (F, h, diag, d, F_inv, F_orth):
        arr.setflags(write=False)
    return TransformPlan(
        n=n, basis=basis, grid=grid, F=F, h_diag=h, gram_diag=diag, d_diag=d,
        F_inv=F_inv, F_orth=F_orth, gram_offdiag=rel_off,
    )


def _check_length(plan: TransformPlan, v, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape[0] != plan.N:
        raise ValueError(f"{what} has length {v.shape[0]}, expected N={plan.N} for n={plan.n}")
    return v


def synthesize(plan: TransformPlan, coeffs) -> np.ndarray:
    """Node samples of ``sum_r coeffs[r] * T_{basis[r]}``."""
    return plan.F.T @ _check_length(plan, coeffs, "spectrum")


def analyze(plan: TransformPlan, signal) -> np.ndarray:
    """Coefficients whose synthesis reproduces ``signal`` at every node.

    Computed as ``H F D s``, i.e. the transpose of the closed-form inverse.
    """
    s = _check_length(plan, signal, "signal")
    return plan.h_diag * (plan.F @ (plan.d_diag * s))


def apply_orthogonal(plan: TransformPlan, v, inverse: bool = False) -> np.ndarray:
    """Multiply by the orthogonal transform (or its transpose when ``inverse``)."""
    if (plan.d_diag <= 0).any():
        raise ValueError(f"n={plan.n}: D has nonpositive entries, sqrt(D) is not real")
    v = _check_length(plan, v, "vector")
    return plan.F_orth.T @ v if inverse else plan.F_orth @ v


def node_function(plan: TransformPlan, func) -> np.ndarray:
    """Sample ``func(x1, x2)`` on the plan's nodes."""
    return np.asarray(func(plan.grid.x1, plan.grid.x2), dtype=float)


def truncate_spectrum(coeffs: np.ndarray, keep: int) -> np.ndarray:
    """Zero all but the ``keep`` largest-magnitude coefficients (stable tie order)."""
    coeffs = np.asarray(coeffs, dtype=float)
    if keep >= len(coeffs):
        return coeffs.copy()
    order = np.argsort(-np.abs(coeffs), kind="stable")
    out = np.zeros_like(coeffs)
    out[order[:keep]] = coeffs[order[:keep]]
    return out

