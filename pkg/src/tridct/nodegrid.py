"""Sampling nodes of the triangle transform.

For a transform size ``n`` the nodes are the ``n(n+1)/2`` common zeros of all
``T_{k,l}`` with ``k + l = n``. In angle coordinates they are

    (k / 2n, j / 4n),  k = 0..n-1,  j odd in 1..2n-1,  j >= 2k,

and they are stored in lexicographic ``(k, j)`` order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from tridct.cheb2d import eval_T_theta, theta_to_x_exact

ORDERING = "node-lex-kj"


@dataclass(frozen=True)
class NodeGrid:
    """Immutable node set for one transform size.

    ``k`` and ``j`` are the integer numerators of the angle coordinates
    ``(k / 2n, j / 4n)``; the float arrays are derived from them once, the
    x-coordinates with exact reduction of the cosine arguments.
    """

    n: int
    k: np.ndarray = field(repr=False)
    j: np.ndarray = field(repr=False)
    theta1: np.ndarray = field(repr=False)
    theta2: np.ndarray = field(repr=False)
    x1: np.ndarray = field(repr=False)
    x2: np.ndarray = field(repr=False)
    order: str = ORDERING

    def __len__(self) -> int:
        return len(self.k)

    @property
    def size(self) -> int:
        return len(self.k)

    def theta_exact(self) -> List[Tuple[Fraction, Fraction]]:
        """Angle coordinates as reduced fractions."""
        return [(Fraction(int(a), 2 * self.n), Fraction(int(b), 4 * self.n))
                for a, b in zip(self.k, self.j)]

    @property
    def theta(self) -> np.ndarray:
        return np.column_stack([self.theta1, self.theta2])

    @property
    def x(self) -> np.ndarray:
        return np.column_stack([self.x1, self.x2])


def node_count(n: int) -> int:
    return n * (n + 1) // 2


def build_nodes(n: int) -> NodeGrid:
    """Enumerate the common zeros for transform size ``n``.

    Parameters
    ----------
    n : int
        Transform size, ``n >= 1``.

    Returns
    -------
    NodeGrid
        ``n(n+1)/2`` nodes ordered by ``(k, j)``.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    pairs = [(k, j) for k in range(n) for j in range(1, 2 * n, 2) if j >= 2 * k]
    k = np.array([p[0] for p in pairs], dtype=np.int64)
    j = np.array([p[1] for p in pairs], dtype=np.int64)
    for arr in (k, j):
        arr.setflags(write=False)
    # One correctly rounded division per coordinate, straight from the numerators.
    theta1 = k / (2 * n)
    theta2 = j / (4 * n)
    xs = [theta_to_x_exact(Fraction(a, 2 * n), Fraction(b, 4 * n)) for a, b in pairs]
    x1 = np.array([p.x1 for p in xs])
    x2 = np.array([p.x2 for p in xs])
    for arr in (theta1, theta2, x1, x2):
        arr.setflags(write=False)
    return NodeGrid(n=n, k=k, j=j, theta1=theta1, theta2=theta2, x1=x1, x2=x2)


def verify_common_zeros(grid: NodeGrid) -> float:
    """Largest ``|T_{k,l}(alpha)|`` over all nodes and all ``k + l = n``."""
    n = grid.n
    return max(
        float(np.abs(eval_T_theta((m, n - m), grid.theta1, grid.theta2)).max())
        for m in range(n + 1)
    )


def min_pairwise_distance(grid: NodeGrid) -> float:
    """Smallest Euclidean distance between two distinct x-nodes (inf for one node)."""
    if len(grid) < 2:
        return float("inf")
    pts = grid.x
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())
