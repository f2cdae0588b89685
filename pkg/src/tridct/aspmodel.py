"""Signal-model layer: shifts, filtering and the visualization graph.

The filter algebra is the polynomial ring modulo the ideal of the node set.
Nothing is reduced symbolically: every algebra element is represented by its
values at the nodes, where multiplication is pointwise. Coefficient-space
operators are obtained by conjugating with the synthesis matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

import numpy as np

from tridct.cheb2d import MultiIndex, eval_T_theta, neighbors, recurrence_table
from tridct.xform import TransformPlan, analyze, synthesize

LABELS = {1: "x1", 2: "x2"}


@dataclass(frozen=True)
class ShiftMatrices:
    """Multiplication by ``x1`` and ``x2`` acting on coefficient column vectors.

    Column ``r`` of ``S1`` holds the coefficients of ``x1 * T_{basis[r]}``
    reduced modulo the node ideal.
    """

    n: int
    S1: np.ndarray = field(repr=False)
    S2: np.ndarray = field(repr=False)

    def __getitem__(self, direction: int) -> np.ndarray:
        return {1: self.S1, 2: self.S2}[direction]


def build_shift_matrices(plan: TransformPlan) -> ShiftMatrices:
    """``S_i = (F^T)^-1 diag(alpha_i) F^T`` with ``(F^T)^-1 = H F D``."""
    g = plan.grid
    to_coeffs = plan.h_diag[:, None] * plan.F * plan.d_diag[None, :]
    s1 = to_coeffs @ (g.x1[:, None] * plan.F.T)
    s2 = to_coeffs @ (g.x2[:, None] * plan.F.T)
    return ShiftMatrices(plan.n, s1, s2)


class FilterSpec(dict):
    """Filter ``h = sum h_{k,l} T_{k,l}`` stored as ``{(k, l): coefficient}``."""

    def __init__(self, coefficients: Mapping[Tuple[int, int], float] = ()):
        super().__init__((MultiIndex(*idx), float(v)) for idx, v in dict(coefficients).items())

    @property
    def degree(self) -> int:
        return max((idx.degree for idx in self), default=0)

    def check_support(self, n: int) -> None:
        for idx in self:
            if idx.k < 0 or idx.l < 0 or idx.degree >= n:
                raise ValueError(f"filter index {tuple(idx)} outside the basis for n={n}")

    def frequency_response(self, plan: TransformPlan) -> np.ndarray:
        """Values of ``h`` at the nodes."""
        self.check_support(plan.n)
        g = plan.grid
        out = np.zeros(len(g))
        for idx, coef in self.items():
            out += coef * eval_T_theta(idx, g.theta1, g.theta2)
        return out


def apply_filter(plan: TransformPlan, h: FilterSpec, signal) -> np.ndarray:
    """Filter a node signal: multiply pointwise by the frequency response of ``h``."""
    if not isinstance(h, FilterSpec):
        h = FilterSpec(h)
    s = np.asarray(signal, dtype=float)
    if s.shape[0] != plan.N:
        raise ValueError(f"signal has length {s.shape[0]}, expected N={plan.N}")
    return h.frequency_response(plan) * s


def apply_filter_via_shifts(plan: TransformPlan, h: FilterSpec, signal,
                            shifts: ShiftMatrices = None) -> np.ndarray:
    """Same filter, computed in coefficient space as ``h(S1, S2)``.

    The matrix polynomial ``T_{k,l}(S1, S2)`` is built with the shift
    recurrences on matrix arguments.
    """
    if not isinstance(h, FilterSpec):
        h = FilterSpec(h)
    h.check_support(plan.n)
    shifts = shifts or build_shift_matrices(plan)
    table = recurrence_table(h.degree, shifts.S1, shifts.S2, one=np.eye(plan.N), mul=np.matmul)
    op = np.zeros((plan.N, plan.N))
    for idx, coef in h.items():
        op += coef * table[idx]
    return synthesize(plan, op @ analyze(plan, signal))


@dataclass(frozen=True)
class ModelGraph:
    """Undirected multigraph over the basis; one edge per (pair, shift label)."""

    vertices: List[MultiIndex]
    edges: List[Tuple[int, int, str]] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "vertices": [[int(k), int(l)] for k, l in self.vertices],
            "edges": [{"u": u, "v": v, "label": lab} for u, v, lab in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["graph triangle_model {"]
        for k, l in self.vertices:
            lines.append(f'  "{k},{l}" [label="T({k},{l})"];')
        for u, v, lab in self.edges:
            a, b = self.vertices[u], self.vertices[v]
            color = "blue" if lab == "x1" else "red"
            lines.append(f'  "{a.k},{a.l}" -- "{b.k},{b.l}" [label="{lab}", color={color}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def export_graph(plan_or_n) -> ModelGraph:
    """Visualization graph of the signal model.

    Every basis index is joined to each folded recurrence neighbor that is
    itself in the basis, separately for the two shifts. Folding can produce
    self-loops.
    """
    n = plan_or_n if isinstance(plan_or_n, int) else plan_or_n.n
    vertices = [MultiIndex(m, d - m) for d in range(n) for m in range(d + 1)]
    pos: Dict[MultiIndex, int] = {v: i for i, v in enumerate(vertices)}
    seen = set()
    edges = []
    for u, idx in enumerate(vertices):
        for direction, label in LABELS.items():
            for t in neighbors(idx, direction):
                if t not in pos:
                    continue
                key = (min(u, pos[t]), max(u, pos[t]), label)
                if key not in seen:
                    seen.add(key)
                    edges.append(key)
    return ModelGraph(vertices, edges)
