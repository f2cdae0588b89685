"""Numerical self-checks behind ``tridct verify``.

Each check measures one residual over a range of sizes and compares it with a
tolerance. The suites are cheap enough to run up to ``n_max = 16`` in seconds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from tridct.aspmodel import build_shift_matrices
from tridct.cdkernel import build_recurrence_matrices, cd_kernel, kernel_direct
from tridct.cheb2d import (
    canonicalize,
    check_decomposition,
    eval_T_table,
    eval_T_theta,
    neighbors,
    random_theta,
    theta_to_x,
)
from tridct.nodegrid import build_nodes, min_pairwise_distance, node_count, verify_common_zeros
from tridct.xform import build_plan

SEED = 20240917
POINTS = 100


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float
    seconds: float = 0.0
    # Checks with a lower bound (e.g. node separation) pass when value > tol.
    lower_bound: bool = False

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value > self.tol if self.lower_bound else self.value < self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        op = ">" if self.lower_bound else "<"
        return f"{status}  {self.name:<32} {self.value:.3e} {op} {self.tol:.1e}  ({self.seconds:.2f}s)"


def _rng():
    return np.random.default_rng(SEED)


def node_count_residual(n_max: int) -> float:
    return float(max(abs(len(build_nodes(n)) - node_count(n)) for n in range(1, n_max + 1)))


def common_zero_residual(n_max: int) -> float:
    return max(verify_common_zeros(build_nodes(n)) for n in range(1, n_max + 1))


def node_separation(n_max: int) -> float:
    return min(min_pairwise_distance(build_nodes(n)) for n in range(2, max(n_max, 2) + 1))


def folding_residual(bound: int = 8) -> float:
    t1, t2 = random_theta(POINTS, _rng())
    worst = 0.0
    for k in range(-bound, bound + 1):
        for l in range(-bound, bound + 1):
            c = canonicalize((k, l))
            worst = max(worst, float(np.abs(eval_T_theta((k, l), t1, t2) - eval_T_theta(c, t1, t2)).max()))
    return worst


def recurrence_residual(max_degree: int) -> float:
    """Scalar shift rules checked on the cosine form."""
    t1, t2 = random_theta(POINTS, _rng())
    x1, x2 = theta_to_x(t1, t2)
    worst = 0.0
    for d in range(max_degree + 1):
        for k in range(d + 1):
            value = eval_T_theta((k, d - k), t1, t2)
            for direction, xi in ((1, x1), (2, x2)):
                rhs = sum(eval_T_theta(t, t1, t2) for t in neighbors((k, d - k), direction)) / 4
                worst = max(worst, float(np.abs(xi * value - rhs).max()))
    return worst


def recurrence_path_residual(max_degree: int) -> float:
    """Polynomial (recurrence) evaluation against the cosine form."""
    t1, t2 = random_theta(POINTS, _rng())
    table = eval_T_table(max_degree, *theta_to_x(t1, t2))
    return max(float(np.abs(v - eval_T_theta(idx, t1, t2)).max()) for idx, v in table.items())


def decomposition_residual(max_degree: int = 4, n_max: int = 4) -> float:
    t1, t2 = random_theta(POINTS, _rng())
    return max(
        check_decomposition(k, d - k, n, t1, t2)
        for n in range(n_max + 1) for d in range(max_degree + 1) for k in range(d + 1)
    )


def block_recurrence_residual(max_degree: int) -> float:
    rng = _rng()
    worst = 0.0
    for k in range(max_degree + 1):
        for i in (1, 2):
            t1, t2 = random_theta(POINTS, rng)
            worst = max(worst, build_recurrence_matrices(k, i).residual(t1, t2))
    return worst


def christoffel_darboux_residual(n_max: int) -> float:
    rng = _rng()
    worst = 0.0
    for n in range(1, n_max + 1):
        t1, t2 = random_theta(2 * POINTS, rng)
        x1, x2 = theta_to_x(t1, t2)
        for p in range(POINTS):
            x = (x1[2 * p], x2[2 * p])
            y = (x1[2 * p + 1], x2[2 * p + 1])
            direct = kernel_direct(n, x, y)
            for i in (1, 2):
                if abs(x[i - 1] - y[i - 1]) < 1e-6:
                    continue
                worst = max(worst, abs(cd_kernel(n, x, y, i) - direct) / (1 + abs(direct)))
    return worst


def _plan_residuals(n_max: int):
    out = {"diag": 0.0, "inverse": 0.0, "dense": 0.0, "orth": 0.0, "parseval": 0.0, "dmin": np.inf}
    rng = _rng()
    for n in range(1, n_max + 1):
        plan = build_plan(n, diagonality_tol=np.inf)
        eye = np.eye(plan.N)
        out["diag"] = max(out["diag"], plan.gram_offdiag)
        out["inverse"] = max(out["inverse"], float(np.abs(plan.F @ plan.F_inv - eye).sum(axis=1).max()))
        out["dense"] = max(out["dense"], float(np.abs(plan.F_inv - np.linalg.inv(plan.F)).max()))
        out["orth"] = max(out["orth"], float(np.abs(plan.F_orth.T @ plan.F_orth - eye).sum(axis=1).max()))
        v = rng.standard_normal(plan.N)
        out["parseval"] = max(out["parseval"],
                              abs(np.linalg.norm(plan.F_orth @ v) - np.linalg.norm(v)) / np.linalg.norm(v))
        out["dmin"] = min(out["dmin"], float(plan.d_diag.min()))
    return out


def shift_residuals(n_max: int):
    comm = 0.0
    spec = 0.0
    for n in range(1, n_max + 1):
        plan = build_plan(n)
        s = build_shift_matrices(plan)
        comm = max(comm, float(np.abs(s.S1 @ s.S2 - s.S2 @ s.S1).max()))
        for mat, coord in ((s.S1, plan.grid.x1), (s.S2, plan.grid.x2)):
            ev = np.linalg.eigvals(mat)
            spec = max(spec, float(np.abs(np.sort_complex(ev) - np.sort(coord)).max()))
    return comm, spec


def run_all(n_max: int, tol: float = 1e-9) -> List[CheckResult]:
    """All suites for sizes up to ``n_max``; ``tol`` applies to the transform identities."""
    results: List[CheckResult] = []

    def timed(name: str, fn: Callable[[], float], bound: float, lower: bool = False):
        start = time.perf_counter()
        value = fn()
        results.append(CheckResult(name, value, bound, time.perf_counter() - start, lower))

    cd_n = min(n_max, 12)
    deg = min(n_max, 12)
    timed("node count", lambda: node_count_residual(n_max), 0.5)
    timed("common zeros", lambda: common_zero_residual(n_max), 1e-10)
    timed("node separation", lambda: node_separation(n_max), 1e-8, lower=True)
    timed("index folding", folding_residual, 1e-12)
    timed("shift recurrences", lambda: recurrence_residual(deg), 1e-12)
    timed("recurrence evaluation path", lambda: recurrence_path_residual(deg), 1e-10)
    timed("decomposition property", lambda: decomposition_residual(min(n_max, 4), min(n_max, 4)), 1e-10)
    timed("block recurrence", lambda: block_recurrence_residual(deg), 1e-12)
    timed("Christoffel-Darboux kernel", lambda: christoffel_darboux_residual(cd_n), tol)

    start = time.perf_counter()
    plan = _plan_residuals(n_max)
    elapsed = time.perf_counter() - start
    results.append(CheckResult("Gram diagonality", plan["diag"], tol, elapsed))
    results.append(CheckResult("closed-form inverse", plan["inverse"], tol))
    results.append(CheckResult("inverse vs dense solver", plan["dense"], 10 * tol))
    results.append(CheckResult("orthogonality", plan["orth"], tol))
    results.append(CheckResult("norm preservation", plan["parseval"], tol))
    results.append(CheckResult("D positivity (min entry)", plan["dmin"], 0.0, lower_bound=True))

    start = time.perf_counter()
    comm, spec = shift_residuals(min(n_max, 12))
    elapsed = time.perf_counter() - start
    results.append(CheckResult("shift commutation", comm, tol, elapsed))
    results.append(CheckResult("shift spectra", spec, 10 * tol))
    return results
