"""Discrete cosine transform on triangles from bivariate B2 Chebyshev polynomials."""

from tridct.aspmodel import FilterSpec, ShiftMatrices, apply_filter, build_shift_matrices, export_graph
from tridct.cdkernel import build_recurrence_matrices, build_weights, cd_kernel, kernel_direct
from tridct.cheb2d import (
    MultiIndex,
    ThetaPoint,
    XPoint,
    canonicalize,
    check_decomposition,
    eval_T_theta,
    eval_T_vector,
    eval_T_x,
    theta_to_x,
)
from tridct.nodegrid import NodeGrid, build_nodes, verify_common_zeros
from tridct.xform import TransformPlan, analyze, apply_orthogonal, build_plan, synthesize

__version__ = "0.1.0"

__all__ = [
    "FilterSpec",
    "MultiIndex",
    "NodeGrid",
    "ShiftMatrices",
    "ThetaPoint",
    "TransformPlan",
    "XPoint",
    "analyze",
    "apply_filter",
    "apply_orthogonal",
    "build_nodes",
    "build_plan",
    "build_recurrence_matrices",
    "build_shift_matrices",
    "build_weights",
    "canonicalize",
    "cd_kernel",
    "check_decomposition",
    "eval_T_theta",
    "eval_T_vector",
    "eval_T_x",
    "export_graph",
    "kernel_direct",
    "synthesize",
    "theta_to_x",
    "verify_common_zeros",
]
