"""Exact computations with symmetric Frobenius algebras, their module categories
and Morita contexts, over Q and prime fields."""

from __future__ import annotations

from .algebra import (
    Algebra,
    central_primitive_idempotents,
    change_basis,
    cyclic_group_table,
    ground_algebra,
    group_algebra,
    is_semisimple,
    matrix_algebra,
    opposite,
    power_algebra,
    product_algebra,
)
from .equivalence import CYPresentation, FrobeniusAlgebra, reconstruct_frobenius, rep_fg, roundtrip_check
from .errors import FrobCYError
from .forms import FrobeniusForm, is_frobenius, is_symmetric, matrix_trace_form, weighted_trace_form
from .linalg import QQ, GF, Field, Matrix
from .modules import Bimodule, LeftModule, decompose, hom_basis, simple_modules, tensor_over_A
from .morita import MoritaContext, check_cy_functor, context_from_progenerator, is_compatible
from .trace import certify_cy, hs_trace, hs_trace_via_dual_basis

__version__ = "0.1.0"

__all__ = [
    "Algebra", "Bimodule", "CYPresentation", "Field", "FrobCYError", "FrobeniusAlgebra", "FrobeniusForm",
    "GF", "LeftModule", "Matrix", "MoritaContext", "QQ", "central_primitive_idempotents", "certify_cy",
    "change_basis", "check_cy_functor", "context_from_progenerator", "cyclic_group_table", "decompose",
    "ground_algebra", "group_algebra", "hom_basis", "hs_trace", "hs_trace_via_dual_basis", "is_compatible",
    "is_frobenius", "is_semisimple", "is_symmetric", "matrix_algebra", "matrix_trace_form", "opposite",
    "power_algebra", "product_algebra", "reconstruct_frobenius", "rep_fg", "roundtrip_check",
    "simple_modules", "tensor_over_A", "weighted_trace_form",
]
