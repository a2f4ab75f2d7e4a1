"""Exact-arithmetic cone geometry and cohomology-bound verification for
rank-2 surface lattices."""

from .bounds import BoundConstants, b_of_x, c_of_x, coeff_floor, m_of_x
from .cones import ConePosition, NefConeDescription, is_big, is_nef, nef_cone, position
from .lattice import (
    CheckResult,
    DivisorClass,
    IntersectionForm,
    ModelFormatError,
    ModelKind,
    ModelValidationError,
    SurfaceModel,
    ValidationReport,
    emit_model,
    fraction_str,
    generator_coords,
    load_model,
    model_from_dict,
    model_to_dict,
    pair,
    parse_model,
    self_int,
    to_fraction,
    validate,
)
from .reference import model_a, model_b
from .riemann_roch import BoundForm, entails, euler_char, h1_bound_form, l_value, serre_h2_bound
from .verify import (
    Certificate,
    DichotomyBranch,
    ProofCase,
    Slack,
    VerificationReport,
    Violation,
    certify,
    oracle_certify,
    random_model,
    report_to_csv,
    report_to_dict,
    report_to_json,
    verify_box,
)

__version__ = "0.1.0"

__all__ = [
    "BoundConstants", "BoundForm", "Certificate", "CheckResult", "ConePosition",
    "DichotomyBranch", "DivisorClass", "IntersectionForm", "ModelFormatError",
    "ModelKind", "ModelValidationError", "NefConeDescription", "ProofCase",
    "Slack", "SurfaceModel", "ValidationReport", "VerificationReport", "Violation",
    "b_of_x", "c_of_x", "certify", "coeff_floor", "emit_model", "entails",
    "euler_char", "fraction_str", "generator_coords", "h1_bound_form", "is_big",
    "is_nef", "l_value", "load_model", "m_of_x", "model_a", "model_b",
    "model_from_dict", "model_to_dict", "nef_cone", "oracle_certify", "pair",
    "parse_model", "position", "random_model", "report_to_csv", "report_to_dict",
    "report_to_json", "self_int", "serre_h2_bound", "to_fraction", "validate",
    "verify_box",
]
