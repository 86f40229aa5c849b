"""Deterministic UAV flight-authorization risk assessment and documentation."""

from .engine import (
    adjacent_area_extent,
    apply_air_mitigations,
    apply_ground_mitigations,
    classify_category,
    compute_kinetic_energy,
    containment_verdict,
    determine_sail,
    initial_arc,
    intrinsic_grc,
    tmpr_requirement,
)
from .model import (
    OperationSpec,
    ValidationReport,
    load_spec_file,
    spec_from_dict,
    validate_operation_spec,
    validate_uav_spec,
)
from .workflow import AssessmentSnapshot, Session, create_session, evaluate_all, what_if

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "OperationSpec",
    "ValidationReport",
    "load_spec_file",
    "spec_from_dict",
    "validate_operation_spec",
    "validate_uav_spec",
    "classify_category",
    "compute_kinetic_energy",
    "intrinsic_grc",
    "apply_ground_mitigations",
    "initial_arc",
    "apply_air_mitigations",
    "tmpr_requirement",
    "determine_sail",
    "adjacent_area_extent",
    "containment_verdict",
    "AssessmentSnapshot",
    "Session",
    "create_session",
    "evaluate_all",
    "what_if",
]
