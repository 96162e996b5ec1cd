"""Numerical analysis of uninorms: sections, discontinuities, the characterizing
set-valued function, class membership and the structural claim battery."""

from ..axioms import AxiomReport, GridSpec, check_axioms
from .classify import Classification, classify, neither_witness
from .sections import (
    ContinuityResult,
    DiscontinuitySet,
    Jump,
    SectionProfile,
    SectionScan,
    SectionStatus,
    SideContinuity,
    SideKind,
    continuity_scan,
    discontinuity_points,
    scan_sections,
    section_profile,
    side_continuity,
)
from .structure import boundary_params, e_band, level_pairs, power_limit, thresholds, underlying_ops
from .svf import SetValuedFunction, SVFPiece, characterizing_svf, constant_svf, validate_svf
from .theorems import ClaimResult, ClaimStatus, TheoremSuiteReport, verify_theorems

__all__ = [
    "AxiomReport", "GridSpec", "check_axioms",
    "Classification", "classify", "neither_witness",
    "ContinuityResult", "DiscontinuitySet", "Jump", "SectionProfile", "SectionScan", "SectionStatus",
    "SideContinuity", "SideKind", "continuity_scan", "discontinuity_points", "scan_sections",
    "section_profile", "side_continuity",
    "boundary_params", "e_band", "level_pairs", "power_limit", "thresholds", "underlying_ops",
    "SetValuedFunction", "SVFPiece", "characterizing_svf", "constant_svf", "validate_svf",
    "ClaimResult", "ClaimStatus", "TheoremSuiteReport", "verify_theorems",
]
