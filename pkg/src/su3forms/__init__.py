"""Exterior-algebra kernel for SU(3) structures on R^6 and a numerical
verification suite for the nearly Kahler six-sphere."""

from su3forms.forms import (
    EXACT,
    FLOAT,
    AlgebraError,
    DecompositionError,
    DegreeError,
    Form,
    ModeError,
    contract,
    evaluate,
    hodge_star,
    inner,
    wedge,
)
from su3forms.structure import (
    Endo,
    alpha_map,
    complex_structure,
    decompose_anti_endo,
    decompose_three_form,
    decompose_two_form,
    endo_act,
    form_to_sym_minus,
    lefschetz_contract,
    omega,
    psi_minus,
    psi_plus,
    sym_minus_to_form,
    type_project,
    volume_form,
)
from su3forms.deformation import (
    DeformationParams,
    InconsistentJetError,
    SU3Jet,
    check_jet_consistency,
    jet_to_params,
    params_to_jet,
)
from su3forms.report import CheckResult, VerificationReport
from su3forms.identities import run_algebra_suite
from su3forms.suites import (
    sphere_deformation,
    verify_cl_identities,
    verify_gray,
    verify_linearized,
    verify_linearized_basis,
    verify_spectral,
)

__all__ = [
    "EXACT",
    "FLOAT",
    "AlgebraError",
    "CheckResult",
    "DecompositionError",
    "DeformationParams",
    "DegreeError",
    "Endo",
    "Form",
    "InconsistentJetError",
    "ModeError",
    "SU3Jet",
    "VerificationReport",
    "alpha_map",
    "check_jet_consistency",
    "complex_structure",
    "contract",
    "decompose_anti_endo",
    "decompose_three_form",
    "decompose_two_form",
    "endo_act",
    "evaluate",
    "form_to_sym_minus",
    "hodge_star",
    "inner",
    "jet_to_params",
    "lefschetz_contract",
    "omega",
    "params_to_jet",
    "psi_minus",
    "psi_plus",
    "run_algebra_suite",
    "sphere_deformation",
    "sym_minus_to_form",
    "type_project",
    "verify_cl_identities",
    "verify_gray",
    "verify_linearized",
    "verify_linearized_basis",
    "verify_spectral",
    "volume_form",
    "wedge",
]

__version__ = "0.1.0"
