"""Kernel vector, perturbation constants, bifurcation diagnostics and symmetry checks."""
from .kernel import KernelVector, kernel_u0, plane_wave_values, rotate_coefficients
from .constants import (GaugeConstants, ZETA_SCALE, c1_closed_form, c1_constants,
                        c1_finite_difference, compute_G, compute_g0, compute_g1, g0_samples,
                        quadrature_nodes, zeta_normalized)
from .bifurcation import (BifurcationReport, BifurcationSample, bifurcation_gamma,
                          bifurcation_vertex, gamma_geometry, qbcp_fit)
from .symmetry import (RectangleRow, SymmetryOp, SymmetryReport, antilinear_A, antilinear_F,
                       antilinear_Q, intertwining_residuals, rectangle_check, reflection_E,
                       rotation_Omega, set_identities, symmetry_suite, translation_overlaps,
                       translation_tau)

__all__ = [
    "KernelVector", "kernel_u0", "plane_wave_values", "rotate_coefficients",
    "GaugeConstants", "ZETA_SCALE", "c1_closed_form", "c1_constants", "c1_finite_difference",
    "compute_G", "compute_g0", "compute_g1", "g0_samples", "quadrature_nodes", "zeta_normalized",
    "BifurcationReport", "BifurcationSample", "bifurcation_gamma", "bifurcation_vertex",
    "gamma_geometry", "qbcp_fit",
    "RectangleRow", "SymmetryOp", "SymmetryReport", "antilinear_A", "antilinear_F", "antilinear_Q",
    "intertwining_residuals", "rectangle_check", "reflection_E", "rotation_Omega",
    "set_identities", "symmetry_suite", "translation_overlaps", "translation_tau",
]
