import json

import numpy as np
import pytest

import chiraltbg.analysis.bifurcation as bif
from chiraltbg.analysis import bifurcation_gamma, bifurcation_vertex, qbcp_fit
from chiraltbg.errors import FitUnstable
from chiraltbg.lattice import GAMMA
from chiraltbg.spectral import dirac_points


def test_lambda0_is_negative_and_real(gamma_report):
    coeffs = gamma_report.coefficients
    assert np.all(coeffs.real < 0)
    assert np.all(np.abs(coeffs.imag) < 1e-6 * np.abs(coeffs))
    # lambda(0, B) - lambda_bar scales like B^3
    assert np.ptp(coeffs.real) < 0.05 * abs(coeffs.real.mean())


def test_alpha_star_approaches_magic_value(gamma_report, alpha1):
    shifts = np.abs(gamma_report.alpha_star - alpha1)
    assert np.all(np.diff(shifts) > 0)
    assert abs(gamma_report.intercept - alpha1) < 1e-5


def test_points_merge_at_gamma(bm, gamma_report):
    top = max(gamma_report.samples, key=lambda s: s.B)
    pts = dirac_points(bm, top.alpha_star, top.B, 12)
    assert min(abs(k - GAMMA) for k in pts.momenta()) < 1e-5


def test_geometry_orthogonal_axes(gamma_report):
    g = gamma_report.geometry
    assert g["orthogonal"]
    assert g["below"]["axis"] == "real" and g["above"]["axis"] == "imaginary"


def test_quadratic_well(gamma_report):
    q = gamma_report.qbcp
    assert abs(q["exponent"] - 2) < 0.05
    assert q["gamma1"] > 0


def test_report_serialises(gamma_report):
    d = json.loads(json.dumps(gamma_report.to_dict()))
    assert d["site"] == "gamma" and len(d["samples"]) == 3


def test_field_range_is_enforced(bm, alpha1):
    with pytest.raises(ValueError):
        bifurcation_gamma(bm, alpha1, [0.3], 8)
    with pytest.raises(ValueError):
        bifurcation_vertex(bm, alpha1, [0.1], 8)
    with pytest.raises(ValueError):
        qbcp_fit(bm, alpha1, 0.1, 8, radii=[1e-4, 1e-3])


@pytest.fixture(scope="module")
def vertex_report(bm, alpha1):
    return bifurcation_vertex(bm, alpha1, [0.025, 0.05, 0.1], 12)


def test_vertex_scaling(vertex_report):
    r = vertex_report
    assert abs(r.q - 1) < 0.1
    assert abs(r.c2.imag) < 1e-6 * abs(r.c2)
    assert r.fit_residual < bif.FIT_TOL
    assert abs(r.alpha_slope - 1) < 0.1


def test_vertex_fit_guard(bm, alpha1, monkeypatch):
    monkeypatch.setattr(bif, "FIT_TOL", 0.0)
    with pytest.raises(FitUnstable):
        bifurcation_vertex(bm, alpha1, [0.05, 0.08, 0.1], 8)
