import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chiraltbg.analysis.constants import (
    ZETA_SCALE, c1_closed_form, c1_constants, c1_finite_difference, compute_G, compute_g0,
    compute_g1, default_nodes, g0_samples, quadrature_nodes, zeta_normalized)
from chiraltbg.analysis.kernel import kernel_u0
from chiraltbg.errors import DegenerateG1, InconsistentK, NotMagic, NotSimple
from chiraltbg.lattice import CELL_AREA


def fourier_g1(u0, U):
    """g1 from plane-wave coefficients: only total momentum zero survives the cell integral."""
    bs = u0.basis
    h = bs.per_sheet
    key = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(bs.a, bs.b))}
    c = u0.coeffs
    total = 0j
    for (pa, pb), u in zip(U.momenta_thirds, U.coeffs):
        # U(-z) psi^2 : q1 + q2 = p on sheet 0;  U(z) phi^2 : q1 + q2 = -p on sheet 1
        for i in range(h):
            j = key.get((pa - int(bs.a[i]), pb - int(bs.b[i])))
            if j is not None and j < h:
                total += u * c[i] * c[j]
        for i in range(h, bs.dim):
            j = key.get((-pa - int(bs.a[i]), -pb - int(bs.b[i])))
            if j is not None and j >= h:
                total -= u * c[i] * c[j]
    return CELL_AREA * total


def test_kernel_certificates(kernel12):
    u = kernel12
    assert u.sigma_min < 1e-10
    assert u.second_sigma > 1e-2
    assert u.rotation_residual < 1e-10
    assert u.vanishing_residual < 1e-10
    assert abs(u.norm() - 1) < 1e-12
    z, w = quadrature_nodes(64)
    psi, phi = u.values(z)
    assert abs(w * np.sum(np.abs(psi) ** 2 + np.abs(phi) ** 2) - 1) < 1e-12


def test_kernel_errors(bm, alpha1):
    with pytest.raises(NotMagic):
        kernel_u0(bm, 0.3, 8)
    with pytest.raises(NotSimple):
        kernel_u0(bm, alpha1, 12, simple_tol=1e3)


def test_g1_against_fourier_sum(bm, kernel12):
    assert abs(compute_g1(kernel12, bm) - fourier_g1(kernel12, bm)) < 1e-11


def test_G_vanishes_at_zero_and_quadrature_converges(bm, kernel12):
    assert abs(compute_G(kernel12, 0.0)) < 1e-12
    M = default_nodes(12)
    assert abs(compute_g1(kernel12, bm, M=M) - compute_g1(kernel12, bm, M=2 * M)) < 1e-12
    assert abs(compute_g0(kernel12, M=M) - compute_g0(kernel12, M=2 * M)) < 1e-11


def test_g0_is_k_independent(kernel12):
    vals = g0_samples(kernel12)
    assert np.max(np.abs(vals - vals.mean())) / abs(vals.mean()) < 1e-8
    with pytest.raises(InconsistentK):
        compute_g0(kernel12, rtol=0.0)
    with pytest.raises(ValueError):
        g0_samples(kernel12, ks=[0.0])


@settings(max_examples=10)
@given(st.floats(0, 2 * np.pi))
def test_gauge_invariance(phase):
    from chiraltbg.potential import bistritzer_macdonald
    U = bistritzer_macdonald()
    u0 = _cached_kernel()
    g0, g1 = compute_g0(u0), compute_g1(u0, U)
    v = u0.with_phase(phase)
    h0, h1 = compute_g0(v), compute_g1(v, U)
    assert abs(abs(h0) - abs(g0)) < 1e-10 * abs(g0)
    assert abs(abs(h1) - abs(g1)) < 1e-10 * abs(g1)
    assert abs(c1_closed_form(h0, h1) - c1_closed_form(g0, g1)) < 1e-10 * abs(c1_closed_form(g0, g1))


_KERNEL = {}


def _cached_kernel():
    if not _KERNEL:
        from chiraltbg.potential import bistritzer_macdonald
        from chiraltbg.spectral import magic_alphas
        U = bistritzer_macdonald()
        _KERNEL[0] = kernel_u0(U, magic_alphas(U, 8, count=2).real_positive()[0], 8)
    return _KERNEL[0]


def test_g1_is_continuous_in_k(bm, kernel12):
    g = compute_g1(kernel12, bm)
    assert abs(compute_g1(kernel12, bm, k=1e-7 + 1e-7j) - g) < 1e-5 * abs(g)


def test_first_angle_constants(bm, kernel12):
    # cutoff 16 reference magnitudes: |g0| = 1.26426, |g1| = 5.44412
    g0, g1 = compute_g0(kernel12), compute_g1(kernel12, bm)
    assert abs(abs(g0) - 1.26426) < 1e-4
    assert abs(abs(g1) - 5.44412) < 1e-4
    z0, z1 = zeta_normalized(g0, g1)
    assert abs(z1 - g1 / ZETA_SCALE) == 0 and abs(z0 - g0 / ZETA_SCALE**2) == 0
    c1 = c1_closed_form(g0, g1)
    assert abs(c1.imag) < 1e-8 * abs(c1)


def test_c1_finite_difference_is_closed_form_over_alpha(bm, alpha1, kernel12):
    consts = c1_constants(compute_g0(kernel12), compute_g1(kernel12, bm), U=bm, alpha=alpha1, N=12)
    assert abs(consts.c1_branch_ratio - 1 / alpha1) < 1e-3 / alpha1
    assert consts.c1_numeric == pytest.approx(c1_finite_difference(bm, alpha1, 12))


def test_degenerate_g1():
    with pytest.raises(DegenerateG1):
        c1_closed_form(1.0, 0.0)
