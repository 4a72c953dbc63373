"""Theta function against mpmath's Jacobi theta_1 with nome exp(i pi omega)."""
import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from chiraltbg.errors import PoleAtLattice
from chiraltbg.lattice import DUAL_SCALE, K, OMEGA, z_of_k
from chiraltbg.theta import ThetaEvaluator, F_k_eval, c_of_k, default_evaluator, theta_eval

NOME = mp.exp(1j * mp.pi * complex(OMEGA))
coord = st.floats(-1.5, 1.5, allow_nan=False)


def mp_theta(z, derivative=0):
    return complex(mp.jtheta(1, mp.pi * z, NOME, derivative) * mp.pi**derivative)


def test_zero_and_half_value():
    assert abs(theta_eval(0)) < 1e-15
    assert abs(theta_eval(0.5) - mp_theta(0.5)) < 1e-14


def test_derivative_at_zero():
    th = default_evaluator()
    assert abs(th.prime0 - mp_theta(0, 1)) < 1e-13
    assert abs(theta_eval(0.3 + 0.2j, 1) - mp_theta(0.3 + 0.2j, 1)) < 1e-12


@given(coord, coord)
def test_matches_mpmath(x, y):
    z = x + y * OMEGA
    ref = mp_theta(z)
    assert abs(theta_eval(z) - ref) <= 1e-13 * max(1.0, abs(ref))


@given(coord, coord)
def test_odd_and_quasi_periodic(x, y):
    z = complex(x + y * OMEGA)
    t = theta_eval(z)
    assert abs(theta_eval(-z) + t) <= 1e-12 * max(1, abs(t))
    assert abs(theta_eval(z + 1) + t) <= 1e-12 * max(1, abs(t))
    rhs = -np.exp(-1j * np.pi * OMEGA - 2j * np.pi * z) * t
    assert abs(theta_eval(z + OMEGA) - rhs) <= 1e-12 * max(1, abs(rhs))


def test_more_terms_change_nothing():
    z = np.array([0.3 + 0.8j, -1.1 + 1.9j, 0.45 - 1.2j])
    assert np.max(np.abs(ThetaEvaluator(48).theta(z) - theta_eval(z))) < 1e-15 * 10


def test_F_k_basic_properties(rng):
    for _ in range(10):
        k = complex(*rng.normal(size=2)) * 3
        z = complex(*rng.uniform(-0.4, 0.4, 2)) + 0.05
        assert abs(F_k_eval(0, z) - 1) < 1e-14
        assert abs(F_k_eval(k, z + 1 + OMEGA) - F_k_eval(k, z)) < 1e-10 * max(1, abs(F_k_eval(k, z)))


def test_F_k_factor_by_factor(rng):
    for _ in range(10):
        k = complex(*rng.normal(size=2)) * 2
        z = complex(*rng.uniform(-0.6, 0.6, 2))
        ref = np.exp(0.5j * (z - np.conj(z)) * k) * mp_theta(z - z_of_k(k)) / mp_theta(z)
        assert abs(F_k_eval(k, z) - ref) < 1e-13 * max(1, abs(ref))


def test_F_k_pole_and_removable_point():
    with pytest.raises(PoleAtLattice):
        F_k_eval(1.0 + 0.5j, 0.0)
    # k in Lambda*: numerator and denominator vanish together
    assert np.isfinite(F_k_eval(DUAL_SCALE, 0.0))


def test_c_of_k_zeros(rng):
    assert abs(c_of_k(0)) < 1e-14
    for _ in range(10):
        m, n = rng.integers(-4, 5, 2)
        assert abs(c_of_k(DUAL_SCALE * (m + n * OMEGA))) < 1e-12
    ref = 2j * np.pi * mp_theta(-1j / np.sqrt(3)) / mp_theta(0, 1)
    assert abs(c_of_k(K) - ref) < 1e-12
    assert abs(c_of_k(K)) > 0.1


def test_weierstrass_identity(rng):
    for _ in range(20):
        z, u = rng.uniform(-1, 1, 2) + 1j * rng.uniform(-1, 1, 2)
        t2 = lambda w: theta_eval(w + 0.5)
        val = (theta_eval(z + u) * theta_eval(z - u) * t2(0) ** 2 - theta_eval(z) ** 2 * t2(u) ** 2
               + t2(z) ** 2 * theta_eval(u) ** 2)
        assert abs(val) < 1e-12 * max(1, abs(theta_eval(z) ** 2 * t2(u) ** 2))
