"""Perturbation constants ``G(k)``, ``g_0``, ``g_1`` and the branch curvature ``c_1``.

All integrals are over the cell ``C / Lambda`` with Lebesgue measure (area
``sqrt(3)/2``) and evaluated on a uniform grid offset by half a step from
Lambda, where the periodic analytic integrands give spectral accuracy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateG1, InconsistentK, QuadratureNearPole
from ..lattice import CELL_AREA, OMEGA, dual_from_coords, in_dual, lattice_coords, z_of_k
from ..operator import DEFAULT_CUTOFF
from ..potential import FourierPotential
from ..spectral import lambda_branch
from ..theta import ThetaEvaluator, default_evaluator
from .kernel import KernelVector

# Length unit of the zeta coordinates zeta = (4/3) pi i z.  Tabulated constants
# in that convention are g1 / ZETA_SCALE and g0 / ZETA_SCALE**2.
ZETA_SCALE = 4 * np.pi / 3

C1_FIELD = 1e-2
C1_STEPS = (1e-2, 5e-3)
G0_SEED = 20240917
G0_SAMPLES = 10


def default_nodes(N: int) -> int:
    """Quadrature resolution that integrates products of two truncated kernels exactly."""
    return max(64, 4 * N + 8)


def quadrature_nodes(M: int) -> tuple[np.ndarray, float]:
    """``M x M`` cell nodes ``((i + 1/2) + (j + 1/2) omega) / M`` and the common weight."""
    s = (np.arange(M) + 0.5) / M
    x, y = np.meshgrid(s, s, indexing="ij")
    z = (x + y * OMEGA).ravel()
    fx, fy = lattice_coords(z)
    dist = np.abs(z - np.rint(fx) - np.rint(fy) * OMEGA)
    if dist.min() < 1e-6:
        raise QuadratureNearPole(f"quadrature node within {dist.min():.1e} of the lattice")
    return z, CELL_AREA / M**2


def _nodes_for(u0: KernelVector, M: int | None) -> tuple[np.ndarray, float]:
    return quadrature_nodes(M or default_nodes(u0.basis.cutoff))


def compute_G(u0: KernelVector, k: complex, M: int | None = None,
              theta: ThetaEvaluator | None = None) -> complex:
    """``G(k) = 2 int F_k F_{-k} phi psi dm``."""
    th = theta or default_evaluator()
    z, w = _nodes_for(u0, M)
    psi, phi = u0.values(z)
    FF = th.F_k(k, z) * th.F_k(-k, z)
    return complex(2 * w * np.sum(FF * phi * psi))


def g0_sample_momenta(count: int = G0_SAMPLES, seed: int = G0_SEED) -> np.ndarray:
    """Seeded momenta in the fundamental cell kept away from Lambda*."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        x, y = rng.uniform(-0.5, 0.5, 2)
        k = complex(dual_from_coords(x, y))
        if abs(k) > 1.0:
            out.append(k)
    return np.array(out)


def g0_samples(u0: KernelVector, ks=None, M: int | None = None,
               theta: ThetaEvaluator | None = None) -> np.ndarray:
    """``G(k) theta(1/2)^2 / theta(z(k))^2`` at each sample momentum."""
    th = theta or default_evaluator()
    ks = g0_sample_momenta() if ks is None else np.asarray(ks)
    out = []
    for k in ks:
        if in_dual(k):
            raise ValueError(f"sample momentum {k} lies in Lambda*")
        out.append(compute_G(u0, k, M, th) * th.half_value**2 / th.theta(z_of_k(k)) ** 2)
    return np.array(out)


def compute_g0(u0: KernelVector, ks=None, M: int | None = None, rtol: float = 1e-5,
               theta: ThetaEvaluator | None = None) -> complex:
    """``g_0`` defined by ``G(k) = g_0 theta(z(k))^2 / theta(1/2)^2``, averaged over ``ks``."""
    vals = g0_samples(u0, ks, M, theta)
    mean = vals.mean()
    spread = np.max(np.abs(vals - mean)) / abs(mean)
    if spread > rtol:
        raise InconsistentK(f"g0 samples disagree: relative spread {spread:.2e}")
    return complex(mean)


def compute_g1(u0: KernelVector, U: FourierPotential, k: complex = 0j, M: int | None = None,
               theta: ThetaEvaluator | None = None) -> complex:
    """``g_1(k) = int (U(-z) u_1(k)^2 - U(z) u_2(k)^2) dm`` with ``u(k) = F_k u_0 / |F_k u_0|``."""
    z, w = _nodes_for(u0, M)
    psi, phi = u0.values(z)
    if k != 0:
        th = theta or default_evaluator()
        F = th.F_k(k, z)
        psi, phi = F * psi, F * phi
        nrm = np.sqrt(w * np.sum(np.abs(psi) ** 2 + np.abs(phi) ** 2))
        psi, phi = psi / nrm, phi / nrm
    return complex(w * np.sum(U(-z) * psi**2 - U(z) * phi**2))


def zeta_normalized(g0: complex, g1: complex) -> tuple[complex, complex]:
    """The pair ``(g0, g1)`` expressed in zeta-coordinate units."""
    return g0 / ZETA_SCALE**2, g1 / ZETA_SCALE


def c1_closed_form(g0: complex, g1: complex, theta: ThetaEvaluator | None = None) -> complex:
    """``-3 theta'(0)^2 g0 / (16 pi^2 theta(1/2)^2 g1)``; the phase of ``u_0`` cancels."""
    th = theta or default_evaluator()
    if abs(g1) < 1e-14:
        raise DegenerateG1("g1 vanishes; the closed form is undefined")
    return complex(-3 * th.prime0**2 / (16 * np.pi**2 * th.half_value**2) * g0 / g1)


def c1_finite_difference(U: FourierPotential, alpha: float, N: int = DEFAULT_CUTOFF,
                         B: float = C1_FIELD, steps=C1_STEPS, shifted: bool = False) -> complex:
    """``(lambda(k, B) - lambda(0, B)) / (B k^2)`` at two step sizes, Richardson-combined."""
    lam_bar = lambda_branch(U, 0.0, 0.0, N, anchor=1.0 / alpha)
    base = lambda_branch(U, 0.0, B, N, anchor=lam_bar, shifted=shifted)
    est = [(lambda_branch(U, h, B, N, anchor=lam_bar, shifted=shifted) - base) / (B * h * h)
           for h in steps]
    ratio = (steps[0] / steps[1]) ** 2
    return complex((ratio * est[1] - est[0]) / (ratio - 1))


@dataclass
class GaugeConstants:
    """``g0``, ``g1`` (phase follows ``u_0``), their zeta-unit moduli and both ``c1`` values.

    ``c1_closed`` is the closed form in ``g0 / g1``; ``c1_numeric`` the
    finite-difference curvature of the unshifted branch; ``alpha`` the magic
    coupling they belong to (needed to relate the two, see ``c1_branch_ratio``).
    """

    g0: complex
    g1: complex
    c1_closed: complex
    c1_numeric: complex | None = None
    alpha: float | None = None

    @property
    def g0_zeta(self) -> float:
        return abs(zeta_normalized(self.g0, self.g1)[0])

    @property
    def g1_zeta(self) -> float:
        return abs(zeta_normalized(self.g0, self.g1)[1])

    @property
    def c1_branch_ratio(self) -> complex | None:
        """``c1_numeric / c1_closed``; equals ``1/alpha`` for the unshifted operator."""
        if self.c1_numeric is None:
            return None
        return self.c1_numeric / self.c1_closed


def c1_constants(g0: complex, g1: complex, theta: ThetaEvaluator | None = None,
                 U: FourierPotential | None = None, alpha: float | None = None,
                 N: int = DEFAULT_CUTOFF) -> GaugeConstants:
    """Closed-form ``c1`` and, when ``U`` and ``alpha`` are given, its finite-difference partner."""
    closed = c1_closed_form(g0, g1, theta)
    numeric = None
    if U is not None and alpha is not None:
        numeric = c1_finite_difference(U, alpha, N)
    return GaugeConstants(complex(g0), complex(g1), closed, numeric, alpha)
