"""Bifurcation of Dirac points at Gamma and at the cell vertex, and the quadratic well.

Two branches appear here.  ``lambda_branch`` (the unshifted operator with the
field entering as ``T_k(B)``) supplies the expansion data ``lambda_0`` and
``lambda_2``; the coupling at which Dirac points actually merge for the
physical field ``B`` comes from the shifted operator, ``alpha* = 1/lambda~(k, B)``.
Both values of ``alpha*`` are reported.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .._parallel import pmap
from ..errors import FitUnstable, NumericalError
from ..lattice import GAMMA, VERTEX, reduce_to_fundamental
from ..operator import DEFAULT_CUTOFF
from ..potential import FourierPotential
from ..spectral import dirac_points, lambda_branch, lowest_band

AXIS_TOL = 1e-6
GEOMETRY_DELTA = 1e-2
CURVATURE_STEP = 1e-2
FIT_TOL = 0.1


@dataclass
class BifurcationSample:
    B: float
    alpha_star: float
    alpha_star_unshifted: float
    branch: complex
    coefficient: complex
    curvature: complex | None = None


@dataclass
class BifurcationReport:
    """Branch samples and fits around one merging site.

    ``coefficient`` in each sample is ``lambda_0 = (lambda(0,B) - lambda_bar)/B^3`` at
    Gamma and ``lambda_2 = (lambda(k1,B) - lambda_bar)/B`` at the vertex.
    """

    site: str
    alpha_bar: float
    lambda_bar: complex
    cutoff: int
    samples: list[BifurcationSample] = field(default_factory=list)
    intercept: float | None = None
    c2: complex | None = None
    q: float | None = None
    fit_residual: float | None = None
    alpha_slope: float | None = None
    geometry: dict | None = None
    qbcp: dict | None = None

    @property
    def Bs(self) -> np.ndarray:
        return np.array([s.B for s in self.samples])

    @property
    def alpha_star(self) -> np.ndarray:
        return np.array([s.alpha_star for s in self.samples])

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([s.coefficient for s in self.samples])

    def to_dict(self) -> dict:
        def clean(x):
            if isinstance(x, complex):
                return {"re": x.real, "im": x.imag}
            if isinstance(x, dict):
                return {k: clean(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [clean(v) for v in x]
            if isinstance(x, np.generic):
                return clean(x.item())
            return x
        return clean(asdict(self))


def _lambda_bar(U, alpha_bar, N):
    return lambda_branch(U, 0.0, 0.0, N, anchor=1.0 / alpha_bar)


def _intercept(Bs, alphas) -> float | None:
    """``alpha*(B)`` extrapolated to ``B = 0`` by a low-degree polynomial fit."""
    if len(Bs) < 2:
        return None
    deg = min(len(Bs) - 1, 2)
    return float(np.polyval(np.polyfit(Bs, alphas, deg), 0.0))


def _axis(k: complex) -> str:
    if abs(k.imag) < AXIS_TOL:
        return "real"
    if abs(k.real) < AXIS_TOL:
        return "imaginary"
    return "off-axis"


def gamma_geometry(U: FourierPotential, alpha_star: float, B: float, N: int,
                   delta: float = GEOMETRY_DELTA) -> dict:
    """Axis through Gamma holding the Dirac points at ``alpha* - delta`` and ``alpha* + delta``."""
    out = {"delta": delta}
    for side, a in (("below", alpha_star - delta), ("above", alpha_star + delta)):
        pts = dirac_points(U, a, B, N)
        # the merging pair: the two representatives closest to Gamma
        near = sorted((reduce_to_fundamental(k)[0] for k in pts.momenta(True)), key=abs)[:2]
        axes = {_axis(k) for k in near}
        out[side] = {"axis": axes.pop() if len(axes) == 1 else "mixed",
                     "points": [complex(k) for k in near]}
    out["orthogonal"] = ({out["below"]["axis"], out["above"]["axis"]} == {"real", "imaginary"})
    return out


def bifurcation_gamma(U: FourierPotential, alpha_bar: float, Bs, N: int = DEFAULT_CUTOFF,
                      geometry: bool = True, delta: float = GEOMETRY_DELTA,
                      qbcp_field: float | None = None) -> BifurcationReport:
    """Merging of the two Dirac points at Gamma for small real fields ``Bs``.

    ``geometry`` classifies the points at ``alpha* -+ delta`` for the largest
    field; ``qbcp_field`` additionally fits the well at that field's ``alpha*``.
    """
    Bs = [float(b) for b in Bs]
    if any(not 0 < b <= 0.2 for b in Bs):
        raise ValueError("fields must lie in (0, 0.2]")
    lam_bar = _lambda_bar(U, alpha_bar, N)

    def sample(B):
        lam = lambda_branch(U, GAMMA, B, N, anchor=lam_bar)
        lam_phys = lambda_branch(U, GAMMA, B, N, anchor=lam_bar, shifted=True)
        return BifurcationSample(B, float(1 / lam_phys.real), float(1 / lam.real), complex(lam),
                                 complex((lam - lam_bar) / B**3))

    rep = BifurcationReport("gamma", float(alpha_bar), complex(lam_bar), N, pmap(sample, Bs))
    rep.intercept = _intercept(rep.Bs, rep.alpha_star)
    if geometry:
        top = max(rep.samples, key=lambda s: s.B)
        rep.geometry = gamma_geometry(U, top.alpha_star, top.B, N, delta)
    if qbcp_field is not None:
        s = min(rep.samples, key=lambda s: abs(s.B - qbcp_field))
        slope, gamma1 = qbcp_fit(U, s.alpha_star, s.B, N)
        rep.qbcp = {"B": s.B, "alpha_star": s.alpha_star, "exponent": slope, "gamma1": gamma1}
    return rep


def _second_derivative(U, k0, B, N, anchor, h=CURVATURE_STEP) -> complex:
    """Central second difference of the branch at ``k0``, one Richardson step."""
    lam0 = lambda_branch(U, k0, B, N, anchor=anchor)

    def d2(step):
        plus = lambda_branch(U, k0 + step, B, N, anchor=anchor)
        minus = lambda_branch(U, k0 - step, B, N, anchor=anchor)
        return (plus + minus - 2 * lam0) / step**2

    return (4 * d2(h / 2) - d2(h)) / 3


def bifurcation_vertex(U: FourierPotential, alpha_bar: float, Bs, N: int = DEFAULT_CUTOFF
                       ) -> BifurcationReport:
    """Branch expansion at the vertex ``k1 = 2 pi i / sqrt 3``.

    The second ``k``-derivative ``d2(B)`` is regressed as ``log|d2| = log(2|c2|) + q log B``.
    Raises :class:`FitUnstable` when the relative misfit of that regression exceeds 10%.
    """
    Bs = [float(b) for b in Bs]
    if len(Bs) < 2 or any(not 0 < b <= 0.2 for b in Bs):
        raise ValueError("need at least two fields in (0, 0.2]")
    lam_bar = _lambda_bar(U, alpha_bar, N)

    def sample(B):
        lam = lambda_branch(U, VERTEX, B, N, anchor=lam_bar)
        lam_phys = lambda_branch(U, VERTEX, B, N, anchor=lam_bar, shifted=True)
        d2 = _second_derivative(U, VERTEX, B, N, lam_bar)
        return BifurcationSample(B, float(1 / lam_phys.real), float(1 / lam.real), complex(lam),
                                 complex((lam - lam_bar) / B), complex(d2))

    rep = BifurcationReport("vertex", float(alpha_bar), complex(lam_bar), N, pmap(sample, Bs))
    rep.intercept = _intercept(rep.Bs, rep.alpha_star)
    B = rep.Bs
    d2 = np.array([s.curvature for s in rep.samples])
    q, logc = np.polyfit(np.log(B), np.log(np.abs(d2)), 1)
    model = np.exp(logc) * B**q
    rep.fit_residual = float(np.max(np.abs(np.abs(d2) - model) / np.abs(d2)))
    if rep.fit_residual > FIT_TOL:
        raise FitUnstable(f"curvature regression misfit {rep.fit_residual:.2%}")
    rep.q = float(q)
    # c2 keeps the phase of the data: mean of d2 / (2 B^q)
    rep.c2 = complex(np.mean(d2 / (2 * B**q)))
    shift = np.abs(rep.alpha_star - alpha_bar)
    if np.all(shift > 0):
        rep.alpha_slope = float(np.polyfit(np.log(B), np.log(shift), 1)[0])
    return rep


def qbcp_fit(U: FourierPotential, alpha_star: float, B: float, N: int = DEFAULT_CUTOFF,
             radii=None, angles: int = 8) -> tuple[float, float]:
    """Slope of ``log E_1`` against ``log |k|`` on circles around Gamma, and ``gamma_1``.

    ``gamma_1`` is the median of ``E_1 / (|B| r^2)`` over all samples.
    """
    radii = np.geomspace(1e-3, 1e-2, 5) if radii is None else np.asarray(radii, dtype=float)
    if radii.min() < 1e-3 - 1e-15 or radii.max() > 1e-1 + 1e-15:
        raise ValueError("radii must lie in [1e-3, 1e-1]")
    phases = np.exp(2j * np.pi * (np.arange(angles) + 0.5) / angles)

    def ring(r):
        return [lowest_band(U, alpha_star, B, r * p, N) for p in phases]

    E = np.array(pmap(ring, radii))
    if np.any(E <= 0):
        raise NumericalError("non-positive band energy in the well fit")
    slope = np.polyfit(np.log(radii), np.log(np.median(E, axis=1)), 1)[0]
    gamma1 = np.median(E / (abs(B) * radii[:, None] ** 2))
    return float(slope), float(gamma1)
