"""The protected kernel vector ``u_0 = (psi, phi)`` of ``D(alpha)`` at a simple magic coupling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotMagic, NotSimple
from ..lattice import CELL_AREA, OMEGA, rotate_thirds
from ..operator import DEFAULT_CUTOFF, BasisIndexSet, assemble_D, basis
from ..potential import FourierPotential
from ..spectral import smallest_singular

MAGIC_TOL = 1e-6
SIMPLE_TOL = 1e-4


def plane_wave_values(bs: BasisIndexSet, coeffs: np.ndarray, z) -> tuple[np.ndarray, np.ndarray]:
    """Both sheet components ``sum c_q exp(i <z, q>)`` at positions ``z``.

    Momenta are affine in the dual coordinates, ``q = q_0 + m e_1 + n e_2``,
    so the double sum factorises into two one-dimensional phase tables.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    N, side = bs.cutoff, bs.side
    r = np.arange(-N, N + 1)
    out = []
    for sheet in (0, 1):
        q00 = bs.momenta[bs.index(sheet, 0, 0)]
        e1 = bs.momenta[bs.index(sheet, 1, 0)] - q00
        e2 = bs.momenta[bs.index(sheet, 0, 1)] - q00

        def pair(w):
            return np.real(flat * np.conj(w))

        Em = np.exp(1j * np.outer(pair(e1), r))
        En = np.exp(1j * np.outer(pair(e2), r))
        C = coeffs[sheet * bs.per_sheet:(sheet + 1) * bs.per_sheet].reshape(side, side)
        vals = np.exp(1j * pair(q00)) * np.einsum("pm,pm->p", Em @ C, En)
        out.append(vals.reshape(z.shape))
    return out[0], out[1]


def rotation_index(bs: BasisIndexSet, inverse: bool = False) -> np.ndarray:
    """``idx[i]`` = position of ``omega q_i`` (or ``conj(omega) q_i``), -1 if truncated away."""
    out = np.full(bs.dim, -1)
    for i in range(bs.dim):
        a, b = int(bs.a[i]), int(bs.b[i])
        a, b = rotate_thirds(a, b)
        if inverse:
            a, b = rotate_thirds(a, b)
        j = bs.find(a, b)
        if j is not None and bs.sheet[j] == bs.sheet[i]:
            out[i] = j
    return out


def rotate_coefficients(bs: BasisIndexSet, coeffs: np.ndarray) -> np.ndarray:
    """Coefficients of ``z -> u(omega z)``: ``c'(p) = c(omega p)``."""
    idx = rotation_index(bs)
    out = np.zeros_like(coeffs)
    ok = idx >= 0
    out[ok] = coeffs[idx[ok]]
    return out


@dataclass
class KernelVector:
    """Normalised null vector of ``D(alpha)`` with its certificates.

    ``coeffs`` is the plane-wave expansion on ``basis`` with
    ``area * sum |c|^2 = 1`` and the largest coefficient real positive.
    """

    coeffs: np.ndarray
    basis: BasisIndexSet
    alpha: float
    sigma_min: float
    second_sigma: float
    rotation_residual: float
    vanishing_residual: float

    def values(self, z) -> tuple[np.ndarray, np.ndarray]:
        """``(psi(z), phi(z))``."""
        return plane_wave_values(self.basis, self.coeffs, z)

    def norm(self) -> float:
        return float(np.sqrt(CELL_AREA * np.sum(np.abs(self.coeffs) ** 2)))

    def with_phase(self, angle: float) -> "KernelVector":
        """Same vector multiplied by ``exp(i angle)`` (certificates unchanged)."""
        return KernelVector(self.coeffs * np.exp(1j * angle), self.basis, self.alpha,
                            self.sigma_min, self.second_sigma, self.rotation_residual,
                            self.vanishing_residual)


def kernel_u0(U: FourierPotential, alpha: float, N: int = DEFAULT_CUTOFF,
              magic_tol: float = MAGIC_TOL, simple_tol: float = SIMPLE_TOL) -> KernelVector:
    """Smallest right singular vector of ``D(alpha)`` at ``k = 0`` (block inverse iteration).

    Raises :class:`NotMagic` if ``sigma_min > magic_tol`` and :class:`NotSimple`
    if the second singular value is below ``simple_tol``.
    """
    bs = basis(N)
    D = assemble_D(U, alpha, 0.0, 0.0, N).matrix
    s, vecs = smallest_singular(D, 2)
    if s[0] > magic_tol:
        raise NotMagic(f"sigma_min(D({alpha})) = {s[0]:.3e} exceeds {magic_tol:.1e}")
    if s[1] < simple_tol:
        raise NotSimple(f"second singular value {s[1]:.3e} below {simple_tol:.1e}")
    c = vecs[:, 0]
    c = c / np.sqrt(CELL_AREA * np.sum(np.abs(c) ** 2))
    j = int(np.argmax(np.abs(c)))
    c = c * (abs(c[j]) / c[j])
    rot = np.linalg.norm(rotate_coefficients(bs, c) - OMEGA * c) / np.linalg.norm(c)
    h = bs.per_sheet
    vanish = max(abs(c[:h].sum()), abs(c[h:].sum()))
    return KernelVector(c, bs, float(np.real(alpha)), float(s[0]), float(s[1]),
                        float(rot), float(vanish))
