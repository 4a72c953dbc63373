"""Jacobi theta function with modulus omega and the multipliers built from it.

``theta(z) = -sum_n exp(pi i (n+1/2)^2 omega + 2 pi i (n+1/2)(z+1/2))``
is odd, has simple zeros exactly on Lambda and satisfies

    theta(z + m)       = (-1)^m theta(z)
    theta(z + n omega) = (-1)^n exp(-pi i n^2 omega - 2 pi i n z) theta(z).
"""
from __future__ import annotations

import numpy as np

from .errors import PoleAtLattice
from .lattice import OMEGA, dual_coords, dual_from_coords, lattice_coords, z_of_k

DEFAULT_TERMS = 32


class ThetaEvaluator:
    """Evaluates theta and theta' by a truncated series on the reduced cell.

    Arguments are first moved into the cell ``|x|, |y| <= 1/2`` (with
    ``z = x + y omega``) using the exact quasi-periodicity factors, which
    keeps every series term bounded.

    Parameters
    ----------
    terms : int
        Series length; indices ``n + 1/2`` run over ``+-1/2, ..., +-(terms + 1/2)``.
    """

    def __init__(self, terms: int = DEFAULT_TERMS):
        self.terms = int(terms)
        # pairing the indices n + 1/2 and -(n + 1/2) turns the series into
        # 2 sum_{n >= 0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z), q = exp(pi i omega),
        # which vanishes exactly at z = 0
        n = np.arange(self.terms + 1)
        self._freq = (2 * n + 1) * np.pi
        self._weights = 2 * (-1.0) ** n * np.exp(1j * np.pi * (n + 0.5) ** 2 * OMEGA)
        self.prime0 = complex(self._series(np.zeros(1, complex), 1)[0])
        self.half_value = complex(self.theta(0.5))

    def _series(self, z, order):
        arg = np.multiply.outer(z, self._freq)
        if order == 1:
            return (np.cos(arg) * self._freq) @ self._weights
        return np.sin(arg) @ self._weights

    def __call__(self, z, order: int = 0):
        return self.theta(z, order)

    def theta(self, z, order: int = 0):
        if order not in (0, 1):
            raise ValueError("order must be 0 or 1")
        z = np.asarray(z, dtype=complex)
        x, y = lattice_coords(z)
        m, n = np.rint(x), np.rint(y)
        return self.theta_shifted(z - m - n * OMEGA, m, n, order)

    def theta_shifted(self, z0, m, n, order: int = 0):
        """``theta(z0 + m + n omega)`` for integers ``m, n`` and a small residual ``z0``.

        Keeping the lattice part exact lets ``theta`` vanish exactly at lattice points.
        """
        z0 = np.asarray(z0, dtype=complex)
        m, n = np.broadcast_to(m, z0.shape), np.broadcast_to(n, z0.shape)
        sign = np.where((m + n) % 2 == 0, 1.0, -1.0)
        factor = sign * np.exp(-1j * np.pi * n**2 * OMEGA - 2j * np.pi * n * z0)
        val = self._series(z0.ravel(), 0).reshape(z0.shape)
        if order == 0:
            out = factor * val
        else:
            der = self._series(z0.ravel(), 1).reshape(z0.shape)
            out = factor * (der - 2j * np.pi * n * val)
        return out if out.ndim else complex(out)

    def theta2(self, z):
        """The shifted function ``theta(z + 1/2)``."""
        return self.theta(np.asarray(z) + 0.5)

    def F_k(self, k, z, tol: float = 1e-12):
        """Multiplier ``F_k(z) = exp((i/2)(z - conj z) k) theta(z - z(k)) / theta(z)``.

        ``F_k`` is Lambda-periodic in ``z`` and ``(2 D_zbar + k) F_k = c(k) delta_0``.
        """
        z = np.asarray(z, dtype=complex)
        zk = z_of_k(k)
        x, y = lattice_coords(z)
        at_pole = np.abs(z - np.rint(x) - np.rint(y) * OMEGA) < tol
        xk, yk = lattice_coords(zk)
        k_in_dual = abs(zk - np.rint(xk) - np.rint(yk) * OMEGA) < tol
        if np.any(at_pole) and not k_in_dual:
            bad = z[at_pole].ravel()[0] if z.ndim else complex(z)
            raise PoleAtLattice(f"F_k has a pole at z={bad:.6g} in Lambda")
        safe = np.where(at_pole, z + 0.25, z)
        ratio = self.theta(safe - zk) / self.theta(safe)
        if np.any(at_pole):
            # removable singularity: both numerator and denominator have simple zeros
            limit = self.theta(z - zk, 1) / self.theta(z, 1)
            ratio = np.where(at_pole, limit, ratio)
        out = np.exp(0.5j * (z - np.conj(z)) * k) * ratio
        return out if np.ndim(out) else complex(out)

    def c_of_k(self, k):
        """``c(k) = 2 pi i theta(z(k)) / theta'(0)``; vanishes exactly on Lambda*."""
        k = np.asarray(k, dtype=complex)
        x, y = dual_coords(k)
        m, n = np.rint(x), np.rint(y)
        # z(k) = z(k0) + m + n omega with k0 = k - p exact when k lies on Lambda*
        k0 = k - dual_from_coords(m, n)
        out = 2j * np.pi * self.theta_shifted(z_of_k(k0), m, n) / self.prime0
        return out if np.ndim(out) else complex(out)


_default = ThetaEvaluator()


def default_evaluator() -> ThetaEvaluator:
    return _default


def theta_eval(z, order: int = 0):
    return _default.theta(z, order)


def F_k_eval(k, z):
    return _default.F_k(k, z)


def c_of_k(k):
    return _default.c_of_k(k)
