"""Hexagonal moire lattice, its dual, special momenta and the rectangle grid.

Positions live on ``Lambda = Z + omega Z`` and momenta on the dual lattice
``Lambda* = (4 pi i / sqrt 3) Lambda``.  Lattice points are kept as integer
coordinate pairs; complex values are produced on demand.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)
SQRT3 = np.sqrt(3.0)
DUAL_SCALE = 4j * np.pi / SQRT3

GAMMA = 0j
K = 4 * np.pi / 3 + 0j
KPRIME = -K
VERTEX = 2j * np.pi / SQRT3

CELL_AREA = SQRT3 / 2
DUAL_CELL_AREA = abs((DUAL_SCALE * np.conj(DUAL_SCALE * OMEGA)).imag)

MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class LatticeCoord:
    """Point ``m + n omega`` of Lambda."""

    m: int
    n: int

    @property
    def value(self) -> complex:
        return complex(self.m + self.n * OMEGA)

    def __add__(self, other: "LatticeCoord") -> "LatticeCoord":
        return LatticeCoord(self.m + other.m, self.n + other.n)

    def __neg__(self) -> "LatticeCoord":
        return LatticeCoord(-self.m, -self.n)

    def rotate(self) -> "LatticeCoord":
        # omega (m + n omega) = -n + (m - n) omega
        return LatticeCoord(-self.n, self.m - self.n)


@dataclass(frozen=True)
class DualCoord:
    """Point ``(4 pi i / sqrt 3)(m + n omega)`` of Lambda*."""

    m: int
    n: int

    @property
    def value(self) -> complex:
        return complex(DUAL_SCALE * (self.m + self.n * OMEGA))

    def __add__(self, other: "DualCoord") -> "DualCoord":
        return DualCoord(self.m + other.m, self.n + other.n)

    def __neg__(self) -> "DualCoord":
        return DualCoord(-self.m, -self.n)

    def rotate(self) -> "DualCoord":
        return DualCoord(-self.n, self.m - self.n)


def pairing(z, w):
    """Real pairing ``<z, w> = Re(z conj(w))``; broadcasts over arrays."""
    return np.real(np.asarray(z) * np.conj(w))


def _solve_coords(v, scale):
    # v = scale * (x + y omega)  ->  real (x, y)
    u = np.asarray(v, dtype=complex) / scale
    y = u.imag / OMEGA.imag
    x = u.real - y * OMEGA.real
    return x, y


def lattice_coords(z):
    """Real coordinates ``(x, y)`` with ``z = x + y omega``."""
    return _solve_coords(z, 1.0)


def dual_coords(k):
    """Real coordinates ``(x, y)`` with ``k = (4 pi i/sqrt 3)(x + y omega)``."""
    return _solve_coords(k, DUAL_SCALE)


def dual_from_coords(x, y):
    return DUAL_SCALE * (np.asarray(x) + np.asarray(y) * OMEGA)


def _as_integer_pair(x, y, tol):
    mx, my = np.rint(x), np.rint(y)
    if abs(x - mx) > tol or abs(y - my) > tol:
        return None
    return int(mx), int(my)


def to_lattice(z, tol: float = MEMBERSHIP_TOL) -> LatticeCoord | None:
    """Integer coordinates of ``z`` in Lambda, or None if ``z`` is not a lattice point."""
    pair = _as_integer_pair(*lattice_coords(z), tol)
    return None if pair is None else LatticeCoord(*pair)


def to_dual(k, tol: float = MEMBERSHIP_TOL) -> DualCoord | None:
    """Integer coordinates of ``k`` in Lambda*, or None if ``k`` is not in Lambda*."""
    pair = _as_integer_pair(*dual_coords(k), tol)
    return None if pair is None else DualCoord(*pair)


def in_lattice(z, tol: float = MEMBERSHIP_TOL) -> bool:
    return to_lattice(z, tol) is not None


def in_dual(k, tol: float = MEMBERSHIP_TOL) -> bool:
    return to_dual(k, tol) is not None


def reduce_to_fundamental(k) -> tuple[complex, DualCoord]:
    """Split ``k = k0 + p`` with ``p`` in Lambda* and ``k0`` in the centred cell.

    The cell is the parallelogram spanned by the dual basis
    ``{4 pi i/sqrt 3, (4 pi i/sqrt 3) omega}`` with coordinates in [-1/2, 1/2).
    """
    x, y = dual_coords(k)
    m = int(np.floor(x + 0.5))
    n = int(np.floor(y + 0.5))
    p = DualCoord(m, n)
    return complex(k - p.value), p


def reduce_array(k):
    """Vectorised :func:`reduce_to_fundamental` returning only representatives."""
    k = np.asarray(k, dtype=complex)
    x, y = dual_coords(k)
    return k - dual_from_coords(np.floor(x + 0.5), np.floor(y + 0.5))


def nearest_dual(k) -> DualCoord:
    """The point of Lambda* closest to ``k`` (Euclidean metric)."""
    x, y = dual_coords(k)
    best, best_d = None, np.inf
    for m in (np.floor(x) + d for d in (-1, 0, 1, 2)):
        for n in (np.floor(y) + d for d in (-1, 0, 1, 2)):
            p = DualCoord(int(m), int(n))
            d = abs(k - p.value)
            if d < best_d:
                best, best_d = p, d
    return best


def dual_distance(k) -> float:
    """Distance from ``k`` to Lambda*."""
    return float(abs(k - nearest_dual(k).value))


def distance_mod_dual(k1, k2) -> float:
    """Distance between the classes of ``k1`` and ``k2`` in C / Lambda*."""
    return dual_distance(k1 - k2)


def z_of_k(k):
    """Linear map ``z(k) = sqrt(3) k / (4 pi i)`` sending Lambda* onto Lambda."""
    return np.sqrt(3.0) * np.asarray(k) / (4j * np.pi)


def rectangle_distance(k):
    """Distance from ``k`` to the grid ``2 pi (iR + Z)  U  (2 pi/sqrt 3)(R + iZ)``."""
    k = np.asarray(k, dtype=complex)
    sx = 2 * np.pi
    sy = 2 * np.pi / SQRT3
    dx = np.abs(k.real - sx * np.rint(k.real / sx))
    dy = np.abs(k.imag - sy * np.rint(k.imag / sy))
    return np.minimum(dx, dy)


def on_rectangle_grid(k, tol: float = 1e-14) -> bool:
    return bool(rectangle_distance(k) <= tol)


def special_points() -> dict[str, complex]:
    return {"Gamma": GAMMA, "K": K, "Kprime": KPRIME, "vertex": VERTEX}


def half_lattice_center(k, radius: float):
    """Nearest point ``c`` with ``2c`` in Lambda*, if within ``radius`` of ``k``.

    These are the points around which the spectral branch is even.
    """
    x, y = dual_coords(k)
    cx, cy = np.rint(2 * x) / 2, np.rint(2 * y) / 2
    best, best_d = None, np.inf
    for dx in (-0.5, 0.0, 0.5):
        for dy in (-0.5, 0.0, 0.5):
            c = complex(dual_from_coords(cx + dx, cy + dy))
            d = abs(k - c)
            if d < best_d:
                best, best_d = c, d
    return best if best_d < radius else None


# Exact bookkeeping of momenta in K + Lambda* style cosets: integer pairs in
# units of one third of the dual basis.  K = (-1, -2) / 3 in dual coordinates.
K_THIRDS = (-1, -2)


def thirds(k, tol: float = 1e-9) -> tuple[int, int]:
    """Integer coordinates of ``k`` on the refined lattice ``Lambda*/3``."""
    x, y = dual_coords(k)
    pair = _as_integer_pair(3 * x, 3 * y, tol)
    if pair is None:
        raise ValueError(f"momentum {k} is not in Lambda*/3")
    return pair


def thirds_value(a, b):
    return dual_from_coords(np.asarray(a) / 3.0, np.asarray(b) / 3.0)


def rotate_thirds(a: int, b: int) -> tuple[int, int]:
    """Multiplication by omega in (scaled) dual coordinates."""
    return -b, a - b

