"""Plane-wave matrices for D_B(alpha) + k, H_k^B(alpha) and the Birman-Schwinger operators.

The two-sheet basis consists of ``exp(i <z, q>)`` with ``q`` in ``Lambda* - K``
on sheet 1 and ``q`` in ``Lambda* + K`` on sheet 2, truncated to dual
coordinates ``|m|, |n| <= N``.  On this basis ``2 D_zbar`` is diagonal with
entries ``q`` and multiplication by a potential mode of momentum ``p``
shifts momenta by ``p``.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import CutoffTooSmall, ResolventPole
from .lattice import thirds_value
from .potential import FourierPotential

DEFAULT_CUTOFF = 12
POLE_TOL = 1e-8

# sheet offsets -K and +K on Lambda*/3
_SHEET_THIRDS = ((1, 2), (-1, -2))


class BasisIndexSet:
    """Index set ``(sheet, m, n)``, sheet-major, with ``|m|, |n| <= N``.

    ``momenta[i]`` is ``(4 pi i/sqrt 3)(m + n omega) + kappa_sheet`` with
    ``kappa_1 = -K`` and ``kappa_2 = +K``.
    """

    def __init__(self, cutoff: int):
        if cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        self.cutoff = N = int(cutoff)
        side = 2 * N + 1
        self.side = side
        self.per_sheet = side * side
        self.dim = 2 * self.per_sheet
        r = np.arange(-N, N + 1)
        mm, nn = np.meshgrid(r, r, indexing="ij")
        mm, nn = mm.ravel(), nn.ravel()
        self.sheet = np.repeat([0, 1], self.per_sheet)
        self.m = np.concatenate([mm, mm])
        self.n = np.concatenate([nn, nn])
        # exact momenta on Lambda*/3
        self.a = np.concatenate([3 * mm + _SHEET_THIRDS[0][0], 3 * mm + _SHEET_THIRDS[1][0]])
        self.b = np.concatenate([3 * nn + _SHEET_THIRDS[0][1], 3 * nn + _SHEET_THIRDS[1][1]])
        self.momenta = thirds_value(self.a, self.b)
        self.sign = np.where(self.sheet == 0, 1.0, -1.0)
        self._lookup = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(self.a, self.b))}

    def index(self, sheet: int, m: int, n: int) -> int:
        N = self.cutoff
        if abs(m) > N or abs(n) > N:
            raise IndexError((sheet, m, n))
        return sheet * self.per_sheet + (m + N) * self.side + (n + N)

    def find(self, a: int, b: int) -> int | None:
        """Index of the basis momentum with Lambda*/3 coordinates ``(a, b)``."""
        return self._lookup.get((a, b))

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"BasisIndexSet(cutoff={self.cutoff}, dim={self.dim})"


@lru_cache(maxsize=16)
def basis(cutoff: int) -> BasisIndexSet:
    return BasisIndexSet(cutoff)


@lru_cache(maxsize=16)
def _coupling(U: FourierPotential, cutoff: int) -> np.ndarray:
    """Matrix of ``[[0, U(z)], [U(-z), 0]]`` on the truncated basis."""
    bs = basis(cutoff)
    V = np.zeros((bs.dim, bs.dim), dtype=complex)
    half = bs.per_sheet
    for (pa, pb), c in zip(U.momenta_thirds, U.coeffs):
        # U(z) sends sheet-2 mode q to q + p on sheet 1
        for col in range(half, bs.dim):
            row = bs.find(int(bs.a[col]) + pa, int(bs.b[col]) + pb)
            if row is not None and row < half:
                V[row, col] += c
        # U(-z) sends sheet-1 mode q to q - p on sheet 2
        for col in range(half):
            row = bs.find(int(bs.a[col]) - pa, int(bs.b[col]) - pb)
            if row is not None and row >= half:
                V[row, col] += c
    if not np.any(V):
        raise CutoffTooSmall(f"no potential mode fits in the cutoff-{cutoff} basis")
    V.setflags(write=False)
    return V


def coupling_matrix(U: FourierPotential, cutoff: int) -> np.ndarray:
    return _coupling(U, int(cutoff))


@dataclass
class OperatorMatrix:
    """Dense matrix together with its basis and the parameters used to build it."""

    matrix: np.ndarray
    basis: BasisIndexSet
    kind: str
    alpha: complex = 0j
    B: complex = 0j
    k: complex = 0j
    meta: dict = field(default_factory=dict)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def shape(self):
        return self.matrix.shape

    def __matmul__(self, other):
        return self.matrix @ np.asarray(other)

    def eigvals(self):
        return np.linalg.eigvals(self.matrix)


def _diag_D(bs: BasisIndexSet, B, k):
    return bs.momenta + k + B * bs.sign


def assemble_D(U: FourierPotential, alpha, B, k, cutoff: int = DEFAULT_CUTOFF) -> OperatorMatrix:
    """Matrix of ``D_B(alpha) + k``.

    Diagonal ``q + k + B`` on sheet 1 and ``q + k - B`` on sheet 2; the
    off-diagonal blocks carry ``alpha U(z)`` and ``alpha U(-z)``.
    """
    bs = basis(cutoff)
    M = alpha * coupling_matrix(U, cutoff)
    M[np.diag_indices(bs.dim)] += _diag_D(bs, B, k)
    return OperatorMatrix(M, bs, "D", complex(alpha), complex(B), complex(k))


def assemble_H(U: FourierPotential, alpha, B, k, cutoff: int = DEFAULT_CUTOFF) -> OperatorMatrix:
    """Hermitian matrix ``[[0, (D_B + k)^*], [D_B + k, 0]]``."""
    D = assemble_D(U, alpha, B, k, cutoff).matrix
    n = D.shape[0]
    H = np.zeros((2 * n, 2 * n), dtype=complex)
    H[n:, :n] = D
    H[:n, n:] = D.conj().T
    return OperatorMatrix(H, basis(cutoff), "H", complex(alpha), complex(B), complex(k))


def resolvent_diagonal(cutoff: int, k, B=0.0, shifted: bool = False) -> np.ndarray:
    """Entries ``1/(q - k)``, or ``1/(q - k + B sigma)`` (``sigma = +-1`` per sheet) when shifted."""
    bs = basis(cutoff)
    den = bs.momenta - k
    if shifted:
        den = den + B * bs.sign
    j = int(np.argmin(np.abs(den)))
    if abs(den[j]) <= POLE_TOL:
        raise ResolventPole(complex(bs.momenta[j]), float(abs(den[j])))
    return 1.0 / den


def assemble_T(U: FourierPotential, k, B=0.0, cutoff: int = DEFAULT_CUTOFF,
               shifted: bool = False) -> OperatorMatrix:
    """Birman-Schwinger matrices.

    Unshifted: ``(2 D_zbar - k)^{-1} [[B, U(z)], [U(-z), -B]]``.
    Shifted:   ``((2 D_zbar - k) + diag(B, -B))^{-1} [[0, U(z)], [U(-z), 0]]``.

    For the shifted operator ``(2D_zbar - k + B)(I + alpha T) = D_B(alpha) - k``,
    so ``k`` is in the spectrum of ``D_B(alpha)`` iff ``1/alpha`` is an
    eigenvalue (the spectrum of the shifted operator is symmetric).
    """
    bs = basis(cutoff)
    r = resolvent_diagonal(cutoff, k, B, shifted)
    V = coupling_matrix(U, cutoff)
    M = r[:, None] * V
    if not shifted:
        M[np.diag_indices(bs.dim)] += r * B * bs.sign
    return OperatorMatrix(M, bs, "Tshift" if shifted else "T", 0j, complex(B), complex(k))


# Binary dump: 16-byte header (b"TBGM", version, dim, reserved) then row-major
# little-endian complex128 entries.
_MAGIC = b"TBGM"
_VERSION = 1


def dump_matrix(M, path) -> None:
    A = np.ascontiguousarray(np.asarray(M), dtype="<c16")
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("only square matrices can be dumped")
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<III", _VERSION, A.shape[0], 0))
        fh.write(A.tobytes(order="C"))


def load_matrix(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if raw[:4] != _MAGIC:
        raise ValueError("not a TBGM matrix dump")
    version, dim, _ = struct.unpack("<III", raw[4:16])
    if version != _VERSION:
        raise ValueError(f"unsupported dump version {version}")
    return np.frombuffer(raw[16:], dtype="<c16").reshape(dim, dim).copy()
