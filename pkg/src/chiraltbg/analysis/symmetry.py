"""Symmetries of ``D_B(alpha)`` as maps on plane-wave coefficients, and their numerical checks.

Every map sends a basis momentum to one other basis momentum up to a sign,
possibly after complex conjugation.  Maps that permute momenta exactly
(reflection, the antilinear ``A`` and ``Q``) are exact on the truncated basis;
rotation, ``F`` and translations are checked on band-limited vectors whose
images stay inside the truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..checks import CheckReport
from ..lattice import (DUAL_SCALE, OMEGA, dual_from_coords, rectangle_distance,
                       reduce_to_fundamental, thirds)
from ..operator import DEFAULT_CUTOFF, BasisIndexSet, assemble_D, assemble_H, basis
from ..potential import FourierPotential
from ..spectral import REFINE_CUTOFF, dirac_points, hausdorff_mod_dual
from .constants import quadrature_nodes
from .kernel import KernelVector, rotation_index

SET_TOL = 1e-8
OPERATOR_TOL = 1e-12
PROPORTIONALITY_TOL = 1e-6
RECTANGLE_TOL = 1e-6
SYMMETRY_SEED = 20240917


@dataclass
class SymmetryOp:
    """``v -> signs * (conj v)[source]``: entry ``i`` of the image is ``signs[i]`` times entry ``source[i]``.

    ``source[i] = -1`` marks momenta whose preimage lies outside the truncation.
    """

    name: str
    antilinear: bool
    source: np.ndarray
    signs: np.ndarray

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.conj(v) if self.antilinear else np.asarray(v)
        out = np.zeros(v.shape, dtype=complex)
        ok = self.source >= 0
        out[ok] = self.signs[ok, None] * v[self.source[ok]] if v.ndim == 2 else \
            self.signs[ok] * v[self.source[ok]]
        return out

    __call__ = apply

    def matrix(self) -> np.ndarray:
        """Real matrix ``P`` with ``op(v) = P v`` (or ``P conj(v)``)."""
        n = len(self.source)
        P = np.zeros((n, n))
        ok = np.flatnonzero(self.source >= 0)
        P[ok, self.source[ok]] = self.signs[ok]
        return P

    def exact(self) -> bool:
        return bool(np.all(self.source >= 0))


def _from_thirds_map(bs: BasisIndexSet, name, antilinear, preimage, sign_of_sheet, same_sheet=True):
    """Operator whose image at momentum ``(a, b)`` reads the input at ``preimage(a, b)``."""
    src = np.full(bs.dim, -1)
    for i in range(bs.dim):
        j = bs.find(*preimage(int(bs.a[i]), int(bs.b[i])))
        if j is not None and (not same_sheet or bs.sheet[j] == bs.sheet[i]):
            src[i] = j
    signs = np.where(bs.sheet == 0, sign_of_sheet[0], sign_of_sheet[1]).astype(float)
    return SymmetryOp(name, antilinear, src, signs)


def reflection_E(bs: BasisIndexSet) -> SymmetryOp:
    """``E v(z) = J v(-z)`` with ``J = [[0, -1], [1, 0]]``: swaps the sheets and negates momenta."""
    return _from_thirds_map(bs, "E", False, lambda a, b: (-a, -b), (-1, 1), same_sheet=False)


def antilinear_A(bs: BasisIndexSet) -> SymmetryOp:
    """``A v = (conj v_2, -conj v_1)``; conjugation negates the momentum and swaps the sheets."""
    return _from_thirds_map(bs, "A", True, lambda a, b: (-a, -b), (1, -1), same_sheet=False)


def antilinear_Q(bs: BasisIndexSet) -> SymmetryOp:
    """``Q v(z) = conj v(-z)`` on sheet 1 and minus that on sheet 2 (momenta unchanged)."""
    return _from_thirds_map(bs, "Q", True, lambda a, b: (a, b), (1, -1))


def antilinear_F(bs: BasisIndexSet) -> SymmetryOp:
    """``F v(z) = conj v(-conj z)``: the coefficient at ``conj q`` is ``conj c(q)``."""
    return _from_thirds_map(bs, "F", True, lambda a, b: (b - a, b), (1, 1))


def rotation_Omega(bs: BasisIndexSet) -> SymmetryOp:
    """``Omega v(z) = v(omega z)``: ``c'(q) = c(omega q)``."""
    return SymmetryOp("Omega", False, rotation_index(bs), np.ones(bs.dim))


def translation_tau(bs: BasisIndexSet, p: complex) -> SymmetryOp:
    """``tau(p) v = exp(i <z, p>) v`` for ``p`` in Lambda*: ``c'(q) = c(q - p)``."""
    pa, pb = thirds(p)
    if pa % 3 or pb % 3:
        raise ValueError(f"{p} is not in Lambda*")
    return _from_thirds_map(bs, f"tau({p:.4g})", False, lambda a, b: (a - pa, b - pb), (1, 1))


def chiral_W(dim: int) -> np.ndarray:
    """``W = diag(1, -1)`` on the two blocks of ``H``."""
    return np.diag(np.concatenate([np.ones(dim), -np.ones(dim)]))


def band_limited(bs: BasisIndexSet, rng: np.random.Generator, count: int = 4,
                 margin: float = 0.5) -> np.ndarray:
    """Random columns supported on ``|q| <= margin`` times the radius of the inscribed disc."""
    radius = margin * abs(DUAL_SCALE) * np.sqrt(3) / 2 * bs.cutoff
    mask = np.abs(bs.momenta) <= radius
    V = (rng.standard_normal((bs.dim, count)) + 1j * rng.standard_normal((bs.dim, count)))
    V[~mask] = 0
    return V / np.linalg.norm(V, axis=0)


def _rel(a, b) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


def intertwining_residuals(U: FourierPotential, alpha: complex, B: complex, k: complex,
                           N: int = 8, seed: int = SYMMETRY_SEED) -> dict[str, float]:
    """Relative residuals of each operator identity on assembled matrices."""
    bs = basis(N)
    rng = np.random.default_rng(seed)
    V = band_limited(bs, rng)

    def D(a, b, kk):
        return assemble_D(U, a, b, kk, N).matrix

    out = {}
    E = reflection_E(bs).matrix()
    out["E(D_B+k)E* = -(D_B-k)"] = _rel(E @ D(alpha, B, k) @ E.T, -D(alpha, B, -k))
    A = antilinear_A(bs).matrix()
    D0 = D(alpha, B, 0)
    out["A D = -D* A"] = _rel(A @ D0.conj(), -D0.conj().T @ A)
    out["A^2 = -I"] = _rel(A @ A, -np.eye(bs.dim))
    S = antilinear_Q(bs).matrix()
    # Q (D_B(-alpha)* - conj k) Q = D_B(alpha) - k
    lhs = S @ (D(-alpha, B, 0).conj().T - np.conj(k) * np.eye(bs.dim)).conj() @ S
    out["Q(D_B(-a)*-k)Q = D_B(a)-k"] = _rel(lhs, D(alpha, B, -k))
    P = antilinear_F(bs).matrix()
    # F (D_conjB(-conj alpha) - conj k) F = D_B(alpha) - k, on band-limited inputs
    lhs = P @ D(-np.conj(alpha), np.conj(B), -np.conj(k)).conj() @ P @ V
    out["F(D(-conj a)-conj k)F = D(a)-k"] = _rel(lhs, D(alpha, B, -k) @ V)
    R = rotation_Omega(bs).matrix()
    Rinv = R.T
    lhs = R @ D(alpha, B, k) @ Rinv @ V
    rhs = (OMEGA * D(alpha, np.conj(OMEGA) * B, 0) + k * np.eye(bs.dim)) @ V
    out["R(D_B+k)R* = w D_(conj w B) + k"] = _rel(lhs, rhs)
    p = complex(DUAL_SCALE)
    T = translation_tau(bs, p).matrix()
    out["tau(p)(D+k)tau(p)* = D+k-p"] = _rel(T @ D(alpha, B, k) @ T.T @ V, D(alpha, B, k - p) @ V)
    out["tau(p)tau(p)* = I"] = _rel(T @ T.T @ V, V)
    H = assemble_H(U, alpha, B, k, N).matrix
    W = chiral_W(bs.dim)
    out["W H W = -H"] = _rel(W @ H @ W, -H)
    return out


def set_identities(U: FourierPotential, alpha: complex, B: complex,
                   N: int = REFINE_CUTOFF) -> dict[str, float]:
    """Hausdorff distances (mod Lambda*) for the three spectral set identities."""
    base = dirac_points(U, alpha, B, N).momenta()
    rot = dirac_points(U, alpha, OMEGA * B, N).momenta()
    neg_alpha = dirac_points(U, -alpha, B, N).momenta()
    conj = dirac_points(U, np.conj(alpha), np.conj(B), N).momenta()
    return {
        "Spec D_wB = w Spec D_B": hausdorff_mod_dual(rot, OMEGA * base),
        "Spec D_B(-a) = Spec D_B(a)": hausdorff_mod_dual(neg_alpha, base),
        "Spec D_B = -Spec D_B": hausdorff_mod_dual(base, -base),
        "Spec D_conjB(conj a) = conj Spec D_B(a)": hausdorff_mod_dual(conj, np.conj(base)),
    }


def bloch_state(u0: KernelVector, k: complex, z: np.ndarray, w: float) -> np.ndarray:
    """``u(k) = F_k u_0 / |F_k u_0|`` sampled at quadrature nodes, both components stacked."""
    from ..theta import default_evaluator
    psi, phi = u0.values(z)
    F = default_evaluator().F_k(k, z)
    v = np.concatenate([F * psi, F * phi])
    return v / np.sqrt(w * np.sum(np.abs(v) ** 2))


def translation_overlaps(u0: KernelVector, rng: np.random.Generator, samples: int = 3,
                         M: int | None = None) -> list[float]:
    """``|<u(k - p), tau(p) u(k)>|`` for random ``k`` and the six shortest ``p`` in Lambda*.

    With ``tau(p)`` multiplying by ``exp(i <z, p>)``, ``tau(p) u(k)`` lies in the
    kernel of ``D + k - p`` and is proportional to ``u(k - p)``.
    """
    z, w = quadrature_nodes(M or max(64, 4 * u0.basis.cutoff + 8))
    shortest = [DUAL_SCALE * OMEGA**j * s for j in range(3) for s in (1, -1)]
    out = []
    for _ in range(samples):
        k = complex(dual_from_coords(*rng.uniform(-0.5, 0.5, 2)))
        uk = bloch_state(u0, k, z, w)
        for p in shortest:
            tau = np.exp(1j * np.real(z * np.conj(p)))
            moved = uk * np.concatenate([tau, tau])
            ref = bloch_state(u0, k - p, z, w)
            out.append(float(abs(w * np.vdot(ref, moved))))
    return out


@dataclass
class SymmetryReport(CheckReport):
    alpha: complex = 0j
    B: complex = 0j


def symmetry_suite(U: FourierPotential, alpha: complex, B: complex, N: int = REFINE_CUTOFF,
                   kernel: KernelVector | None = None, seed: int = SYMMETRY_SEED,
                   operator_cutoff: int = 8) -> SymmetryReport:
    """Set identities on Dirac points, operator intertwinings and (given ``kernel``) translations."""
    rep = SymmetryReport(name="symmetry", alpha=complex(alpha), B=complex(B))
    for name, d in set_identities(U, alpha, B, N).items():
        rep.add(name, d, SET_TOL)
    for name, r in intertwining_residuals(U, alpha, B, 0.3 + 0.2j, operator_cutoff, seed).items():
        rep.add(name, r, OPERATOR_TOL)
    if kernel is not None:
        ov = translation_overlaps(kernel, np.random.default_rng(seed))
        rep.add("|<u(k-p), tau(p)u(k)>| = 1", max(abs(1 - o) for o in ov), PROPORTIONALITY_TOL)
    return rep


@dataclass
class RectangleRow:
    alpha: float
    points: list[complex]
    distance: float
    families: list[str] = field(default_factory=list)


def _family(k: complex) -> str:
    """Which line family of the grid a point lies on (vertical ``Re k in 2 pi Z`` or horizontal)."""
    v = abs(k.real / (2 * np.pi) - round(k.real / (2 * np.pi))) * 2 * np.pi
    step = 2 * np.pi / np.sqrt(3)
    h = abs(k.imag / step - round(k.imag / step)) * step
    if v < RECTANGLE_TOL and h < RECTANGLE_TOL:
        return "corner"
    return "vertical" if v <= h else "horizontal"


def rectangle_check(U: FourierPotential, B: complex, alphas, N: int = REFINE_CUTOFF,
                    tol: float = RECTANGLE_TOL) -> tuple[CheckReport, list[RectangleRow]]:
    """Distance of every Dirac point to the rectangle grid for each coupling in ``alphas``.

    For ``B = b omega^j`` with ``b > 0`` the points are rotated back by ``omega^-j``
    first.  ``B = 0`` is rejected: the points are then ``+-K``, which is off the grid.
    """
    B = complex(B)
    if B == 0:
        raise ValueError("the rectangle statement concerns nonzero fields")
    turns = np.angle(B) / (2 * np.pi / 3)
    j = int(round(turns))
    if abs(turns - j) > 1e-12:
        raise ValueError("B must be a positive multiple of a cube root of unity")
    back = np.conj(OMEGA) ** (j % 3)
    rep = CheckReport(name="rectangle")
    rows = []
    for a in alphas:
        ks = [reduce_to_fundamental(back * k)[0] for k in dirac_points(U, a, B, N).momenta()]
        d = float(np.max(rectangle_distance(np.array(ks)))) if ks else 0.0
        rows.append(RectangleRow(float(a), ks, d, [_family(k) for k in ks]))
        rep.add(f"alpha={a:g}", d, tol)
    return rep, rows
