"""Magic angles, the Birman-Schwinger eigenvalue branch, Dirac points and Bloch bands.

Conventions
-----------
A *Dirac point* is a momentum ``k`` at which the truncated matrix of
``D_B(alpha) + k`` is singular.  Points are reported modulo Lambda* with
representatives in the centred fundamental cell of
:func:`chiraltbg.lattice.reduce_to_fundamental`.

The unshifted operator ``T_k(B)`` has ``1/alpha`` as an eigenvalue exactly
when ``k`` lies in the spectrum of ``D_{-alpha B}(alpha)``: its field enters
scaled by the coupling.  The shifted operator carries the physical field, so
``1/alpha`` is in ``Spec T~_k(B)`` iff ``k`` is in ``Spec D_B(alpha)``.  Root
finding for a physical field ``B`` therefore uses ``T_{-k}(-B/alpha)`` or
``T~_{-k}(B)``, whichever keeps its resolvent poles further from ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (BranchAmbiguous, ContinuationLost, CountMismatch, NewtonDiverged,
                     ResolventPole)
from .lattice import (K, KPRIME, distance_mod_dual, dual_from_coords, half_lattice_center,
                      reduce_to_fundamental)
from .operator import DEFAULT_CUTOFF, assemble_D, assemble_T, basis
from .potential import FourierPotential

REAL_TOL = 1e-6
COARSE_CUTOFF = 8
REFINE_CUTOFF = 14
COARSE_GRID = 48
FD_STEP = 1e-5
CLUSTER_TOL = 1e-5
KAPPA_RADIUS = 0.5
ROOT_RESIDUAL = 1e-9


# ---------------------------------------------------------------- utilities

def sigma_min(M: np.ndarray, iters: int = 50, rtol: float = 1e-12) -> float:
    """Smallest singular value by inverse iteration on ``M^* M`` (one LU)."""
    lu, piv = sla.lu_factor(M, check_finite=False)
    if np.min(np.abs(np.diag(lu))) == 0.0:
        return 0.0
    x = np.random.default_rng(0).standard_normal(M.shape[0]).astype(complex)
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(iters):
        y = sla.lu_solve((lu, piv), x, check_finite=False)
        y = sla.lu_solve((lu, piv), y, trans=2, check_finite=False)
        nrm = np.linalg.norm(y)
        if not np.isfinite(nrm):
            return 0.0
        x = y / nrm
        if abs(nrm - est) <= rtol * nrm:
            est = nrm
            break
        est = nrm
    return float(1.0 / np.sqrt(est))


def smallest_singular(M: np.ndarray, count: int = 2, block: int = 6, iters: int = 60,
                      rtol: float = 1e-11, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """The ``count`` smallest singular values of ``M`` and their right singular vectors.

    Block inverse iteration on ``M^* M`` from one LU factorisation, finished by a
    Rayleigh-Ritz step (the SVD of ``M X`` for the orthonormal block ``X``).
    """
    n = M.shape[0]
    lu = sla.lu_factor(M, check_finite=False)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, block)) + 1j * rng.standard_normal((n, block))
    X, _ = np.linalg.qr(X)
    prev = None
    for _ in range(iters):
        # (M^* M)^-1 X = M^-1 (M^-* X)
        Y = sla.lu_solve(lu, X, trans=2, check_finite=False)
        Y = sla.lu_solve(lu, Y, check_finite=False)
        X, _ = np.linalg.qr(Y)
        _, sv, vh = np.linalg.svd(M @ X, full_matrices=False)
        est = sv[::-1][:count]
        if prev is not None and np.all(np.abs(est - prev) <= rtol * max(est[-1], 1e-300)):
            break
        prev = est
    order = np.argsort(sv)[:count]
    vecs = X @ vh.conj().T[:, order]
    return sv[order], vecs


def _triangular_sigma_min(S: np.ndarray, shift: complex, iters: int = 4) -> float:
    """Coarse estimate of ``sigma_min(S + shift)`` for upper-triangular ``S``."""
    A = S + shift * np.eye(S.shape[0])
    x = np.ones(S.shape[0], complex) / np.sqrt(S.shape[0])
    nrm = 1.0
    for _ in range(iters):
        y = sla.solve_triangular(A, x, check_finite=False)
        y = sla.solve_triangular(A, y, trans="C", check_finite=False)
        nrm = np.linalg.norm(y)
        if not np.isfinite(nrm) or nrm == 0.0:
            return 0.0
        x = y / nrm
    return float(1.0 / np.sqrt(nrm))


def hausdorff_mod_dual(a, b) -> float:
    """Hausdorff distance between two finite point sets in C / Lambda*."""
    a, b = list(np.atleast_1d(a)), list(np.atleast_1d(b))
    if not a and not b:
        return 0.0
    if not a or not b:
        return np.inf
    d_ab = max(min(distance_mod_dual(x, y) for y in b) for x in a)
    d_ba = max(min(distance_mod_dual(x, y) for x in a) for y in b)
    return float(max(d_ab, d_ba))


def _nearest_eigenpair(T: np.ndarray, anchor: complex, start=None, block: int = 3,
                       tol: float = 1e-13, maxiter: int = 80):
    """Eigenpair of ``T`` nearest ``anchor`` by block shift-invert iteration.

    Returns ``(eigenvalue, unit eigenvector, second-nearest Ritz value)``.
    """
    n = T.shape[0]
    lu = sla.lu_factor(T - anchor * np.eye(n), check_finite=False)
    rng = np.random.default_rng(11)
    X = rng.standard_normal((n, block)) + 1j * rng.standard_normal((n, block))
    if start is not None:
        X[:, 0] = start
    Q, _ = np.linalg.qr(X)
    lam, vec, other = anchor, Q[:, 0], np.inf
    for _ in range(maxiter):
        Q, _ = np.linalg.qr(sla.lu_solve(lu, Q, check_finite=False))
        TQ = T @ Q
        theta, W = np.linalg.eig(Q.conj().T @ TQ)
        order = np.argsort(np.abs(theta - anchor))
        lam, other = theta[order[0]], theta[order[1]]
        vec = Q @ W[:, order[0]]
        vec /= np.linalg.norm(vec)
        res = np.linalg.norm(TQ @ W[:, order[0]] - lam * vec)
        if res <= tol * (1.0 + abs(lam)):
            return complex(lam), vec, complex(other)
    # clustered spectrum near the anchor: fall back to a dense decomposition
    theta, W = np.linalg.eig(T)
    order = np.argsort(np.abs(theta - anchor))
    vec = W[:, order[0]] / np.linalg.norm(W[:, order[0]])
    return complex(theta[order[0]]), vec, complex(theta[order[1]])


# ------------------------------------------------------------- magic angles

@dataclass(frozen=True)
class MagicAngle:
    alpha: complex
    residual: float
    is_real: bool
    simplicity_gap: float


@dataclass
class MagicAngleReport:
    angles: list[MagicAngle]
    cutoff: int
    probe: complex

    def real_positive(self, upper: float = np.inf) -> np.ndarray:
        """Sorted real positive magic values below ``upper``."""
        vals = [a.alpha.real for a in self.angles if a.is_real and 0 < a.alpha.real < upper]
        return np.array(sorted(vals))

    def alphas(self) -> np.ndarray:
        return np.array([a.alpha for a in self.angles])


def magic_alphas(U: FourierPotential, N: int = DEFAULT_CUTOFF, k: complex = 0j,
                 count: int | None = None) -> MagicAngleReport:
    """All ``alpha = 1/lambda`` with ``lambda`` an eigenvalue of ``T_k(0)``, sorted by ``|alpha|``.

    With ``B = 0`` the operator is block off-diagonal, ``[[0, A], [C, 0]]``, so its
    eigenvalues are the square roots of those of ``A C``; this halves the
    dimension of the dense eigenproblem.
    """
    T = assemble_T(U, k, 0.0, N).matrix
    h = basis(N).per_sheet
    A, C = T[:h, h:], T[h:, :h]
    mu, X = np.linalg.eig(A @ C)
    keep = np.abs(mu) > 1e-24
    mu, X = mu[keep], X[:, keep]
    root = np.sqrt(mu.astype(complex))
    lams = np.concatenate([root, -root])
    # alpha = -1/lambda pairs with the eigenvector of lambda in (I + alpha T) v = 0
    alphas = -1.0 / lams
    order = np.argsort(np.abs(alphas), kind="stable")
    if count is not None:
        order = order[:count]
    angles = []
    for j in order:
        lam = lams[j]
        x = X[:, j % len(root)]
        v = np.concatenate([x, C @ x / lam])
        v /= np.linalg.norm(v)
        residual = float(np.linalg.norm(v - T @ v / lam))
        others = np.abs(np.delete(lams, j) - lam)
        alpha = complex(alphas[j])
        angles.append(MagicAngle(alpha, residual, abs(alpha.imag) < REAL_TOL * abs(alpha),
                                 float(others.min()) if others.size else np.inf))
    return MagicAngleReport(angles, N, complex(k))


# ------------------------------------------------------------ branch lambda

def lambda_branch(U: FourierPotential, k: complex, B: complex, N: int = DEFAULT_CUTOFF,
                  anchor: complex | None = None, shifted: bool = False) -> complex:
    """Eigenvalue of ``T_k(B)`` (or of ``T~_k(B)`` when ``shifted``) nearest ``anchor``.

    ``anchor`` defaults to the reciprocal of the first real magic value at this cutoff.
    """
    if anchor is None:
        anchor = 1.0 / magic_alphas(U, N, count=2).real_positive()[0]
    T = assemble_T(U, k, B, N, shifted=shifted).matrix
    lam, _, other = _nearest_eigenpair(T, complex(anchor))
    if abs(abs(other - anchor) - abs(lam - anchor)) < 1e-10:
        raise BranchAmbiguous(f"eigenvalues {lam:.12g} and {other:.12g} are equidistant from {anchor}")
    return lam


class _PhysicalBranch:
    """Scalar function ``k -> lambda(k) - 1/alpha`` whose zeros are the Dirac points of ``D_B(alpha)``."""

    def __init__(self, U: FourierPotential, alpha: complex, B: complex, N: int, shifted: bool):
        self.U, self.alpha, self.B, self.N, self.shifted = U, complex(alpha), complex(B), N, shifted
        self.target = 1.0 / self.alpha
        self._vec = None

    @staticmethod
    def choose_shifted(k: complex, B: complex) -> bool:
        d_plain = min(distance_mod_dual(k, K), distance_mod_dual(k, KPRIME))
        d_shift = min(distance_mod_dual(k, KPRIME + B), distance_mod_dual(k, K - B))
        return d_shift > d_plain

    def __call__(self, k: complex) -> complex:
        if self.shifted:
            T = assemble_T(self.U, -k, self.B, self.N, shifted=True).matrix
        else:
            T = assemble_T(self.U, -k, -self.B / self.alpha, self.N).matrix
        lam, vec, _ = _nearest_eigenpair(T, self.target, start=self._vec)
        self._vec = vec
        return lam - self.target


def _fd_derivative(f, x: complex, h: float = FD_STEP) -> complex:
    """Central complex difference with one Richardson step."""
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def _newton(f, x0: complex, tol: float, maxiter: int = 30, max_step: float = 0.5):
    x = complex(x0)
    fx = f(x)
    for _ in range(maxiter):
        if abs(fx) < tol:
            return x
        step = fx / _fd_derivative(f, x)
        while abs(step) > max_step:
            step /= 2
        x -= step
        fx = f(x)
        if abs(step) < 1e-14 * max(1.0, abs(x)):
            return x if abs(fx) < 1e3 * tol else None
    return x if abs(fx) < tol else None


def refine_root(U: FourierPotential, alpha: complex, B: complex, k0: complex,
                N: int = REFINE_CUTOFF, center: complex | None = None,
                tol: float = 1e-13) -> list[complex]:
    """Newton refinement of a Dirac point near ``k0``.

    Near a point ``c`` with ``2c`` in Lambda* the branch is even in ``k - c``,
    so the iteration runs in ``kappa = (k - c)^2`` and returns both roots
    ``c +- sqrt(kappa)``; otherwise it returns the single root in ``k``.
    Returns an empty list when Newton fails.
    """
    F = _PhysicalBranch(U, alpha, B, N, _PhysicalBranch.choose_shifted(k0, B))
    scale = abs(F.target)
    try:
        if center is None:
            root = _newton(F, k0, tol * scale)
            return [] if root is None else [root]
        kappa = _newton(lambda s: F(center + np.sqrt(s)), (k0 - center) ** 2, tol * scale)
    except ResolventPole:
        return []
    if kappa is None:
        return []
    r = np.sqrt(complex(kappa))
    return [center + r, center - r]


def _eigen_root(U, alpha, B, seed, N, radius) -> list[complex]:
    """``-mu`` for the eigenvalue ``mu`` of ``D_B(alpha)`` nearest ``-seed``, if within ``radius``.

    Fallback for seeds next to a resolvent pole, where the branch is badly scaled.
    """
    D = assemble_D(U, alpha, B, 0.0, N).matrix
    try:
        mu, _, _ = _nearest_eigenpair(D, -complex(seed))
    except (np.linalg.LinAlgError, ValueError):
        return []
    root = -complex(mu)
    return [root] if abs(root - seed) < radius else []


# ------------------------------------------------------------- Dirac points

@dataclass(frozen=True)
class DiracPoint:
    k: complex
    multiplicity: int
    sigma_min: float


@dataclass
class DiracPointSet:
    points: list[DiracPoint]
    alpha: complex
    B: complex
    cutoff: int

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def momenta(self, with_multiplicity: bool = False) -> np.ndarray:
        if with_multiplicity:
            return np.array([p.k for p in self.points for _ in range(p.multiplicity)])
        return np.array([p.k for p in self.points])

    def __len__(self):
        return len(self.points)


def cell_grid(n: int) -> np.ndarray:
    """``n x n`` grid of cell-centred momenta in the fundamental cell (axis 0 and 1 = dual coordinates)."""
    s = (np.arange(n) + 0.5) / n - 0.5
    x, y = np.meshgrid(s, s, indexing="ij")
    return dual_from_coords(x, y)


def sigma_landscape(U: FourierPotential, alpha: complex, B: complex, grid: int = COARSE_GRID,
                    N: int = COARSE_CUTOFF, reach: float | None = 3.0
                    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``sigma_min(D_B(alpha) + k)`` on the cell grid, via one Schur decomposition.

    Since ``sigma_min(D + k) <= |mu + k|`` for every eigenvalue ``mu`` of ``D``,
    small values can only sit near ``-Spec D``.  With ``reach`` set, nodes
    further than ``reach`` grid spacings from every ``-mu`` are skipped and
    reported as NaN; ``reach=None`` evaluates the whole grid.

    Returns ``(k-grid, sigma values, Schur eigenvalues of D_B(alpha))``.
    """
    D = assemble_D(U, alpha, B, 0.0, N).matrix
    S, _ = sla.schur(D, output="complex", check_finite=False)
    eig = np.diag(S).copy()
    ks = cell_grid(grid)
    sig = np.full(ks.shape, np.nan)
    if reach is None:
        active = np.ones(ks.shape, bool)
    else:
        spacing = abs(ks[1, 0] - ks[0, 0])
        near = np.abs(ks[..., None] + eig[None, None, :]).min(axis=-1)
        active = near < reach * spacing
    for i, j in np.argwhere(active):
        sig[i, j] = _triangular_sigma_min(S, ks[i, j])
    return ks, sig, eig


def _local_minima(sig: np.ndarray) -> list[tuple[int, int]]:
    # neighbours wrap around: the grid is periodic modulo Lambda*; skipped nodes never win
    sig = np.where(np.isnan(sig), np.inf, sig)
    neigh = [np.roll(np.roll(sig, dx, 0), dy, 1)
             for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy]
    mask = np.isfinite(sig) & np.all([sig <= nb for nb in neigh], axis=0)
    return [tuple(ij) for ij in np.argwhere(mask)]


def _cluster(roots: list[complex], tol: float) -> list[list[complex]]:
    clusters: list[list[complex]] = []
    for r in roots:
        for c in clusters:
            if distance_mod_dual(r, c[0]) < tol:
                c.append(r)
                break
        else:
            clusters.append([r])
    return clusters


def _pair_closed(ks: list[complex], tol: float) -> bool:
    return all(min(distance_mod_dual(-k, q) for q in ks) < tol for k in ks)


def dirac_points(U: FourierPotential, alpha: complex, B: complex, N: int = REFINE_CUTOFF,
                 grid: int = COARSE_GRID, coarse_cutoff: int = COARSE_CUTOFF,
                 threshold: float | None = None) -> DiracPointSet:
    """Dirac points of ``D_B(alpha)`` modulo Lambda*.

    A coarse ``sigma_min`` scan at ``coarse_cutoff`` proposes candidates (grid
    local minima below ``threshold``, default 0.3 times the grid spacing, or
    within one spacing of a coarse eigenvalue);
    each is seeded with the nearest coarse eigenvalue and refined by Newton
    iteration on the Birman-Schwinger branch at cutoff ``N``.  Refined roots
    closer than ``1e-5`` are clustered and counted with multiplicity.
    """
    alpha, B = complex(alpha), complex(B)
    if B == 0:
        pts = []
        for k in (K, KPRIME):
            k0, _ = reduce_to_fundamental(k)
            pts.append(DiracPoint(k0, 1, sigma_min(assemble_D(U, alpha, 0.0, k0, N).matrix)))
        return DiracPointSet(pts, alpha, B, N)

    ks, sig, eig = sigma_landscape(U, alpha, B, grid, coarse_cutoff)
    spacing = abs(ks[1, 0] - ks[0, 0])
    if threshold is None:
        threshold = 0.3 * spacing
    seeds = []
    for i, j in _local_minima(sig):
        kg = ks[i, j]
        near = -eig[np.argmin(np.abs(-eig - kg))]
        # a minimum is kept if it is deep or sits next to a coarse eigenvalue; the
        # slope of sigma_min can be well below one, so depth alone misses points
        strong = sig[i, j] <= threshold
        if strong or abs(near - kg) < spacing:
            seeds.append(((i, j), near if abs(near - kg) < 2 * spacing else kg, strong))

    found: list[complex] = []
    kappa_roots: dict[complex, list[complex]] = {}
    for cell, seed, strong in seeds:
        if any(distance_mod_dual(seed, r) < 1e-6 for r in found):
            continue
        c = half_lattice_center(seed, KAPPA_RADIUS)
        # away from half-lattice points the roots are simple eigenvalues of the
        # truncated D and shift-invert finds them directly; near those points
        # two roots can merge and Newton in kappa keeps full accuracy
        if c is None:
            roots = _eigen_root(U, alpha, B, seed, N, 2 * spacing)
            if not roots and strong:
                roots = refine_root(U, alpha, B, seed, N)
        else:
            roots = refine_root(U, alpha, B, seed, N, center=c)
            if not roots:
                roots = _eigen_root(U, alpha, B, seed, N, 2 * spacing)
        if not roots:
            if not strong:
                continue
            raise NewtonDiverged(f"no convergence from seed {seed:.6g}", cell)
        if c is not None:
            kap = (roots[0] - c) ** 2
            known = kappa_roots.setdefault(c, [])
            if any(abs(kap - q) < 1e-9 * max(1.0, abs(q)) for q in known):
                continue
            known.append(kap)
        elif any(distance_mod_dual(roots[0], r) < 1e-9 for r in found):
            continue
        found.extend(roots)

    points = []
    for members in _cluster([reduce_to_fundamental(r)[0] for r in found], CLUSTER_TOL):
        k = reduce_to_fundamental(complex(np.mean(members)))[0]
        res = max(sigma_min(assemble_D(U, alpha, B, m, N).matrix) for m in members)
        if res > ROOT_RESIDUAL * len(members) ** 4:
            continue
        points.append(DiracPoint(k, len(members), res))
    ks_final = [p.k for p in points]
    if not _pair_closed(ks_final, 1e-7):
        raise CountMismatch(f"refined set {np.round(ks_final, 8)} is not closed under k -> -k")
    points.sort(key=lambda p: (round(p.k.real, 9), round(p.k.imag, 9)))
    return DiracPointSet(points, alpha, B, N)


# --------------------------------------------------------------- tracking

@dataclass
class TrajectoryRow:
    alpha: float
    k_plus: complex
    k_minus: complex
    branch: complex
    residual: float


@dataclass
class Trajectory:
    rows: list[TrajectoryRow] = field(default_factory=list)
    B: complex = 0j
    cutoff: int = REFINE_CUTOFF
    restarts: int = 0

    def alphas(self) -> np.ndarray:
        return np.array([r.alpha for r in self.rows])

    def k_plus(self) -> np.ndarray:
        return np.array([r.k_plus for r in self.rows])


def _representative(ks) -> complex:
    """Root with ``Re k >= 0``, ties broken by ``Im k >= 0``."""
    ks = [complex(k) for k in ks]
    return max(ks, key=lambda k: (round(k.real, 12) >= 0, round(k.real, 12), k.imag >= 0, k.imag))


def _closest_equivalent(k: complex, ref: complex) -> complex:
    """Translate ``k`` by Lambda* to the copy nearest ``ref``."""
    r, _ = reduce_to_fundamental(k - ref)
    return ref + r


def track_dirac(U: FourierPotential, B: complex, alpha_min: float, alpha_max: float, steps: int,
                N: int = REFINE_CUTOFF, max_restarts: int = 5, max_jump: float = 0.5,
                grid: int = COARSE_GRID) -> Trajectory:
    """Continue one Dirac point ``k_+(alpha)`` over ``steps`` equally spaced couplings.

    Each step runs Newton from a linear prediction; failed or jumping steps are
    halved, and after repeated failure a fresh coarse scan restarts the
    continuation at the copy nearest the last point.
    """
    B = complex(B)
    alphas = np.linspace(alpha_min, alpha_max, steps)
    traj = Trajectory(B=B, cutoff=N)

    def row(alpha, k):
        k = complex(k)
        res = sigma_min(assemble_D(U, alpha, B, k, N).matrix)
        branch = 1.0 / alpha if B != 0 else np.nan
        return TrajectoryRow(float(alpha), k, -k, complex(branch), res)

    if B == 0:
        for a in alphas:
            traj.rows.append(row(a, reduce_to_fundamental(K)[0]))
        return traj

    def fresh(alpha, ref=None):
        pts = dirac_points(U, alpha, B, N, grid)
        ks = list(pts.momenta())
        if ref is None:
            return _representative(ks)
        return min((_closest_equivalent(k, ref) for k in ks), key=lambda k: abs(k - ref))

    k = fresh(alphas[0])
    traj.rows.append(row(alphas[0], k))
    prev_alpha, prev_k, slope = alphas[0], k, 0j
    for a in alphas[1:]:
        target, cur_a, cur_k = a, prev_alpha, prev_k
        h = target - cur_a
        failures = 0
        while cur_a < target - 1e-15:
            h = min(h, target - cur_a)
            guess = cur_k + slope * h
            new = _continue(U, cur_a + h, B, guess, N)
            if new is not None and abs(new - cur_k) < max_jump:
                slope = (new - cur_k) / h
                cur_a, cur_k = cur_a + h, new
                continue
            h /= 2
            if h < 1e-6 * max(1.0, abs(target)):
                failures += 1
                traj.restarts += 1
                if failures > max_restarts:
                    raise ContinuationLost(f"lost the Dirac point near alpha={cur_a:.6g}")
                cur_a = target
                cur_k = fresh(target, cur_k)
                slope = 0j
        traj.rows.append(row(target, cur_k))
        prev_alpha, prev_k = target, cur_k
    return traj


def _continue(U, alpha, B, guess, N):
    c = half_lattice_center(guess, KAPPA_RADIUS)
    roots = refine_root(U, alpha, B, guess, N, center=c)
    if not roots:
        return None
    best = min(roots, key=lambda r: abs(r - guess))
    if c is not None and abs(roots[0] - roots[1]) < 1e-3:
        # passing through the symmetric point: follow the deterministic representative
        best = _closest_equivalent(_representative(roots), guess)
    return best


# ------------------------------------------------------------------ bands

@dataclass
class BandSlice:
    k: complex
    energies: np.ndarray
    J: int

    def E(self, j: int) -> float:
        """Energy ``E_j`` for ``j`` in ``-J..-1, 1..J``."""
        if j == 0 or abs(j) > self.J:
            raise IndexError(j)
        return float(self.energies[j + self.J - (1 if j > 0 else 0)])

    def positive(self) -> np.ndarray:
        return self.energies[self.J:]


def bloch_bands(U: FourierPotential, alpha: complex, B: complex, k: complex,
                N: int = DEFAULT_CUTOFF, J: int = 4) -> BandSlice:
    """Energies ``E_{-J} <= ... <= E_{-1} <= 0 <= E_1 <= ... <= E_J`` of ``H_k^B(alpha)``.

    The Hamiltonian is off-diagonal, so its eigenvalues are ``+-`` the singular
    values of the ``D_B(alpha) + k`` block.
    """
    s = np.sort(sla.svdvals(assemble_D(U, alpha, B, k, N).matrix, check_finite=False))[:J]
    return BandSlice(complex(k), np.concatenate([-s[::-1], s]), J)


def lowest_band(U: FourierPotential, alpha: complex, B: complex, k: complex,
                N: int = DEFAULT_CUTOFF) -> float:
    """``E_1`` alone, by inverse iteration (much cheaper than a full decomposition)."""
    return sigma_min(assemble_D(U, alpha, B, k, N).matrix)


__all__ = [
    "MagicAngle", "MagicAngleReport", "magic_alphas", "lambda_branch", "refine_root",
    "DiracPoint", "DiracPointSet", "dirac_points", "sigma_landscape", "cell_grid",
    "TrajectoryRow", "Trajectory", "track_dirac", "BandSlice", "bloch_bands", "lowest_band",
    "sigma_min", "smallest_singular", "hausdorff_mod_dual",
]
