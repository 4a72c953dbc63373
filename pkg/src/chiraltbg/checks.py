"""Pass/fail check reports, the theta-function suite and the operator oracle suite.

The oracle applies each operator to a sparse ``{(sheet, a, b): coefficient}``
expansion term by term (momenta on Lambda*/3) and compares with the dense
matrices on band-limited random inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import OMEGA, thirds_value
from .operator import assemble_D, assemble_H, assemble_T, basis
from .potential import FourierPotential
from .theta import ThetaEvaluator, default_evaluator

CHECK_SEED = 20240917
THETA_TOL = 1e-12
ORACLE_TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tol)


@dataclass
class CheckReport:
    name: str = ""
    results: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float) -> CheckResult:
        r = CheckResult(name, float(residual), float(tol))
        self.results.append(r)
        return r

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.residual:.3e} (tol {r.tol:.0e})"
                for r in self.results]

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed,
                "results": [{"name": r.name, "residual": r.residual, "tol": r.tol,
                             "passed": r.passed} for r in self.results]}


# ------------------------------------------------------------------ theta

def theta_suite(samples: int = 100, seed: int = CHECK_SEED,
                theta: ThetaEvaluator | None = None) -> CheckReport:
    """Oddness, both quasi-periodicities and the four-term theta identity at seeded random points.

    Residuals are relative to the size of the terms involved.
    """
    th = theta or default_evaluator()
    rng = np.random.default_rng(seed)
    z = (rng.uniform(-1, 1, samples) + rng.uniform(-1, 1, samples) * OMEGA)
    u = (rng.uniform(-1, 1, samples) + rng.uniform(-1, 1, samples) * OMEGA)
    t = th.theta
    rep = CheckReport(name="theta")
    tz = t(z)
    rep.add("theta(-z) = -theta(z)", np.max(np.abs(t(-z) + tz) / np.abs(tz)), THETA_TOL)
    worst = 0.0
    for m in range(-2, 3):
        worst = max(worst, np.max(np.abs(t(z + m) - (-1) ** m * tz) / np.abs(tz)))
    rep.add("theta(z + m) = (-1)^m theta(z)", worst, THETA_TOL)
    worst = 0.0
    for n in range(-2, 3):
        rhs = (-1) ** n * np.exp(-1j * np.pi * n * n * OMEGA - 2j * np.pi * n * z) * tz
        worst = max(worst, np.max(np.abs(t(z + n * OMEGA) - rhs) / np.abs(rhs)))
    rep.add("theta(z + n omega) quasi-periodicity", worst, THETA_TOL)
    t2 = th.theta2
    a = t(z + u) * t(z - u) * t2(0) ** 2
    b = t(z) ** 2 * t2(u) ** 2
    c = t2(z) ** 2 * t(u) ** 2
    scale = np.abs(a) + np.abs(b) + np.abs(c)
    rep.add("theta identity", np.max(np.abs(a - b + c) / scale), THETA_TOL)
    gammas = [m + n * OMEGA for m in range(-1, 2) for n in range(-1, 2)]
    ratio = min(abs(t(g, 1)) for g in gammas) / abs(th.prime0)
    rep.add("simple zeros on Lambda (1 - |theta'(g)|/|theta'(0)| < 0.9)", 1 - min(ratio, 1.0), 0.9)
    return rep


# ----------------------------------------------------------------- oracle

Expansion = dict


def _sheet_offset(sheet: int) -> tuple[int, int]:
    return (1, 2) if sheet == 0 else (-1, -2)


def random_expansion(rng: np.random.Generator, radius: int, terms: int = 12) -> Expansion:
    """Random sparse expansion on dual coordinates ``|m|, |n| <= radius`` of both sheets."""
    out: Expansion = {}
    for _ in range(terms):
        s = int(rng.integers(2))
        m, n = rng.integers(-radius, radius + 1, 2)
        da, db = _sheet_offset(s)
        out[(s, 3 * int(m) + da, 3 * int(n) + db)] = complex(*rng.standard_normal(2))
    return out


def _accumulate(out: Expansion, key, value):
    out[key] = out.get(key, 0j) + value


def oracle_D(U: FourierPotential, alpha, B, k, v: Expansion) -> Expansion:
    """``(D_B(alpha) + k) v`` term by term."""
    out: Expansion = {}
    for (s, a, b), c in v.items():
        q = complex(thirds_value(a, b))
        _accumulate(out, (s, a, b), (q + k + (B if s == 0 else -B)) * c)
        for (pa, pb), u in zip(U.momenta_thirds, U.coeffs):
            if s == 1:
                _accumulate(out, (0, a + pa, b + pb), alpha * u * c)
            else:
                _accumulate(out, (1, a - pa, b - pb), alpha * u * c)
    return out


def oracle_D_adjoint(U: FourierPotential, alpha, B, k, v: Expansion) -> Expansion:
    """``(D_B(alpha) + k)^* v``: conjugated diagonal, and the potential modes conjugated and reversed."""
    out: Expansion = {}
    for (s, a, b), c in v.items():
        q = complex(thirds_value(a, b))
        _accumulate(out, (s, a, b), np.conj(q + k + (B if s == 0 else -B)) * c)
        for (pa, pb), u in zip(U.momenta_thirds, U.coeffs):
            w = np.conj(alpha * u) * c
            if s == 1:
                _accumulate(out, (0, a + pa, b + pb), w)
            else:
                _accumulate(out, (1, a - pa, b - pb), w)
    return out


def oracle_T(U: FourierPotential, k, B, v: Expansion, shifted: bool) -> Expansion:
    """Unshifted ``(2 D_zbar - k)^-1 (diag(B, -B) + V) v`` or shifted ``(2 D_zbar - k + diag(B, -B))^-1 V v``."""
    coupled = oracle_D(U, 1.0, 0.0, 0.0, v)
    out: Expansion = {}
    for (s, a, b), c in coupled.items():
        q = complex(thirds_value(a, b))
        sigma = 1 if s == 0 else -1
        c_pot = c - q * v.get((s, a, b), 0j)
        if shifted:
            out[(s, a, b)] = c_pot / (q - k + sigma * B)
        else:
            out[(s, a, b)] = (c_pot + sigma * B * v.get((s, a, b), 0j)) / (q - k)
    return out


def to_vector(v: Expansion, N: int) -> np.ndarray:
    bs = basis(N)
    x = np.zeros(bs.dim, dtype=complex)
    for (s, a, b), c in v.items():
        i = bs.find(a, b)
        if i is None or bs.sheet[i] != s:
            raise KeyError(f"momentum {(s, a, b)} outside the cutoff-{N} basis")
        x[i] += c
    return x


def oracle_suite(U: FourierPotential, N: int = 6, inputs: int = 20, seed: int = CHECK_SEED,
                 tol: float = ORACLE_TOL) -> CheckReport:
    """Compare dense ``D``, ``H``, ``T`` and shifted ``T`` with the term-by-term oracle."""
    rng = np.random.default_rng(seed)
    reach = U.max_offset() + 1
    radius = max(1, N - reach)
    alpha = complex(*rng.uniform(-1, 1, 2))
    B = complex(*rng.uniform(-0.3, 0.3, 2))
    k = complex(*rng.uniform(-1, 1, 2))
    D = assemble_D(U, alpha, B, k, N).matrix
    H = assemble_H(U, alpha, B, k, N).matrix
    T = assemble_T(U, k, B, N).matrix
    Ts = assemble_T(U, k, B, N, shifted=True).matrix
    worst = {"D": 0.0, "H": 0.0, "T": 0.0, "T shifted": 0.0}

    def rel(x, y):
        return np.linalg.norm(x - y) / np.linalg.norm(y)

    for _ in range(inputs):
        v = random_expansion(rng, radius)
        w = random_expansion(rng, radius)
        x, y = to_vector(v, N), to_vector(w, N)
        worst["D"] = max(worst["D"], rel(D @ x, to_vector(oracle_D(U, alpha, B, k, v), N)))
        top = to_vector(oracle_D_adjoint(U, alpha, B, k, w), N)
        bottom = to_vector(oracle_D(U, alpha, B, k, v), N)
        worst["H"] = max(worst["H"], rel(H @ np.concatenate([x, y]), np.concatenate([top, bottom])))
        worst["T"] = max(worst["T"], rel(T @ x, to_vector(oracle_T(U, k, B, v, False), N)))
        worst["T shifted"] = max(worst["T shifted"],
                                 rel(Ts @ x, to_vector(oracle_T(U, k, B, v, True), N)))
    rep = CheckReport(name="oracle")
    for name, r in worst.items():
        rep.add(f"{name} matches term-by-term action", r, tol)
    return rep
