"""Finite Fourier moire potentials U(z) obeying the chiral-model symmetries.

A potential is a finite list of modes ``(offset, coeff)`` with momentum
``p = K + offset``, ``offset`` in Lambda*, and

    U(z) = sum coeff * exp(i <z, p>).

Because every momentum lies in ``K + Lambda*`` and ``3K`` is in Lambda*,
``U(z + gamma) = exp(-2i <gamma, K>) U(z)`` holds automatically.  The two
remaining identities, ``U(omega z) = omega U(z)`` and
``conj(U(conj z)) = -U(-z)``, are checked by sampling.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import SymmetryViolation
from .lattice import OMEGA, K, DualCoord, K_THIRDS, dual_from_coords, to_dual

VALIDATION_SEED = 20240917
VALIDATION_SAMPLES = 100
VALIDATION_TOL = 1e-12


@dataclass(frozen=True)
class FourierPotential:
    """Momentum-space potential; ``offsets[j]`` is the Lambda* coordinate of ``p_j - K``."""

    offsets: tuple[DualCoord, ...]
    coeffs: tuple[complex, ...]
    name: str = field(default="custom", compare=False)

    @property
    def momenta(self) -> np.ndarray:
        m = np.array([o.m for o in self.offsets], float)
        n = np.array([o.n for o in self.offsets], float)
        return K + dual_from_coords(m, n)

    @property
    def momenta_thirds(self) -> list[tuple[int, int]]:
        """Momenta as integer pairs on Lambda*/3 (exact)."""
        return [(3 * o.m + K_THIRDS[0], 3 * o.n + K_THIRDS[1]) for o in self.offsets]

    def __call__(self, z, reflect: bool = False):
        return eval_potential(self, z, reflect)

    def modes(self):
        return list(zip(self.offsets, self.coeffs))

    def scaled(self, factor: complex) -> "FourierPotential":
        return FourierPotential(self.offsets, tuple(factor * c for c in self.coeffs), self.name)

    def max_offset(self) -> int:
        return max(max(abs(o.m), abs(o.n)) for o in self.offsets)

    def to_records(self) -> list[dict]:
        return [
            {"m": o.m, "n": o.n, "re": float(np.real(c)), "im": float(np.imag(c))}
            for o, c in zip(self.offsets, self.coeffs)
        ]

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_records(), indent=2)
        if path is not None:
            Path(path).write_text(text + "\n")
        return text


def eval_potential(U: FourierPotential, z, reflect: bool = False):
    """``U(z)``, or ``U(-z)`` when ``reflect`` is set."""
    z = np.asarray(z, dtype=complex)
    if reflect:
        z = -z
    p = U.momenta
    phase = np.real(np.multiply.outer(z, np.conj(p)))
    out = np.exp(1j * phase) @ np.asarray(U.coeffs, dtype=complex)
    return out if out.ndim else complex(out)


def check_symmetries(U: FourierPotential, samples: int = VALIDATION_SAMPLES,
                     tol: float = VALIDATION_TOL, seed: int = VALIDATION_SEED) -> dict[str, float]:
    """Maximal residuals of the three defining identities at random points.

    Raises :class:`SymmetryViolation` naming the first identity that fails.
    """
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1.5, 1.5, samples) + 1j * rng.uniform(-1.5, 1.5, samples)
    scale = max(1.0, float(np.sum(np.abs(U.coeffs))))
    gamma = rng.integers(-3, 4, samples) + OMEGA * rng.integers(-3, 4, samples)
    identities = {
        "translation": np.abs(eval_potential(U, z + gamma)
                              - np.exp(-2j * np.real(gamma * np.conj(K))) * eval_potential(U, z)),
        "rotation": np.abs(eval_potential(U, OMEGA * z) - OMEGA * eval_potential(U, z)),
        "conjugation": np.abs(np.conj(eval_potential(U, np.conj(z))) + eval_potential(U, -z)),
    }
    report = {}
    for name, res in identities.items():
        res = res / scale
        j = int(np.argmax(res))
        if res[j] > tol:
            raise SymmetryViolation(name, complex(z[j]), float(res[j]))
        report[name] = float(res[j])
    return report


def build_potential(modes, validate: bool = True, name: str = "custom") -> FourierPotential:
    """Build a potential from ``(offset, coeff)`` pairs.

    ``offset`` may be a :class:`DualCoord` or an integer pair ``(m, n)``.
    Repeated offsets are summed and zero coefficients dropped.
    """
    acc: dict[DualCoord, complex] = {}
    for off, c in modes:
        if not isinstance(off, DualCoord):
            m, n = off
            if int(m) != m or int(n) != n:
                raise ValueError(f"offset {off} is not an integer coordinate pair")
            off = DualCoord(int(m), int(n))
        acc[off] = acc.get(off, 0j) + complex(c)
    items = sorted(((o, c) for o, c in acc.items() if c != 0), key=lambda t: (t[0].m, t[0].n))
    if not items:
        raise ValueError("a potential needs at least one nonzero mode")
    U = FourierPotential(tuple(o for o, _ in items), tuple(c for _, c in items), name)
    if validate:
        check_symmetries(U)
    return U


def from_momenta(momenta, coeffs, validate: bool = True, name: str = "custom") -> FourierPotential:
    """Build a potential from complex momenta that must lie in ``K + Lambda*``."""
    modes = []
    for p, c in zip(momenta, coeffs):
        off = to_dual(p - K)
        if off is None:
            raise ValueError(f"momentum {p} is not in K + Lambda*")
        modes.append((off, c))
    return build_potential(modes, validate, name)


def bistritzer_macdonald(validate: bool = True) -> FourierPotential:
    """``U(z) = -(4/3) pi i sum_l omega^l exp(i <z, omega^l K>)``."""
    pref = -4j * np.pi / 3
    momenta = [OMEGA**l * K for l in range(3)]
    coeffs = [pref * OMEGA**l for l in range(3)]
    return from_momenta(momenta, coeffs, validate, name="bm")


def double_potential(validate: bool = True) -> FourierPotential:
    """Second Figure-1 potential, ``2^{-1/2}(U_BM - U_2)`` with harmonics at ``-2 omega^l K``.

    The zeta-convention caption term ``exp(-(zeta conj(omega^l) - conj(zeta) omega^l))``
    becomes ``exp(i <z, -2 omega^l K>)`` under ``zeta = (4/3) pi i z``, and the
    overall factor ``-(4/3) pi i`` converts ``U_0`` to ``U``.
    """
    pref = -4j * np.pi / 3 / np.sqrt(2)
    momenta, coeffs = [], []
    for l in range(3):
        momenta += [OMEGA**l * K, -2 * OMEGA**l * K]
        coeffs += [pref * OMEGA**l, -pref * OMEGA**l]
    return from_momenta(momenta, coeffs, validate, name="double")


def load_potential(path, validate: bool = True) -> FourierPotential:
    """Read a JSON mode list ``[{"m":..,"n":..,"re":..,"im":..}, ...]``."""
    records = json.loads(Path(path).read_text())
    modes = [((r["m"], r["n"]), complex(r.get("re", 0.0), r.get("im", 0.0))) for r in records]
    return build_potential(modes, validate, name=Path(path).stem)


def resolve_potential(selector: str) -> FourierPotential:
    if selector == "bm":
        return bistritzer_macdonald()
    if selector == "double":
        return double_potential()
    return load_potential(selector)
