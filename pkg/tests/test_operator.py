import numpy as np
import pytest
from hypothesis import given, strategies as st

from chiraltbg.errors import CutoffTooSmall, ResolventPole
from chiraltbg.lattice import CELL_AREA, OMEGA
from chiraltbg.operator import (assemble_D, assemble_H, assemble_T, basis, coupling_matrix,
                                dump_matrix, load_matrix, resolvent_diagonal)
from chiraltbg.potential import build_potential

small = st.floats(-1, 1, allow_nan=False)


def quadrature_coupling(U, N, M=40):
    """Matrix elements <e_q', U e_q> / area by a uniform real-space rule on the cell."""
    bs = basis(N)
    s = (np.arange(M) + 0.5) / M
    x, y = np.meshgrid(s, s, indexing="ij")
    z = (x + y * OMEGA).ravel()
    E = np.exp(1j * np.real(np.outer(z, np.conj(bs.momenta))))
    h = bs.per_sheet
    V = np.zeros((bs.dim, bs.dim), complex)
    V[:h, h:] = E[:, :h].conj().T @ (U(z)[:, None] * E[:, h:]) / M**2
    V[h:, :h] = E[:, h:].conj().T @ (U(-z)[:, None] * E[:, :h]) / M**2
    return V


def test_basis_layout():
    bs = basis(3)
    assert bs.dim == 2 * 7 * 7
    for i in (0, 17, 60, bs.dim - 1):
        assert bs.index(int(bs.sheet[i]), int(bs.m[i]), int(bs.n[i])) == i
        assert bs.find(int(bs.a[i]), int(bs.b[i])) == i
    with pytest.raises(IndexError):
        bs.index(0, 4, 0)
    assert CELL_AREA > 0


def test_coupling_against_real_space_quadrature(bm):
    for N in (2, 3):
        ref = quadrature_coupling(bm, N)
        assert np.max(np.abs(coupling_matrix(bm, N) - ref)) < 1e-12


def test_coupling_is_read_only(bm):
    with pytest.raises(ValueError):
        coupling_matrix(bm, 3)[0, 0] = 1.0


def test_cutoff_too_small():
    U = build_potential([((4, 4), 1.0)], validate=False)
    with pytest.raises(CutoffTooSmall):
        coupling_matrix(U, 1)


@given(small, small, small, small, small, small)
def test_D_diagonal_and_coupling(ar, ai, br, bi, kr, ki):
    from chiraltbg.potential import bistritzer_macdonald
    U = bistritzer_macdonald()
    alpha, B, k = complex(ar, ai), complex(br, bi), complex(kr, ki)
    D = assemble_D(U, alpha, B, k, 3)
    bs = D.basis
    assert np.allclose(np.diag(D.matrix), bs.momenta + k + B * bs.sign, atol=1e-13)
    off = D.matrix - np.diag(np.diag(D.matrix))
    assert np.allclose(off, alpha * coupling_matrix(U, 3), atol=1e-13)


@given(small, small, small, small)
def test_H_hermitian_with_symmetric_spectrum(ar, br, kr, ki):
    from chiraltbg.potential import bistritzer_macdonald
    H = assemble_H(bistritzer_macdonald(), ar, br, complex(kr, ki), 2).matrix
    assert np.allclose(H, H.conj().T)
    e = np.linalg.eigvalsh(H)
    assert np.allclose(np.sort(e), np.sort(-e), atol=1e-10)


def test_shifted_T_factorisation(bm, rng):
    # (2 D_zbar - k + diag(B, -B)) (I + alpha T~) = D_B(alpha) - k
    bs = basis(4)
    for _ in range(5):
        alpha, B, k = (complex(*rng.normal(size=2)) for _ in range(3))
        T = assemble_T(bm, k, B, 4, shifted=True).matrix
        lhs = np.diag(bs.momenta - k + B * bs.sign) @ (np.eye(bs.dim) + alpha * T)
        assert np.max(np.abs(lhs - assemble_D(bm, alpha, B, -k, 4).matrix)) < 1e-11


def test_unshifted_T_factorisation(bm, rng):
    # (2 D_zbar - k)(I + alpha T_k(b)) = D_{alpha b}(alpha) - k
    bs = basis(4)
    for _ in range(5):
        alpha, b, k = (complex(*rng.normal(size=2)) for _ in range(3))
        T = assemble_T(bm, k, b, 4).matrix
        lhs = np.diag(bs.momenta - k) @ (np.eye(bs.dim) + alpha * T)
        assert np.max(np.abs(lhs - assemble_D(bm, alpha, alpha * b, -k, 4).matrix)) < 1e-11


def test_eigenvalue_correspondence(bm):
    # mu in Spec D_{alpha b}(alpha)  <=>  -1/alpha in Spec T_mu(b)
    alpha, b = 0.45, 0.2 - 0.1j
    mu = np.linalg.eigvals(assemble_D(bm, alpha, alpha * b, 0.0, 4).matrix)
    mu = mu[np.argsort(np.abs(mu))][0]
    lam = np.linalg.eigvals(assemble_T(bm, mu, b, 4).matrix)
    assert np.min(np.abs(lam + 1 / alpha)) < 1e-9


def test_resolvent_pole():
    bs = basis(3)
    with pytest.raises(ResolventPole) as info:
        resolvent_diagonal(3, bs.momenta[5])
    assert info.value.distance < 1e-8
    # the shifted resolvent moves the pole
    assert np.all(np.isfinite(resolvent_diagonal(3, bs.momenta[5], 0.1, shifted=True)))


def test_dump_round_trip(tmp_path, bm):
    D = assemble_D(bm, 0.3, 0.1j, 0.2, 3)
    path = tmp_path / "d.bin"
    dump_matrix(D, path)
    assert np.array_equal(load_matrix(path), D.matrix)
    (tmp_path / "bad.bin").write_bytes(b"XXXX" + bytes(12))
    with pytest.raises(ValueError):
        load_matrix(tmp_path / "bad.bin")
    with pytest.raises(ValueError):
        dump_matrix(np.zeros((2, 3)), tmp_path / "rect.bin")
