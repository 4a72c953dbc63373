import numpy as np
import pytest
from hypothesis import given, strategies as st

from chiraltbg.lattice import (CELL_AREA, DUAL_SCALE, GAMMA, K, KPRIME, OMEGA, VERTEX, DualCoord,
                               LatticeCoord, distance_mod_dual, dual_coords, half_lattice_center,
                               in_dual, in_lattice, nearest_dual, pairing, rectangle_distance,
                               reduce_array, reduce_to_fundamental, rotate_thirds, thirds,
                               thirds_value, to_dual, to_lattice, z_of_k)

ints = st.integers(-20, 20)
reals = st.floats(-30, 30, allow_nan=False)


def test_dual_pairing_is_multiple_of_2pi():
    # <gamma, p> in 2 pi Z for gamma in Lambda, p in Lambda*
    for g in (1, OMEGA, 2 - OMEGA):
        for p in (DUAL_SCALE, DUAL_SCALE * OMEGA):
            x = pairing(g, p) / (2 * np.pi)
            assert abs(x - round(x)) < 1e-12


def test_special_points():
    assert in_dual(3 * K)
    assert not in_dual(K)
    assert not in_dual(K - KPRIME)
    assert distance_mod_dual(OMEGA * K, K) < 1e-12
    assert in_dual(2 * VERTEX)
    assert not in_dual(VERTEX)
    assert CELL_AREA == pytest.approx(np.sqrt(3) / 2)


def test_z_of_k_maps_dual_to_lattice():
    for p in (DualCoord(1, 0), DualCoord(2, -3)):
        assert to_lattice(z_of_k(p.value)) is not None


def test_membership_round_trip():
    assert to_lattice(3 + 2 * OMEGA) == LatticeCoord(3, 2)
    assert to_dual(DualCoord(-1, 4).value) == DualCoord(-1, 4)
    assert to_lattice(0.5) is None
    assert not in_lattice(0.3 + 0.1j)


def test_rotation_of_coordinates():
    p = DualCoord(2, 5)
    assert abs(p.rotate().value - OMEGA * p.value) < 1e-12
    g = LatticeCoord(-1, 3)
    assert abs(g.rotate().value - OMEGA * g.value) < 1e-12


@given(reals, reals)
def test_reduce_to_fundamental_is_equivalent_and_idempotent(x, y):
    k = complex(x, y)
    k0, p = reduce_to_fundamental(k)
    assert abs(k0 + p.value - k) < 1e-9
    cx, cy = dual_coords(k0)
    assert -0.5 - 1e-12 <= cx < 0.5 + 1e-12 and -0.5 - 1e-12 <= cy < 0.5 + 1e-12
    k1, q = reduce_to_fundamental(k0)
    assert abs(k1 - k0) < 1e-9
    assert abs(reduce_array(np.array([k]))[0] - k0) < 1e-9


@given(reals, reals)
def test_nearest_dual_is_nearest(x, y):
    k = complex(x, y)
    p = nearest_dual(k)
    for dm in (-1, 0, 1):
        for dn in (-1, 0, 1):
            q = DualCoord(p.m + dm, p.n + dn)
            assert abs(k - p.value) <= abs(k - q.value) + 1e-12


@given(ints, ints)
def test_rotate_thirds_has_order_three(a, b):
    r = (a, b)
    for _ in range(3):
        r = rotate_thirds(*r)
    assert r == (a, b)
    assert abs(thirds_value(*rotate_thirds(a, b)) - OMEGA * thirds_value(a, b)) < 1e-10


@given(ints, ints)
def test_thirds_round_trip(a, b):
    assert thirds(thirds_value(a, b)) == (a, b)


@given(reals, reals, ints, ints)
def test_rectangle_grid_is_dual_periodic(x, y, m, n):
    k = complex(x, y)
    assert abs(rectangle_distance(k + DualCoord(m, n).value) - rectangle_distance(k)) < 1e-9


def test_rectangle_grid_examples():
    assert rectangle_distance(2 * np.pi + 0.37j) < 1e-14
    assert rectangle_distance(0.37 + 2j * np.pi / np.sqrt(3)) < 1e-14
    assert rectangle_distance(1.0 + 1.0j) == pytest.approx(1.0)
    assert rectangle_distance(GAMMA) == 0


def test_half_lattice_center():
    assert half_lattice_center(0.01 + 0.02j, 0.1) == 0
    c = half_lattice_center(VERTEX + 0.03, 0.1)
    assert abs(c - VERTEX) < 1e-12
    assert half_lattice_center(K, 0.3) is None
