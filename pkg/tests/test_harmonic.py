from fractions import Fraction

import pytest

from harmquat.harmonic import (
    axial_lift, basis_axial_scalar, basis_harmonic_scalar, basis_quat_axial, basis_quat_harmonic,
    basis_quat_zero_scalar, clear_caches, coaxial_mul, conjugate, lifted_axial_basis,
)
from harmquat.poly import (
    X1, X2, DegreeError, Polynomial3, QField, VectorPoly, dir_deriv, grad, is_axial_harmonic,
)

Z = Polynomial3()
PI1 = QField(X1, VectorPoly(Z, Z, X2))


@pytest.mark.parametrize("n", range(9))
def test_scalar_harmonic_dimension(n):
    b = basis_harmonic_scalar(n)
    assert b.size == 2 * n + 1 and b.verify()


@pytest.mark.parametrize("n", range(6))
def test_quat_harmonic_dimension(n):
    b = basis_quat_harmonic(n)
    assert b.size == 4 * n + 4 and b.verify()


@pytest.mark.parametrize("n", range(1, 6))
def test_zero_scalar_dimension(n):
    b = basis_quat_zero_scalar(n)
    assert b.size == 2 * n + 3 and b.verify()


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("w", [(0, 0, 1), (1, 2, -2), (Fraction(1, 3), -1, 4)])
def test_axial_scalar_dimension(n, w):
    b = basis_axial_scalar(n, w)
    assert b.size == 2 and b.verify()


def test_axial_scalar_degree_zero():
    b = basis_axial_scalar(0, (1, 1, 0))
    assert b.size == 1 and b.degenerate


def test_quat_axial_degree_zero_has_all_constants():
    b = basis_quat_axial(0, (0, 0, 1))
    assert b.size == 4 and b.degenerate


@pytest.mark.parametrize("n", range(1, 5))
def test_quat_axial_matches_lifts(n):
    w = (2, -1, 3)
    b = basis_quat_axial(n, w)
    assert b.size == 2 and b.verify()
    assert all(b.contains(g) for g in lifted_axial_basis(n, w))


def test_axial_lift_examples():
    # lifts along k of x1 and x2
    assert axial_lift(X1, (0, 0, 1)) == PI1
    assert axial_lift(X2, (0, 0, 1)) == QField(X2, VectorPoly(Z, Z, -X1))


def test_lift_invariant_under_axis_scaling():
    phi = X1 * X2
    assert axial_lift(phi, (0, 0, 1)) == axial_lift(phi, (0, 0, -5))


def test_conjugate_relation():
    w = (1, 2, 2)
    for phi in basis_axial_scalar(3, w):
        psi, nsq = conjugate(phi, w)
        assert grad(psi) == grad(phi).cross_const_left(w)
        assert dir_deriv(psi, w).is_zero() and nsq == 9


def test_pi1_squared():
    sq = coaxial_mul(PI1, PI1, (0, 0, 1))
    assert sq == QField(X1 ** 2 - X2 ** 2, VectorPoly(Z, Z, 2 * X1 * X2))
    assert sq == PI1 * PI1


@pytest.mark.parametrize("w", [(0, 0, 1), (1, -2, 2), (3, 0, 4)])
def test_coaxial_closed(w):
    a, b = lifted_axial_basis(2, w)
    c, _ = lifted_axial_basis(1, w)
    prod = coaxial_mul(a + b, c, w)
    assert is_axial_harmonic(prod, w)
    assert prod == (a + b) * c


def test_degree_cap():
    with pytest.raises(DegreeError):
        basis_harmonic_scalar(100)


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("HARMQUAT_CACHE_DIR", str(tmp_path))
    clear_caches()
    first = basis_quat_harmonic(2)
    assert any(tmp_path.iterdir())
    clear_caches()
    assert basis_quat_harmonic(2) == first
    clear_caches()
