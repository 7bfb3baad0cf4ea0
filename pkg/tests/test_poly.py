from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from harmquat.poly import (
    X1, X2, X3, Axis, NotAGradientError, Polynomial3, QField, VectorPoly, div, euler_potential,
    grad, is_axial, is_harmonic_field, laplacian, monomials, rot,
)

from conftest import polynomials, vector_polys


def test_monomial_count():
    for n in range(8):
        assert len(monomials(n)) == (n + 1) * (n + 2) // 2


def test_str_and_arithmetic():
    assert str(X1 ** 2 - X2 ** 2) == "x1^2 - x2^2"
    assert str(X1 ** 2 / 2) == "1/2*x1^2"
    assert (X1 + X2) * (X1 - X2) == X1 ** 2 - X2 ** 2
    assert Polynomial3().degree() == -1
    assert (X1 * X3 + 1).degrees() == [0, 2]


def test_exact_evaluation():
    p = X1 ** 2 * X2 - Fraction(1, 3) * X3
    assert p((Fraction(1, 2), 3, 1)) == Fraction(3, 4) - Fraction(1, 3)


@given(polynomials(4))
def test_vector_roundtrip(p):
    for n in p.degrees():
        h = p.homogeneous_part(n)
        assert Polynomial3.from_vector(h.to_vector(n), n) == h


@given(polynomials(4))
def test_rot_grad_zero(a):
    assert rot(grad(a)).is_zero()


@given(vector_polys(3))
def test_div_rot_zero(u):
    assert div(rot(u)).is_zero()


@given(polynomials(4))
def test_laplacian_is_div_grad(a):
    assert laplacian(a) == div(grad(a))


@given(polynomials(3))
def test_diff_integrate(a):
    for i in range(3):
        assert a.integrate(i).diff(i) == a


def test_grad_matches_finite_differences():
    # independent numeric oracle
    a = X1 ** 3 * X2 - 2 * X2 * X3 ** 2 + X1 * X3
    pts = np.array([[0.3, -0.2, 0.5], [0.1, 0.7, -0.4]])
    h = 1e-6
    g = grad(a)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        fd = (a.evaluate_array(pts + e) - a.evaluate_array(pts - e)) / (2 * h)
        assert np.allclose(fd, g[i].evaluate_array(pts), atol=1e-6)


def test_euler_potential():
    a = X1 ** 2 * X2 - X3 ** 3 / 3
    assert euler_potential(grad(a), 2) == a
    with pytest.raises(NotAGradientError):
        euler_potential(VectorPoly(X2, -X1, Polynomial3()), 1)


def test_coordinate_fields_harmonic():
    z = Polynomial3()
    pi1 = QField(X1, VectorPoly(z, z, X2))
    assert is_harmonic_field(pi1)
    assert not is_harmonic_field(QField(X1, VectorPoly(z, z, z)))


def test_axial_predicate():
    z = Polynomial3()
    pi1 = QField(X1, VectorPoly(z, z, X2))
    assert is_axial(pi1, (0, 0, 1))
    assert is_axial(pi1, (0, 0, -3))
    assert not is_axial(pi1, (1, 0, 0))


def test_axis_key_invariant_under_scaling():
    assert Axis((2, -4, 6)).key == Axis((-1, 2, -3)).key
    assert Axis((Fraction(1, 2), 0, 0)).parallel(Axis((5, 0, 0)))
    with pytest.raises(ValueError):
        Axis((0, 0, 0))
