import random
from fractions import Fraction

import numpy as np
import pytest

from harmquat.acceptance import random_harmonic_vector
from harmquat.density import (
    PreconditionError, approximate, ball_grid, complete_to_quaternion, dirichlet_harmonic_2d,
    divergence_correction, divisible_by_circle, fibonacci_sphere, laplacian_2d,
    planar_power_parts, poisson_particular_2d, sup_norms,
)
from harmquat.poly import X1, X2, X3, Polynomial3, QField, VectorPoly, is_harmonic_field

Z = Polynomial3()
PI1 = QField(X1, VectorPoly(Z, Z, X2))
HALF = Fraction(1, 2)


def test_poisson_examples():
    assert laplacian_2d(poisson_particular_2d(Polynomial3.const(1))) == 1
    f = X1 ** 3 * X2 - 4 * X2 ** 2
    assert laplacian_2d(poisson_particular_2d(f)) == f
    with pytest.raises(PreconditionError):
        poisson_particular_2d(X3)


def test_dirichlet_examples():
    assert dirichlet_harmonic_2d(X1 ** 2) == HALF + HALF * X1 ** 2 - HALF * X2 ** 2
    assert dirichlet_harmonic_2d(X1 ** 2 + X2 ** 2) == 1
    assert dirichlet_harmonic_2d(X1 * X2) == X1 * X2


def test_dirichlet_agrees_on_circle():
    # rational points on the unit circle as an independent check
    q = X1 ** 4 * X2 - 3 * X1 * X2 ** 2 + X2
    r = dirichlet_harmonic_2d(q)
    assert laplacian_2d(r).is_zero()
    for t in (Fraction(1, 2), Fraction(-3, 7), Fraction(5)):
        pt = ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t), 0)
        assert q(pt) == r(pt)
    assert divisible_by_circle(q - r)


def test_planar_powers():
    re, im = planar_power_parts(2)
    assert re == X1 ** 2 - X2 ** 2 and im == 2 * X1 * X2


def test_divergence_correction_example():
    rep = divergence_correction(VectorPoly(X1, Z, Z))
    assert rep.eta == X3
    assert rep.u_tilde == VectorPoly(X1, Z, -X3)
    assert rep.ok()


def test_divergence_free_input_unchanged():
    v = PI1.u
    rep = divergence_correction(v)
    assert rep.eta.is_zero() and rep.u_tilde == v


def test_non_harmonic_input_rejected():
    with pytest.raises(PreconditionError):
        divergence_correction(VectorPoly(X1 ** 2, Z, Z))


@pytest.mark.parametrize("seed", range(5))
def test_certificates_and_linearity(seed):
    v = random_harmonic_vector(random.Random(seed), 4)
    w = random_harmonic_vector(random.Random(seed + 100), 4)
    rv, rw, rs = divergence_correction(v), divergence_correction(w), divergence_correction(v + w)
    assert rv.ok() and rw.ok() and rs.ok()
    assert rs.eta == rv.eta + rw.eta
    assert divergence_correction(v * 3).u_tilde == rv.u_tilde * 3


def test_complete_to_quaternion_examples():
    assert complete_to_quaternion(VectorPoly(Z, Z, X2)) == PI1
    p = complete_to_quaternion(VectorPoly(Z, Z, X2), alpha0=5)
    assert p.alpha == X1 + 5 and is_harmonic_field(p)
    with pytest.raises(PreconditionError):
        complete_to_quaternion(VectorPoly(X1, Z, Z))


def test_fibonacci_sphere_unit():
    pts = fibonacci_sphere(100)
    assert np.allclose((pts ** 2).sum(axis=1), 1)
    assert ball_grid(50, 3).shape == (150, 3)


def test_sup_norms_on_pi1():
    # |pi1(x)|^2 = x1^2 + x2^2, so the sup over the ball is 1
    s = sup_norms(PI1, ball_grid(2000, 2))
    assert 0.99 < s["sup_module"] <= 1 + 1e-12


def test_approximate_zero_perturbation_exact():
    res = approximate(PI1, VectorPoly(), ball_grid(200, 2))
    assert res.p_tilde == PI1 and res.eta.is_zero()
    assert res.error["sup_module"] == 0


def test_approximate_error_scales():
    grid = ball_grid(400, 3)
    pert = VectorPoly(X1 * X2, Z, X3)
    e1 = approximate(PI1, pert, grid).error["sup_module"]
    e2 = approximate(PI1, pert * 2, grid).error["sup_module"]
    assert e1 > 0 and abs(e2 - 2 * e1) < 1e-9
