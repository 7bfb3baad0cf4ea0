import random
from fractions import Fraction

import pytest

from harmquat.axial import (
    AxisFamily, DecompositionError, InvalidFamilyError, NotHarmonicError,
    axes_needed_for_span, axis_stream, decompose_full, decompose_quat, decompose_scalar,
    default_family, kernel_relation, predicted_span_dimension, random_family, span_dimension,
    star_field, star_parts, star_potential,
)
from harmquat.harmonic import axial_lift, basis_axial_scalar, basis_harmonic_scalar, basis_quat_harmonic
from harmquat.poly import (
    X1, X2, Axis, Polynomial3, QField, VectorPoly, grad, is_axial_scalar, laplacian, rot,
)

Z = Polynomial3()
PI1 = QField(X1, VectorPoly(Z, Z, X2))


def test_predicted_table():
    assert [predicted_span_dimension(3, r) for r in range(1, 6)] == [2, 4, 6, 7, 7]


@pytest.mark.parametrize("n", range(1, 5))
def test_span_dimension_random(n):
    rng = random.Random(n)
    for r in range(1, n + 3):
        assert span_dimension(n, random_family(r, rng)) == predicted_span_dimension(n, r)


def test_collinear_family_rejected():
    with pytest.raises(InvalidFamilyError):
        AxisFamily((Axis((1, 2, 3)), Axis((-2, -4, -6))))


def test_axis_stream_deterministic():
    a = [next(iter_) for iter_ in [axis_stream(7)] for _ in range(6)]
    b = list(default_family(6, 7))
    assert a == b
    assert list(default_family(6, 7)) != list(default_family(6, 8))


def test_kernel_relation_sums_to_zero():
    fam = default_family(3)
    phis = kernel_relation(2, fam)
    assert sum(phis, Z).is_zero()
    for w, phi in zip(fam, phis):
        assert is_axial_scalar(phi, w) and not phi.is_zero()
    assert phis[0].leading_coefficient() == 1
    assert kernel_relation(2, fam) == phis


def test_kernel_relation_under_axis_rescaling():
    fam = default_family(3)
    scaled = AxisFamily(tuple(Axis(tuple(c * k for c in w.v)) for w, k in zip(fam, (2, -3, Fraction(1, 2)))))
    # same axial subspaces, so the same normalized relation
    assert kernel_relation(2, scaled) == kernel_relation(2, fam)


def test_kernel_relation_wrong_size():
    with pytest.raises(InvalidFamilyError):
        kernel_relation(2, default_family(2))


@pytest.mark.parametrize("n", range(1, 5))
def test_star_field(n):
    fam = default_family(n + 1)
    s = star_field(n, fam)
    assert s.alpha.is_zero() and not s.u.is_zero() and rot(s.u).is_zero()
    beta = star_potential(s, n)
    assert grad(beta) == s.u and laplacian(beta).is_zero() and beta.is_homogeneous(n + 1)
    assert len(star_parts(n, fam)) == n + 1


def test_decompose_scalar_minimal():
    fam = default_family(3)
    alpha = basis_harmonic_scalar(2)[1]
    parts = decompose_scalar(alpha, fam)
    assert sum((p for _, p in parts), Z) == alpha
    for w, p in parts:
        assert is_axial_scalar(p, w)


def test_decompose_scalar_too_few_axes():
    with pytest.raises(InvalidFamilyError):
        decompose_scalar(basis_harmonic_scalar(2)[0], default_family(2))


def test_decompose_axial_field_is_single_part():
    d = decompose_quat(PI1)
    assert len(d.parts) == 1 and d.parts[0][0].key == (0, 0, 1) and d.is_complete()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_decompose_basis(n):
    for e in basis_quat_harmonic(n):
        d = decompose_quat(e)
        assert d.is_complete() and d.verify()


def test_decompose_with_given_family():
    e = basis_quat_harmonic(2)[3]
    d = decompose_quat(e, default_family(3, seed=5), seed=5)
    assert d.is_complete() and d.verify()


def test_decompose_cap():
    # three axes are too few for degree 2; the residual comes back with the error
    e = basis_quat_harmonic(2)[5]
    with pytest.raises(DecompositionError) as exc:
        decompose_quat(e, default_family(3, seed=3), cap=3, seed=3)
    assert not exc.value.residual.is_zero()


def test_decompose_full_mixed_degree():
    p = PI1 + PI1 * PI1 + QField(3, VectorPoly(1, 0, 0))
    d = decompose_full(p)
    assert d.is_complete() and d.verify()
    q = PI1 + axial_lift(basis_axial_scalar(2, (1, 1, 1))[0], (1, 1, 1))
    d = decompose_full(q)
    assert d.is_complete() and d.verify() and len(d.parts) >= 2


def test_decompose_constant():
    d = decompose_full(QField(2, VectorPoly(0, 1, 0)))
    assert d.is_complete() and d.verify() and len(d.parts) == 1


def test_non_harmonic_rejected():
    with pytest.raises(NotHarmonicError):
        decompose_quat(QField(X1, VectorPoly(Z, Z, Z)))


def test_axes_needed_small():
    assert axes_needed_for_span(1) == 4
    assert axes_needed_for_span(2) == 6
