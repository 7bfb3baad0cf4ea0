"""Divergence correction and completion of harmonic polynomial vector fields.

Given a componentwise harmonic polynomial field ``v`` whose divergence need
not vanish, build a harmonic ``eta`` with ``d eta / d x3 = div v`` so that
``v - eta k`` is harmonic and divergence-free, then attach a scalar potential
to obtain a harmonic quaternion field. Every stage is linear and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .poly import (
    Polynomial3,
    QField,
    VectorPoly,
    div,
    euler_potential,
    grad,
    integrate_x3,
    is_harmonic_field,
    laplacian,
    rot,
    vector_laplacian,
)
from .quaternion import frac


class PreconditionError(ValueError):
    pass


def _is_planar(f: Polynomial3) -> bool:
    return not f.depends_on(2)


def laplacian_2d(f: Polynomial3) -> Polynomial3:
    return f.diff(0).diff(0) + f.diff(1).diff(1)


def poisson_particular_2d(f: Polynomial3) -> Polynomial3:
    """A polynomial ``q(x1, x2)`` with ``q_11 + q_22 = f``.

    Each sweep integrates the remaining right-hand side twice in x1; the
    defect it leaves is ``-d^2/dx2^2`` of what was added, whose x2 degree is
    two lower, so the sweep terminates.
    """
    if not _is_planar(f):
        raise PreconditionError("right-hand side must not depend on x3")
    q = Polynomial3()
    rhs = f
    while not rhs.is_zero():
        t = rhs.integrate(0).integrate(0)
        q = q + t
        rhs = -t.diff(1).diff(1)
    assert laplacian_2d(q) == f
    return q


def _circle_remainder(f: Polynomial3) -> Polynomial3:
    """Normal form of f modulo ``x1^2 + x2^2 - 1`` (x2 degree at most 1)."""
    terms = dict(f.terms)
    out: dict = {}
    while terms:
        e, c = terms.popitem()
        a, b, z = e
        if b < 2:
            out[e] = out.get(e, 0) + c
            continue
        # x2^b = x2^(b-2) (1 - x1^2)
        for e2, c2 in (((a, b - 2, z), c), ((a + 2, b - 2, z), -c)):
            terms[e2] = terms.get(e2, 0) + c2
            if terms[e2] == 0:
                del terms[e2]
    return Polynomial3(out)


def divisible_by_circle(f: Polynomial3) -> bool:
    return _circle_remainder(f).is_zero()


def planar_power_parts(k: int) -> tuple[Polynomial3, Polynomial3]:
    """``(R_k, I_k)`` with ``(x1 + i x2)^k = R_k + i I_k``."""
    re, im = Polynomial3.const(1), Polynomial3()
    x1, x2 = Polynomial3.var(0), Polynomial3.var(1)
    for _ in range(k):
        re, im = re * x1 - im * x2, re * x2 + im * x1
    return re, im


def dirichlet_harmonic_2d(q: Polynomial3) -> Polynomial3:
    """The harmonic polynomial in x1, x2 that agrees with q on the unit circle.

    On the circle ``x1 = (z + 1/z)/2`` and ``x2 = (z - 1/z)/(2i)``; expanding
    each monomial as a Laurent polynomial in z and replacing ``z^m`` by
    ``(x1 + i x2)^m`` and ``z^-m`` by its conjugate gives the extension.
    """
    if not _is_planar(q):
        raise PreconditionError("boundary data must not depend on x3")
    # Laurent coefficients as {m: (re, im)}
    laurent: dict[int, list[Fraction]] = {}
    for (a, b, _), c in q.items():
        # ((z + w)/2)^a ((z - w)/(2i))^b with w = 1/z
        poly = {0: [Fraction(1), Fraction(0)]}
        for _ in range(a):
            poly = _laurent_mul(poly, {1: [Fraction(1, 2), Fraction(0)], -1: [Fraction(1, 2), Fraction(0)]})
        for _ in range(b):
            # 1/(2i) = -i/2
            poly = _laurent_mul(poly, {1: [Fraction(0), Fraction(-1, 2)], -1: [Fraction(0), Fraction(1, 2)]})
        for m, (re, im) in poly.items():
            acc = laurent.setdefault(m, [Fraction(0), Fraction(0)])
            acc[0] += c * re
            acc[1] += c * im
    r = Polynomial3()
    for m, (re, im) in laurent.items():
        rk, ik = planar_power_parts(abs(m))
        if m >= 0:
            # real part of (re + i im)(R + i I)
            r = r + rk * re - ik * im
        else:
            # real part of (re + i im)(R - i I)
            r = r + rk * re + ik * im
    assert laplacian_2d(r).is_zero() and divisible_by_circle(q - r)
    return r


def _laurent_mul(p: dict, q: dict) -> dict:
    out: dict[int, list[Fraction]] = {}
    for m, (a, b) in p.items():
        for k, (c, d) in q.items():
            acc = out.setdefault(m + k, [Fraction(0), Fraction(0)])
            acc[0] += a * c - b * d
            acc[1] += a * d + b * c
    return out


@dataclass
class CorrectionReport:
    input_v: VectorPoly
    q: Polynomial3
    r: Polynomial3
    eta: Polynomial3
    u_tilde: VectorPoly
    certificates: dict[str, bool] = field(default_factory=dict)

    def ok(self) -> bool:
        return all(self.certificates.values())


def divergence_correction(v: VectorPoly) -> CorrectionReport:
    if not vector_laplacian(v).is_zero():
        raise PreconditionError("input field is not componentwise harmonic")
    d = div(v)
    rhs = -(d.diff(2).substitute_zero(2))
    q = poisson_particular_2d(rhs)
    r = dirichlet_harmonic_2d(q)
    eta = q - r + integrate_x3(d)
    k_eta = VectorPoly(Polynomial3(), Polynomial3(), eta)
    u_tilde = v - k_eta
    certs = {
        "div_u_tilde_zero": div(u_tilde).is_zero(),
        "laplacian_u_tilde_zero": vector_laplacian(u_tilde).is_zero(),
        "laplacian_eta_zero": laplacian(eta).is_zero(),
        "dx3_eta_equals_div_v": eta.diff(2) == d,
        "u_tilde_equals_v_minus_eta_k": u_tilde + k_eta == v,
    }
    return CorrectionReport(v, q, r, eta, u_tilde, certs)


def complete_to_quaternion(u: VectorPoly, alpha0=0) -> QField:
    """Harmonic field ``{alpha, u}`` with ``alpha(0) = alpha0``."""
    if not div(u).is_zero() or not vector_laplacian(u).is_zero():
        raise PreconditionError("field must be divergence-free and harmonic")
    w = rot(u)
    alpha = Polynomial3.const(frac(alpha0))
    for m in w.degrees():
        alpha = alpha + euler_potential(w.homogeneous_part(m), m)
    p = QField(alpha, u)
    assert grad(alpha) == w and is_harmonic_field(p)
    return p


# --- sampling -------------------------------------------------------------


def fibonacci_sphere(m: int) -> np.ndarray:
    i = np.arange(m) + 0.5
    z = 1.0 - 2.0 * i / m
    rho = np.sqrt(1.0 - z * z)
    theta = np.pi * (1.0 + 5.0 ** 0.5) * i
    return np.stack([rho * np.cos(theta), rho * np.sin(theta), z], axis=1)


def ball_grid(points: int = 2562, radii: int = 8) -> np.ndarray:
    """Sphere points scaled by the geometric radii 1, 1/2, ..., 2^-(radii-1)."""
    s = fibonacci_sphere(points)
    return np.concatenate([s * 0.5 ** k for k in range(radii)])


def sup_norms(p: QField, grid: np.ndarray) -> dict[str, float]:
    """Sampled sup-norm estimates of a field over the ball (not certificates)."""
    vals = p.evaluate_array(grid)
    pointwise = np.sqrt((vals ** 2).sum(axis=1))
    alpha = np.abs(vals[:, 0]).max()
    u = np.sqrt((vals[:, 1:] ** 2).sum(axis=1)).max()
    return {
        "sup_module": float(pointwise.max()),
        "component_norm": float(np.hypot(alpha, u)),
        "sup_alpha": float(alpha),
        "sup_u": float(u),
    }


@dataclass
class ApproximationResult:
    p_tilde: QField
    correction: CorrectionReport
    error: dict[str, float]

    @property
    def eta(self) -> Polynomial3:
        return self.correction.eta


def approximate(p_target: QField, perturbation: VectorPoly,
                grid: np.ndarray | None = None) -> ApproximationResult:
    """Perturb the vector part, correct its divergence and complete it.

    The error dictionary holds both sampled norms of ``p_target - p_tilde``:
    the sup of the pointwise quaternion module and the root-sum-square of
    the component sup norms.
    """
    if not is_harmonic_field(p_target):
        raise PreconditionError("target field is not harmonic")
    if not vector_laplacian(perturbation).is_zero():
        raise PreconditionError("perturbation is not componentwise harmonic")
    rep = divergence_correction(p_target.u + perturbation)
    p_tilde = complete_to_quaternion(rep.u_tilde, p_target.alpha((0, 0, 0)))
    if grid is None:
        grid = ball_grid()
    return ApproximationResult(p_tilde, rep, sup_norms(p_target - p_tilde, grid))
