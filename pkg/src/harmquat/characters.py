"""Coordinate fields, linear harmonic fields and point-evaluation characters.

An evaluation functional at ``x0`` is recovered from its values on the three
coordinate fields of an orthonormal frame; the consistency relations those
values must satisfy come from the identity ``pi1 = o3 pi2 - o2 pi3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .axial import Decomposition, decompose_full
from .harmonic import axial_lift, coaxial_mul
from .poly import (
    Axis,
    Polynomial3,
    QField,
    VectorPoly,
    as_axis,
    field_mul,
    harmonicity_defect,
    is_harmonic_field,
    left_action,
)
from .quaternion import BASIS, Quaternion, Vec3, cross, dot, frac, is_zero_vec, mul, vec3


class InvalidFrameError(ValueError):
    pass


class InconsistentValuesError(ValueError):
    pass


class OutsideBallError(ValueError):
    def __init__(self, msg, growth=None):
        super().__init__(msg)
        self.growth = growth or []


class NotHarmonicLinearError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    w1: Vec3
    w2: Vec3
    w3: Vec3

    def __post_init__(self):
        ws = [vec3(w) for w in (self.w1, self.w2, self.w3)]
        for k in range(3):
            for m in range(3):
                if dot(ws[k], ws[m]) != (1 if k == m else 0):
                    raise InvalidFrameError("frame vectors are not orthonormal")
        if cross(ws[0], ws[1]) != ws[2]:
            raise InvalidFrameError("frame is not right-handed")
        object.__setattr__(self, "w1", ws[0])
        object.__setattr__(self, "w2", ws[1])
        object.__setattr__(self, "w3", ws[2])

    @classmethod
    def standard(cls) -> Frame:
        return cls((1, 0, 0), (0, 1, 0), (0, 0, 1))

    @property
    def vectors(self) -> tuple[Vec3, Vec3, Vec3]:
        return (self.w1, self.w2, self.w3)

    def o(self, k: int) -> Quaternion:
        """The pure quaternion ``{0, w_k}`` for k = 1, 2, 3."""
        return Quaternion.pure(self.vectors[k - 1])


def rotation_from_quaternion(a: int, b: int, c: int, d: int) -> list[list[Fraction]]:
    """Rational rotation matrix of the (unnormalized) quaternion a + bi + cj + dk."""
    s = Fraction(a * a + b * b + c * c + d * d)
    if s == 0:
        raise ValueError("zero quaternion")
    return [
        [(a * a + b * b - c * c - d * d) / s, 2 * (b * c - a * d) / s, 2 * (b * d + a * c) / s],
        [2 * (b * c + a * d) / s, (a * a - b * b + c * c - d * d) / s, 2 * (c * d - a * b) / s],
        [2 * (b * d - a * c) / s, 2 * (c * d + a * b) / s, (a * a - b * b - c * c + d * d) / s],
    ]


def random_frame(rng: random.Random, bound: int = 6) -> Frame:
    while True:
        q = [rng.randint(-bound, bound) for _ in range(4)]
        if any(q):
            break
    r = rotation_from_quaternion(*q)
    return Frame(*r)


# --- fields -------------------------------------------------------------


def coordinate_fields(f: Frame) -> tuple[QField, QField, QField]:
    w1, w2, w3 = f.vectors
    lin = Polynomial3.linear
    pi1 = QField(lin(w1), VectorPoly.scaled_axis(lin(w2), w3))
    pi2 = QField(lin(w2), VectorPoly.scaled_axis(lin(w3), w1))
    pi3 = QField(lin(w3), VectorPoly.scaled_axis(lin(w1), w2))
    for p in (pi1, pi2, pi3):
        assert is_harmonic_field(p)
    return pi1, pi2, pi3


def verify_coordinate_identity(f: Frame) -> bool:
    """``pi1 == o3 pi2 - o2 pi3`` as an exact field identity."""
    pi1, pi2, pi3 = coordinate_fields(f)
    return left_action(f.o(3), pi2) - left_action(f.o(2), pi3) == pi1


@dataclass(frozen=True)
class LinearHarmonicField:
    """``{x . a, A x}`` with ``tr A = 0`` and ``a = rot(A x)``."""

    a: Vec3
    A: tuple[Vec3, Vec3, Vec3]

    def __post_init__(self):
        a = vec3(self.a)
        A = tuple(vec3(row) for row in self.A)
        if len(A) != 3:
            raise ValueError("A must be 3x3")
        if A[0][0] + A[1][1] + A[2][2] != 0:
            raise NotHarmonicLinearError("tr A != 0")
        if a != self.curl_of(A):
            raise NotHarmonicLinearError("a != rot(A x)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "A", A)

    @staticmethod
    def curl_of(A) -> Vec3:
        return (A[2][1] - A[1][2], A[0][2] - A[2][0], A[1][0] - A[0][1])

    @classmethod
    def from_matrix(cls, A) -> LinearHarmonicField:
        """The harmonic linear field with matrix A (trace must vanish)."""
        A = tuple(vec3(row) for row in A)
        return cls(cls.curl_of(A), A)

    @classmethod
    def from_field(cls, p: QField) -> LinearHarmonicField:
        if not p.is_homogeneous(1) and not p.is_zero():
            raise NotHarmonicLinearError("field is not linear")
        a = tuple(p.alpha.diff(i)((0, 0, 0)) for i in range(3))
        A = tuple(tuple(c.diff(j)((0, 0, 0)) for j in range(3)) for c in p.u)
        return cls(a, A)

    def to_field(self) -> QField:
        return QField(Polynomial3.linear(self.a), VectorPoly(*(Polynomial3.linear(r) for r in self.A)))


def _linear_vector(p: QField) -> list[Fraction]:
    return p.to_vector(1)


def expand_linear(pi, f: Frame) -> tuple[Quaternion, Quaternion]:
    """The unique quaternions ``g, h`` with ``pi == g pi2 + h pi3``."""
    if isinstance(pi, LinearHarmonicField):
        pi = pi.to_field()
    if not (pi.is_homogeneous(1) and is_harmonic_field(pi)):
        raise NotHarmonicLinearError("not a harmonic linear field")
    _, pi2, pi3 = coordinate_fields(f)
    cols = [_linear_vector(left_action(e, pi2)) for e in BASIS]
    cols += [_linear_vector(left_action(e, pi3)) for e in BASIS]
    a = linalg.transpose(cols)
    c = linalg.solve(a, _linear_vector(pi))
    g = Quaternion(c[0], c[1:4])
    h = Quaternion(c[4], c[5:8])
    assert left_action(g, pi2) + left_action(h, pi3) == pi
    return g, h


def linear_representation_rank(f: Frame) -> int:
    """Rank of ``(g, h) -> g pi2 + h pi3``; equals the dimension of the
    linear harmonic fields exactly when the representation is unique."""
    _, pi2, pi3 = coordinate_fields(f)
    cols = [_linear_vector(left_action(e, pi2)) for e in BASIS]
    cols += [_linear_vector(left_action(e, pi3)) for e in BASIS]
    return linalg.rank(cols)


def linear_harmonic_dimension() -> int:
    """Dimension of the linear harmonic fields, from the constraint kernel."""
    from .harmonic import basis_quat_harmonic

    return basis_quat_harmonic(1).size


# --- functionals --------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalValues:
    """Values of a functional on the coordinate fields pi1, pi2, pi3."""

    v1: Quaternion
    v2: Quaternion
    v3: Quaternion

    def coefficients(self, f: Frame) -> dict[str, Fraction]:
        """Read off ``a_kl, b_kl`` after checking each value lies in the
        commutative subalgebra ``{a + b w}`` of its axis."""
        w1, w2, w3 = f.vectors
        out = {}
        for name, v, w in (("12", self.v1, w3), ("23", self.v2, w1), ("31", self.v3, w2)):
            if not is_zero_vec(cross(v.vec, w)):
                raise InconsistentValuesError(f"value {v} leaves the subalgebra of its axis")
            out["a" + name] = v.scalar
            out["b" + name] = dot(v.vec, w)
        return out

    def perturbed(self, f: Frame, slot: int, delta) -> FunctionalValues:
        """Shift one of the six coefficients ``a12, b12, a23, b23, a31, b31``
        (``slot`` 0..5) by ``delta``, staying inside each axis subalgebra."""
        vals = [self.v1, self.v2, self.v3]
        axes = (f.w3, f.w1, f.w2)
        k, is_vec = divmod(slot, 2)
        v = vals[k]
        d = frac(delta)
        if is_vec:
            vals[k] = Quaternion(v.scalar, tuple(x + d * y for x, y in zip(v.vec, axes[k])))
        else:
            vals[k] = Quaternion(v.scalar + d, v.vec)
        return FunctionalValues(*vals)


def consistency_defects(vals: FunctionalValues, f: Frame) -> tuple[Fraction, Fraction, Fraction]:
    c = vals.coefficients(f)
    return (c["a12"] - c["b31"], c["b12"] - c["a23"], c["b23"] - c["a31"])


def reconstruct_point(vals: FunctionalValues, f: Frame) -> Vec3:
    """The point ``x`` whose evaluation functional has these values."""
    c = vals.coefficients(f)
    if any(consistency_defects(vals, f)):
        raise InconsistentValuesError(
            "values violate a12 = b31, b12 = a23, b23 = a31; "
            "they do not come from an H-character"
        )
    a, b, cc = c["a12"], c["b12"], c["b23"]
    w1, w2, w3 = f.vectors
    return tuple(a * w1[i] + b * w2[i] + cc * w3[i] for i in range(3))


class Dirac:
    """Evaluation functional ``p -> p(x0)`` at a point of the closed unit ball."""

    def __init__(self, x0):
        x0 = vec3(x0)
        if dot(x0, x0) > 1:
            raise OutsideBallError(
                f"point ({', '.join(str(c) for c in x0)}) is outside closed unit ball",
                growth_demonstration(x0),
            )
        self.x0 = x0

    def __call__(self, p: QField) -> Quaternion:
        return p(self.x0)

    def values(self, f: Frame) -> FunctionalValues:
        return FunctionalValues(*(self(p) for p in coordinate_fields(f)))

    def __repr__(self) -> str:
        return f"Dirac({', '.join(str(c) for c in self.x0)})"


def dirac(x0) -> Dirac:
    return Dirac(x0)


def multiplicativity_check(func, p: QField, q: QField, w) -> bool:
    """``func(p q) == func(p) func(q)`` for coaxial harmonic p, q."""
    return func(coaxial_mul(p, q, w)) == mul(func(p), func(q))


def generators(w, eta) -> tuple[QField, QField]:
    """The unit field and the linear generator of the axial algebra of ``w``.

    ``eta`` must be orthogonal to ``w``; the generator is the harmonic
    w-axial field with scalar part ``x . eta``.
    """
    w = as_axis(w)
    eta = as_axis(eta)
    if dot(w.v, eta.v) != 0:
        raise ValueError("eta must be orthogonal to the axis")
    return QField(Polynomial3.const(1)), axial_lift(Polynomial3.linear(eta.v), w)


def h_module_check(h: Quaternion, p: QField) -> bool:
    return is_harmonic_field(left_action(h, p))


def non_closure_witness() -> tuple[QField, QField, QField, dict]:
    pi1, pi2, _ = coordinate_fields(Frame.standard())
    pq = field_mul(pi1, pi2)
    g, d = harmonicity_defect(pq)
    cert = {
        "p_harmonic": is_harmonic_field(pi1),
        "q_harmonic": is_harmonic_field(pi2),
        "pq_harmonic": is_harmonic_field(pq),
        "grad_alpha_minus_rot_u": str(g),
        "div_u": str(d),
    }
    return pi1, pi2, pq, cert


# --- reconstruction and growth -----------------------------------------------


class ReconstructedCharacter:
    """Functional rebuilt from its values on coordinate fields.

    On a harmonic polynomial field it acts through an axial decomposition,
    each axial part evaluated at the reconstructed point.
    """

    def __init__(self, vals: FunctionalValues, f: Frame):
        self.point = reconstruct_point(vals, f)

    def __call__(self, p) -> Quaternion:
        """Accepts a field or an existing decomposition of one."""
        d = p if isinstance(p, Decomposition) else decompose_full(p)
        total = Quaternion()
        for _, part in d.parts:
            total = total + part(self.point)
        return total


def _orthogonal_axis(x0: Vec3) -> Vec3:
    k = min(range(3), key=lambda i: abs(x0[i]))
    e = [Fraction(0)] * 3
    e[k] = Fraction(1)
    return cross(x0, e)


def growth_demonstration(x0, powers: int = 8, grid: np.ndarray | None = None) -> list[dict]:
    """Powers of an axial generator at a point off the ball versus their
    sup over the ball.

    The axis is orthogonal to ``x0`` and the generator has scalar part
    ``x . x0``, so ``|g^m|^2`` is at most ``(x0 . x0)^m`` on the ball while
    at ``x0`` it equals ``(x0 . x0)^(2m)``; their ratio grows like
    ``(x0 . x0)^m``.
    """
    from .density import ball_grid

    x0 = vec3(x0)
    if is_zero_vec(x0):
        raise ValueError("x0 must be nonzero")
    w = Axis(_orthogonal_axis(x0))
    _, gen = generators(w, x0)
    if grid is None:
        grid = ball_grid(642, 4)
    rows = []
    g = QField(Polynomial3.const(1))
    nsq = dot(x0, x0)
    for m in range(powers + 1):
        val = g(x0).module_sq()
        bound = nsq ** m
        vals = g.evaluate_array(grid)
        sampled = float((vals ** 2).sum(axis=1).max())
        rows.append({
            "power": m,
            "value_module_sq": val,
            "ball_sup_module_sq": bound,
            "sampled_sup_module_sq": sampled,
            "ratio": val / bound,
        })
        g = coaxial_mul(g, gen, w)
    return rows
