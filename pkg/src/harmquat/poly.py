"""Exact polynomials in x1, x2, x3 and the vector calculus on them.

Polynomials are immutable term maps ``{(r1, r2, r3): Fraction}`` with no
zero coefficients, so structural equality is polynomial equality. Monomials
are ordered graded-lexicographically: by total degree, then descending
exponent tuple (``x1^2, x1 x2, x1 x3, x2^2, ...``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Mapping

import numpy as np

from .quaternion import Quaternion, Vec3, cross, dot, frac, is_zero_vec, vec3

Exp = tuple[int, int, int]

MAX_DEGREE = 12


class DegreeError(ValueError):
    pass


@lru_cache(maxsize=None)
def monomials(n: int) -> tuple[Exp, ...]:
    """Exponent triples of total degree ``n`` in graded-lex order."""
    return tuple((a, b, n - a - b) for a in range(n, -1, -1) for b in range(n - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(n: int) -> dict[Exp, int]:
    return {e: i for i, e in enumerate(monomials(n))}


def _glex_key(e: Exp):
    return (sum(e), tuple(-x for x in e))


class Polynomial3:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = frac(c)
            if c != 0:
                e = tuple(int(x) for x in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Polynomial3:
        p = cls.__new__(cls)
        p._terms = {e: c for e, c in terms.items() if c != 0}
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> Polynomial3:
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, i: int) -> Polynomial3:
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def linear(cls, a: Iterable) -> Polynomial3:
        """The linear form ``x . a``."""
        a = vec3(a)
        return cls({(1, 0, 0): a[0], (0, 1, 0): a[1], (0, 0, 1): a[2]})

    @classmethod
    def from_vector(cls, coeffs, n: int) -> Polynomial3:
        return cls._raw({e: frac(c) for e, c in zip(monomials(n), coeffs)})

    def to_vector(self, n: int) -> list[Fraction]:
        idx = monomial_index(n)
        out = [Fraction(0)] * len(idx)
        for e, c in self._terms.items():
            if sum(e) != n:
                raise DegreeError(f"term {e} is not of degree {n}")
            out[idx[e]] = c
        return out

    @property
    def terms(self) -> dict[Exp, Fraction]:
        """Term map in graded-lex order."""
        return dict(self.items())

    def items(self) -> list[tuple[Exp, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _glex_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the first term in graded-lex order (0 for zero)."""
        if not self._terms:
            return Fraction(0)
        return self._terms[min(self._terms, key=_glex_key)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (n is None or degs == {n})

    def homogeneous_part(self, n: int) -> Polynomial3:
        return Polynomial3._raw({e: c for e, c in self._terms.items() if sum(e) == n})

    def degrees(self) -> list[int]:
        return sorted({sum(e) for e in self._terms})

    def depends_on(self, i: int) -> bool:
        return any(e[i] for e in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial3):
            return self._terms == other._terms
        try:
            return self._terms == Polynomial3.const(frac(other))._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> Polynomial3:
        if isinstance(other, Polynomial3):
            return other
        return Polynomial3.const(frac(other))

    def __add__(self, other) -> Polynomial3:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial3._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial3:
        return Polynomial3._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial3:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial3:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial3:
        if not isinstance(other, Polynomial3):
            c = frac(other)
            return Polynomial3._raw({e: v * c for e, v in self._terms.items()})
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial3._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Polynomial3:
        return self * (1 / frac(other))

    def __pow__(self, k: int) -> Polynomial3:
        out = Polynomial3.const(1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> Polynomial3:
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial3._raw(out)

    def integrate(self, i: int) -> Polynomial3:
        """Antiderivative in ``x_i`` vanishing on ``x_i = 0``."""
        out = {}
        for e, c in self._terms.items():
            f = list(e)
            f[i] += 1
            out[tuple(f)] = c / f[i]
        return Polynomial3._raw(out)

    def substitute_zero(self, i: int) -> Polynomial3:
        """Restriction to the plane ``x_i = 0``."""
        return Polynomial3._raw({e: c for e, c in self._terms.items() if e[i] == 0})

    def __call__(self, x) -> Fraction:
        x = vec3(x)
        total = Fraction(0)
        for (a, b, c), v in self._terms.items():
            total += v * x[0] ** a * x[1] ** b * x[2] ** c
        return total

    def evaluate_array(self, pts: np.ndarray) -> np.ndarray:
        """Floating-point evaluation at an ``(m, 3)`` array of points."""
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(len(pts))
        for (a, b, c), v in self._terms.items():
            out += float(v) * pts[:, 0] ** a * pts[:, 1] ** b * pts[:, 2] ** c
        return out

    def content_normalized(self) -> Polynomial3:
        """Scale so the leading graded-lex coefficient is 1."""
        if not self._terms:
            return self
        return self / self.leading_coefficient()

    def __repr__(self) -> str:
        return f"Polynomial3({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sg} {s}" for sg, s in parts[1:])


ZERO = Polynomial3()
X1, X2, X3 = (Polynomial3.var(i) for i in range(3))


@dataclass(frozen=True)
class VectorPoly:
    c1: Polynomial3 = ZERO
    c2: Polynomial3 = ZERO
    c3: Polynomial3 = ZERO

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = getattr(self, name)
            if not isinstance(v, Polynomial3):
                object.__setattr__(self, name, Polynomial3.const(frac(v)))

    @classmethod
    def of(cls, comps: Iterable) -> VectorPoly:
        return cls(*comps)

    @classmethod
    def scaled_axis(cls, s: Polynomial3, w) -> VectorPoly:
        """The field ``s(x) w`` for a constant vector ``w``."""
        return cls(*(s * c for c in vec3(w)))

    def __iter__(self) -> Iterator[Polynomial3]:
        return iter((self.c1, self.c2, self.c3))

    def __getitem__(self, i: int) -> Polynomial3:
        return (self.c1, self.c2, self.c3)[i]

    def __add__(self, other: VectorPoly) -> VectorPoly:
        return VectorPoly(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: VectorPoly) -> VectorPoly:
        return VectorPoly(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> VectorPoly:
        return VectorPoly(*(-a for a in self))

    def __mul__(self, other) -> VectorPoly:
        return VectorPoly(*(a * other for a in self))

    __rmul__ = __mul__

    def __truediv__(self, other) -> VectorPoly:
        return VectorPoly(*(a / other for a in self))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def dot_const(self, w) -> Polynomial3:
        w = vec3(w)
        return self.c1 * w[0] + self.c2 * w[1] + self.c3 * w[2]

    def dot(self, other: VectorPoly) -> Polynomial3:
        return self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3

    def cross(self, other: VectorPoly) -> VectorPoly:
        a, b = self, other
        return VectorPoly(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                          a[0] * b[1] - a[1] * b[0])

    def cross_const_left(self, w) -> VectorPoly:
        """``w x self`` for a constant vector ``w``."""
        w = vec3(w)
        a = self
        return VectorPoly(a[2] * w[1] - a[1] * w[2], a[0] * w[2] - a[2] * w[0],
                          a[1] * w[0] - a[0] * w[1])

    def degree(self) -> int:
        return max(c.degree() for c in self)

    def degrees(self) -> list[int]:
        return sorted(set().union(*(c.degrees() for c in self)))

    def homogeneous_part(self, n: int) -> VectorPoly:
        return VectorPoly(*(c.homogeneous_part(n) for c in self))

    def is_homogeneous(self, n: int | None = None) -> bool:
        d = self.degrees()
        return not d or (len(d) == 1 and (n is None or d == [n]))

    def __call__(self, x) -> Vec3:
        return tuple(c(x) for c in self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self) + ")"


@dataclass(frozen=True)
class QField:
    """Quaternion polynomial field ``{alpha, u}``."""

    alpha: Polynomial3 = ZERO
    u: VectorPoly = VectorPoly()

    def __post_init__(self):
        if not isinstance(self.alpha, Polynomial3):
            object.__setattr__(self, "alpha", Polynomial3.const(frac(self.alpha)))
        if not isinstance(self.u, VectorPoly):
            object.__setattr__(self, "u", VectorPoly.of(self.u))

    @classmethod
    def constant(cls, q: Quaternion) -> QField:
        return cls(Polynomial3.const(q.scalar), VectorPoly(*(Polynomial3.const(c) for c in q.vec)))

    def components(self) -> tuple[Polynomial3, ...]:
        return (self.alpha, self.u.c1, self.u.c2, self.u.c3)

    @classmethod
    def from_components(cls, comps) -> QField:
        a, b, c, d = comps
        return cls(a, VectorPoly(b, c, d))

    def __add__(self, other: QField) -> QField:
        return QField(self.alpha + other.alpha, self.u + other.u)

    def __sub__(self, other: QField) -> QField:
        return QField(self.alpha - other.alpha, self.u - other.u)

    def __neg__(self) -> QField:
        return QField(-self.alpha, -self.u)

    def __mul__(self, other):
        if isinstance(other, QField):
            return field_mul(self, other)
        if isinstance(other, Quaternion):
            return field_mul(self, QField.constant(other))
        return QField(self.alpha * other, self.u * other)

    def __rmul__(self, other):
        if isinstance(other, Quaternion):
            return left_action(other, self)
        return QField(self.alpha * other, self.u * other)

    def __truediv__(self, other) -> QField:
        return QField(self.alpha / other, self.u / other)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def is_constant(self) -> bool:
        return all(c.degree() <= 0 for c in self.components())

    def degree(self) -> int:
        return max(c.degree() for c in self.components())

    def degrees(self) -> list[int]:
        return sorted(set().union(*(c.degrees() for c in self.components())))

    def homogeneous_part(self, n: int) -> QField:
        return QField(self.alpha.homogeneous_part(n), self.u.homogeneous_part(n))

    def is_homogeneous(self, n: int | None = None) -> bool:
        d = self.degrees()
        return not d or (len(d) == 1 and (n is None or d == [n]))

    def to_vector(self, n: int) -> list[Fraction]:
        out: list[Fraction] = []
        for c in self.components():
            out.extend(c.to_vector(n))
        return out

    @classmethod
    def from_vector(cls, coeffs, n: int) -> QField:
        m = len(monomials(n))
        coeffs = list(coeffs)
        return cls.from_components(
            Polynomial3.from_vector(coeffs[k * m:(k + 1) * m], n) for k in range(4)
        )

    def __call__(self, x) -> Quaternion:
        return Quaternion(self.alpha(x), self.u(x))

    def evaluate_array(self, pts: np.ndarray) -> np.ndarray:
        """``(m, 4)`` float array of field values."""
        return np.stack([c.evaluate_array(pts) for c in self.components()], axis=1)

    def __str__(self) -> str:
        return f"{{{self.alpha}, {self.u}}}"


def field_mul(p: QField, q: QField) -> QField:
    """Pointwise quaternion product of two fields."""
    a, u = p.alpha, p.u
    b, v = q.alpha, q.u
    return QField(a * b - u.dot(v), v * a + u * b + u.cross(v))


def left_action(h: Quaternion, p: QField) -> QField:
    """Module action ``h p`` of a constant quaternion on a field."""
    return field_mul(QField.constant(h), p)


# --- axes -----------------------------------------------------------------


def _primitive(v: Vec3) -> tuple[int, int, int]:
    den = 1
    for c in v:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)  # type: ignore[return-value]


@dataclass(frozen=True)
class Axis:
    """Nonzero rational direction. Never normalized: formulas that need the
    unit vector are rewritten in terms of ``v`` and ``v . v``."""

    v: Vec3

    def __post_init__(self):
        v = vec3(self.v)
        if is_zero_vec(v):
            raise ValueError("axis vector must be nonzero")
        object.__setattr__(self, "v", v)

    @property
    def norm_sq(self) -> Fraction:
        return dot(self.v, self.v)

    @property
    def key(self) -> tuple[int, int, int]:
        """Primitive integer direction with positive leading entry; equal for
        axes that coincide up to scale and sign."""
        return _primitive(self.v)

    def parallel(self, other: Axis) -> bool:
        return is_zero_vec(cross(self.v, other.v))

    def equivalent(self, other: Axis) -> bool:
        """Proportional with a positive factor."""
        return self.parallel(other) and dot(self.v, other.v) > 0

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.v) + ")"


def as_axis(w) -> Axis:
    return w if isinstance(w, Axis) else Axis(w)


# --- differential operators -----------------------------------------------


def grad(a: Polynomial3) -> VectorPoly:
    return VectorPoly(a.diff(0), a.diff(1), a.diff(2))


def div(u: VectorPoly) -> Polynomial3:
    return u.c1.diff(0) + u.c2.diff(1) + u.c3.diff(2)


def rot(u: VectorPoly) -> VectorPoly:
    return VectorPoly(
        u.c3.diff(1) - u.c2.diff(2),
        u.c1.diff(2) - u.c3.diff(0),
        u.c2.diff(0) - u.c1.diff(1),
    )


def laplacian(a: Polynomial3) -> Polynomial3:
    return a.diff(0).diff(0) + a.diff(1).diff(1) + a.diff(2).diff(2)


def vector_laplacian(u: VectorPoly) -> VectorPoly:
    return VectorPoly(*(laplacian(c) for c in u))


def dir_deriv(a: Polynomial3, w) -> Polynomial3:
    w = as_axis(w).v
    return a.diff(0) * w[0] + a.diff(1) * w[1] + a.diff(2) * w[2]


def dir_deriv_vec(u: VectorPoly, w) -> VectorPoly:
    return VectorPoly(*(dir_deriv(c, w) for c in u))


def integrate_x3(a: Polynomial3) -> Polynomial3:
    return a.integrate(2)


def position_dot(u: VectorPoly) -> Polynomial3:
    """``x . u``."""
    return X1 * u.c1 + X2 * u.c2 + X3 * u.c3


class NotAGradientError(ValueError):
    pass


def euler_potential(u: VectorPoly, n: int) -> Polynomial3:
    """Potential ``(x . u) / (n + 1)`` of a curl-free field homogeneous of degree n."""
    if not u.is_homogeneous(n):
        raise NotAGradientError(f"field is not homogeneous of degree {n}")
    if not rot(u).is_zero():
        raise NotAGradientError("field has nonzero curl")
    beta = position_dot(u) / (n + 1)
    if grad(beta) != u:
        raise NotAGradientError("Euler identity failed")  # unreachable for valid input
    return beta


# --- harmonicity ----------------------------------------------------------


def harmonicity_defect(p: QField) -> tuple[VectorPoly, Polynomial3]:
    """``(grad alpha - rot u, div u)``; both vanish iff p is harmonic."""
    return grad(p.alpha) - rot(p.u), div(p.u)


def is_harmonic_field(p: QField) -> bool:
    g, d = harmonicity_defect(p)
    return g.is_zero() and d.is_zero()


def is_axial_scalar(a: Polynomial3, w) -> bool:
    return dir_deriv(a, w).is_zero()


def is_axial(p: QField, w) -> bool:
    """True iff p has the form ``{phi, psi w}`` with phi, psi constant along w."""
    w = as_axis(w)
    if any(not dir_deriv(c, w).is_zero() for c in p.components()):
        return False
    return p.u.cross_const_left(w.v).is_zero()


def is_axial_harmonic(p: QField, w) -> bool:
    return is_axial(p, w) and is_harmonic_field(p)


def axial_profile(p: QField, w) -> Polynomial3:
    """For ``p = {phi, s w}`` return ``s`` (so ``u = s w``)."""
    w = as_axis(w)
    return p.u.dot_const(w.v) / w.norm_sq


def homogeneous_components(p: QField) -> list[tuple[int, QField]]:
    return [(n, p.homogeneous_part(n)) for n in p.degrees()]
