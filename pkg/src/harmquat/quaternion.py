"""Exact quaternion arithmetic.

A single concrete type, :class:`Quaternion`, carries both the Hamilton form
``a + b i + c j + d k`` and the geometric form ``{alpha, u}``. The two views
differ only in how the data is read, so :func:`embed` and :func:`unembed`
just repackage coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec3 = tuple[Fraction, Fraction, Fraction]


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to Fraction.

    Floats are refused: everything in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec3(v: Iterable) -> Vec3:
    t = tuple(frac(c) for c in v)
    if len(t) != 3:
        raise ValueError(f"expected 3 components, got {len(t)}")
    return t  # type: ignore[return-value]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(c == 0 for c in v)


@dataclass(frozen=True)
class Quaternion:
    """Pair ``{scalar, vec}`` with the product
    ``{ab - u.v, a v + b u + u x v}``."""

    scalar: Fraction = Fraction(0)
    vec: Vec3 = (Fraction(0), Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "scalar", frac(self.scalar))
        object.__setattr__(self, "vec", vec3(self.vec))

    @classmethod
    def real(cls, a) -> Quaternion:
        return cls(frac(a))

    @classmethod
    def pure(cls, v) -> Quaternion:
        return cls(Fraction(0), vec3(v))

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(
            self.scalar + other.scalar,
            tuple(a + b for a, b in zip(self.vec, other.vec)),
        )

    def __sub__(self, other: Quaternion) -> Quaternion:
        return self + (-other)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.scalar, tuple(-a for a in self.vec))

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        c = frac(other)
        return Quaternion(self.scalar * c, tuple(a * c for a in self.vec))

    def __rmul__(self, other):
        return self * other

    def conjugate(self) -> Quaternion:
        return Quaternion(self.scalar, tuple(-a for a in self.vec))

    def module_sq(self) -> Fraction:
        return module_sq(self)

    def is_zero(self) -> bool:
        return self.scalar == 0 and is_zero_vec(self.vec)

    def __str__(self) -> str:
        v = ", ".join(str(c) for c in self.vec)
        return f"{{{self.scalar}, ({v})}}"


ONE = Quaternion(Fraction(1))
I = Quaternion.pure((1, 0, 0))
J = Quaternion.pure((0, 1, 0))
K = Quaternion.pure((0, 0, 1))
BASIS = (ONE, I, J, K)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    a, u = p.scalar, p.vec
    b, v = q.scalar, q.vec
    w = cross(u, v)
    return Quaternion(
        a * b - dot(u, v),
        tuple(a * v[i] + b * u[i] + w[i] for i in range(3)),
    )


def module_sq(q: Quaternion) -> Fraction:
    return q.scalar * q.scalar + dot(q.vec, q.vec)


# Hamilton view: coefficient 4-tuples (a, b, c, d) = a + b i + c j + d k.

# products of basis units e_m e_n = sign * e_k, straight from the table
# ii = jj = kk = -1, ij = k, jk = i, ki = j
_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def hamilton_mul(h1: Sequence, h2: Sequence) -> tuple[Fraction, ...]:
    """Product of Hamilton quaternions given as 4-tuples, via the unit table."""
    out = [Fraction(0)] * 4
    for m, x in enumerate(h1):
        if x == 0:
            continue
        for n, y in enumerate(h2):
            if y == 0:
                continue
            sign, k = _TABLE[(m, n)]
            out[k] += sign * frac(x) * frac(y)
    return tuple(out)


def embed(h: Sequence) -> Quaternion:
    """``a + b i + c j + d k`` -> ``{a, (b, c, d)}``."""
    a, b, c, d = (frac(x) for x in h)
    return Quaternion(a, (b, c, d))


def unembed(q: Quaternion) -> tuple[Fraction, ...]:
    return (q.scalar, *q.vec)
