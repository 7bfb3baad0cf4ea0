"""Bases of harmonic scalar and quaternion polynomial spaces, exact.

Every space here is the kernel of a linear constraint map on homogeneous
coefficient vectors, so bases come straight out of :func:`linalg.nullspace`
with monomials in graded-lex order.

Axes are never normalized. For ``w`` with ``|w|^2 = N`` and ``omega = w/|w|``
the harmonic axial field ``{phi, psi omega}`` is stored as
``{phi, (psi_t / N) w}`` where ``grad psi_t = w x grad phi``; both describe the
same field since ``psi = psi_t / |w|``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Sequence

from . import linalg
from .poly import (
    MAX_DEGREE,
    Axis,
    DegreeError,
    Polynomial3,
    QField,
    VectorPoly,
    as_axis,
    axial_profile,
    dir_deriv,
    div,
    euler_potential,
    grad,
    is_axial,
    is_harmonic_field,
    laplacian,
    monomials,
    rot,
)

SCALAR_HARMONIC = "scalar-harmonic"
SCALAR_AXIAL = "scalar-axial"
QUAT_HARMONIC = "quat-harmonic"
QUAT_AXIAL = "quat-axial"
QUAT_ZERO_SCALAR = "quat-zero-scalar"

CACHE_ENV = "HARMQUAT_CACHE_DIR"


class NotAxialHarmonicError(ValueError):
    pass


def _check_degree(n: int) -> None:
    if n < 0:
        raise DegreeError("degree must be nonnegative")
    if n > MAX_DEGREE:
        raise DegreeError(f"degree {n} exceeds the cap {MAX_DEGREE}")


@dataclass(frozen=True)
class SpaceBasis:
    degree: int
    elements: tuple
    kind: str
    axis: Axis | None = None
    degenerate: bool = False
    notes: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def size(self) -> int:
        return len(self.elements)

    def vectors(self) -> list[list[Fraction]]:
        return [e.to_vector(self.degree) for e in self.elements]

    def is_independent(self) -> bool:
        return linalg.rank(self.vectors()) == len(self.elements) if self.elements else True

    def contains(self, x) -> bool:
        """Exact span membership."""
        if x.is_zero():
            return True
        try:
            v = x.to_vector(self.degree)
        except DegreeError:
            return False
        vecs = self.vectors()
        return linalg.rank(vecs + [v]) == linalg.rank(vecs)

    def element_ok(self, e) -> bool:
        if self.kind == SCALAR_HARMONIC:
            return e.is_homogeneous(self.degree) and laplacian(e).is_zero()
        if self.kind == SCALAR_AXIAL:
            return (e.is_homogeneous(self.degree) and laplacian(e).is_zero()
                    and dir_deriv(e, self.axis).is_zero())
        ok = e.is_homogeneous(self.degree) and is_harmonic_field(e)
        if self.kind == QUAT_AXIAL and self.degree > 0:
            ok = ok and is_axial(e, self.axis)
        if self.kind == QUAT_ZERO_SCALAR:
            ok = ok and e.alpha.is_zero()
        return ok

    def verify(self) -> bool:
        """All elements satisfy the defining constraints and are independent."""
        return all(self.element_ok(e) for e in self.elements) and self.is_independent()


def operator_matrix(op: Callable[[Polynomial3], Polynomial3], n_in: int, n_out: int):
    """Matrix of a linear map from degree-n_in to degree-n_out homogeneous polys."""
    cols = [op(Polynomial3({e: 1})) for e in monomials(n_in)]
    if n_out < 0:
        return []
    vecs = [c.to_vector(n_out) for c in cols]
    return linalg.transpose(vecs) if vecs else []


def field_constraint_rows(n: int, constraints: Sequence[Callable[[QField], Sequence[Polynomial3]]]):
    """Stack the matrices of field-valued linear constraints on Pi_n^4.

    Each constraint maps a field to a tuple of homogeneous polynomials; the
    output degrees are inferred per slot from the first nonzero image.
    """
    m = len(monomials(n))
    columns: list[list[Polynomial3]] = []
    for k in range(4 * m):
        unit = [Fraction(0)] * (4 * m)
        unit[k] = Fraction(1)
        f = QField.from_vector(unit, n)
        outs: list[Polynomial3] = []
        for c in constraints:
            outs.extend(c(f))
        columns.append(outs)
    if not columns or not columns[0]:
        return []
    rows = []
    nslots = len(columns[0])
    for s in range(nslots):
        deg = next((col[s].degree() for col in columns if not col[s].is_zero()), None)
        if deg is None:
            continue
        block = [col[s].to_vector(deg) for col in columns]
        rows.extend(linalg.transpose(block))
    return rows


def _laplace_all(f: QField):
    return tuple(laplacian(c) for c in f.components())


def _riesz(f: QField):
    g = grad(f.alpha) - rot(f.u)
    return (*g, div(f.u))


def _axial_constraints(w: tuple):
    def along(f: QField):
        return tuple(dir_deriv(c, w) for c in f.components())

    def parallel(f: QField):
        return tuple(f.u.cross_const_left(w))

    return [along, parallel]


def _zero_scalar(f: QField):
    return (f.alpha,)


# --- scalar spaces ----------------------------------------------------------


@lru_cache(maxsize=None)
def basis_harmonic_scalar(n: int) -> SpaceBasis:
    _check_degree(n)
    rows = operator_matrix(laplacian, n, n - 2)
    ker = linalg.nullspace(rows, len(monomials(n)))
    return SpaceBasis(n, tuple(Polynomial3.from_vector(v, n) for v in ker), SCALAR_HARMONIC)


@lru_cache(maxsize=None)
def _axial_scalar_kernel(n: int, key: tuple[int, int, int]) -> tuple[Polynomial3, ...]:
    rows = operator_matrix(laplacian, n, n - 2)
    rows = rows + operator_matrix(lambda p: dir_deriv(p, key), n, n - 1)
    ker = linalg.nullspace(rows, len(monomials(n)))
    return tuple(Polynomial3.from_vector(v, n) for v in ker)


def basis_axial_scalar(n: int, w) -> SpaceBasis:
    """Basis of the w-axial harmonic polynomials of degree n (two of them for n >= 1).

    For n = 0 the space is the constants and the result is flagged degenerate.
    """
    _check_degree(n)
    w = as_axis(w)
    elems = _axial_scalar_kernel(n, w.key)
    return SpaceBasis(n, elems, SCALAR_AXIAL, axis=w, degenerate=(n == 0))


# --- conjugate functions and axial fields -----------------------------------


def conjugate(phi: Polynomial3, w) -> tuple[Polynomial3, Fraction]:
    """Return ``(psi_t, w . w)`` with ``grad psi_t = w x grad phi`` exactly."""
    w = as_axis(w)
    if not laplacian(phi).is_zero():
        raise NotAxialHarmonicError(f"{phi} is not harmonic")
    if not dir_deriv(phi, w).is_zero():
        raise NotAxialHarmonicError(f"{phi} is not axial along {w}")
    psi = Polynomial3()
    for m in phi.degrees():
        if m == 0:
            continue
        g = grad(phi.homogeneous_part(m)).cross_const_left(w.v)
        psi = psi + euler_potential(g, m - 1)
    return psi, w.norm_sq


def axial_lift(phi: Polynomial3, w) -> QField:
    """The harmonic w-axial field with scalar part ``phi``."""
    w = as_axis(w)
    psi, nsq = conjugate(phi, w)
    p = QField(phi, VectorPoly.scaled_axis(psi / nsq, w.v))
    assert is_harmonic_field(p) and is_axial(p, w)
    return p


@lru_cache(maxsize=None)
def _lifted_kernel(n: int, key: tuple[int, int, int]) -> tuple[QField, ...]:
    return tuple(axial_lift(e, key) for e in _axial_scalar_kernel(n, key))


def lifted_axial_basis(n: int, w) -> tuple[QField, ...]:
    """Axial lifts of :func:`basis_axial_scalar`; the lift is unchanged when
    the axis is rescaled or flipped, so results are cached per direction."""
    _check_degree(n)
    return _lifted_kernel(n, as_axis(w).key)


def coaxial_mul(p: QField, q: QField, w) -> QField:
    """Product of two w-axial harmonic fields; again w-axial harmonic."""
    w = as_axis(w)
    for f in (p, q):
        if not (is_axial(f, w) and is_harmonic_field(f)):
            raise NotAxialHarmonicError(f"{f} is not a harmonic field axial along {w}")
    s, t = axial_profile(p, w), axial_profile(q, w)
    nsq = w.norm_sq
    return QField(p.alpha * q.alpha - s * t * nsq,
                  VectorPoly.scaled_axis(p.alpha * t + s * q.alpha, w.v))


# --- quaternion spaces -------------------------------------------------------


def _disk_cache_path(name: str) -> Path | None:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    return Path(d) / f"{name}.json"


def _store(path: Path | None, n: int, elems: Sequence[QField]) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    data = [[str(c) for c in e.to_vector(n)] for e in elems]
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)


def _load(path: Path | None, n: int) -> tuple[QField, ...] | None:
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        return tuple(QField.from_vector([Fraction(c) for c in v], n) for v in data)
    except (ValueError, OSError):
        return None


@lru_cache(maxsize=None)
def basis_quat_harmonic(n: int) -> SpaceBasis:
    """Basis of the homogeneous harmonic quaternion fields of degree n."""
    _check_degree(n)
    path = _disk_cache_path(f"quat_harmonic_{n}")
    elems = _load(path, n)
    if elems is None:
        rows = field_constraint_rows(n, [_laplace_all, _riesz])
        ker = linalg.nullspace(rows, 4 * len(monomials(n)))
        elems = tuple(QField.from_vector(v, n) for v in ker)
        _store(path, n, elems)
    return SpaceBasis(n, elems, QUAT_HARMONIC)


@lru_cache(maxsize=None)
def basis_quat_zero_scalar(n: int) -> SpaceBasis:
    _check_degree(n)
    rows = field_constraint_rows(n, [_laplace_all, _riesz, _zero_scalar])
    ker = linalg.nullspace(rows, 4 * len(monomials(n)))
    return SpaceBasis(n, tuple(QField.from_vector(v, n) for v in ker), QUAT_ZERO_SCALAR)


@lru_cache(maxsize=None)
def _quat_axial_kernel(n: int, key: tuple[int, int, int]) -> tuple[QField, ...]:
    rows = field_constraint_rows(n, [_laplace_all, _riesz, *_axial_constraints(key)])
    ker = linalg.nullspace(rows, 4 * len(monomials(n)))
    return tuple(QField.from_vector(v, n) for v in ker)


def basis_quat_axial(n: int, w) -> SpaceBasis:
    """Basis of harmonic fields ``{phi, psi w}`` constant along w, degree n.

    For n = 0 all four constant fields are returned (constants count as
    axial for every axis) and the basis is flagged degenerate.
    """
    _check_degree(n)
    w = as_axis(w)
    if n == 0:
        return SpaceBasis(0, basis_quat_harmonic(0).elements, QUAT_AXIAL, axis=w, degenerate=True)
    return SpaceBasis(n, _quat_axial_kernel(n, w.key), QUAT_AXIAL, axis=w)


def clear_caches() -> None:
    for f in (basis_harmonic_scalar, _axial_scalar_kernel, _lifted_kernel, basis_quat_harmonic,
              basis_quat_zero_scalar, _quat_axial_kernel):
        f.cache_clear()
