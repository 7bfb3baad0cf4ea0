"""Decomposition of harmonic quaternion polynomials into sums of axial fields.

Covers the dimension count of spans of axial subspaces, the one-dimensional
relation among ``n + 1`` of them, the curl-free "star" field built from that
relation, and the exact splitting of arbitrary harmonic fields.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import linalg
from .harmonic import axial_lift, basis_axial_scalar, lifted_axial_basis
from .poly import (
    Axis,
    Polynomial3,
    QField,
    as_axis,
    euler_potential,
    grad,
    homogeneous_components,
    is_axial,
    is_harmonic_field,
    laplacian,
    rot,
)

DEFAULT_SEED = 20180101


class InvalidFamilyError(ValueError):
    pass


class DegenerateFamilyError(ValueError):
    pass


class NotHarmonicError(ValueError):
    def __init__(self, msg, defect=None):
        super().__init__(msg)
        self.defect = defect


class DecompositionError(RuntimeError):
    def __init__(self, msg, residual: QField):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True)
class AxisFamily:
    axes: tuple[Axis, ...]

    def __post_init__(self):
        axes = tuple(as_axis(w) for w in self.axes)
        for i, a in enumerate(axes):
            for b in axes[:i]:
                if a.parallel(b):
                    raise InvalidFamilyError(f"axes {b} and {a} are collinear")
        object.__setattr__(self, "axes", axes)

    def __len__(self) -> int:
        return len(self.axes)

    def __iter__(self) -> Iterator[Axis]:
        return iter(self.axes)

    def __getitem__(self, i):
        return self.axes[i]

    def extended(self, extra: Iterable[Axis]) -> AxisFamily:
        return AxisFamily(self.axes + tuple(extra))


def as_family(fam) -> AxisFamily:
    return fam if isinstance(fam, AxisFamily) else AxisFamily(tuple(fam))


def axis_stream(seed: int = DEFAULT_SEED, bound: int = 4) -> Iterator[Axis]:
    """Endless deterministic stream of pairwise non-collinear integer axes.

    Candidates are drawn from the integer box ``[-b, b]^3`` with ``b``
    growing whenever the box is close to exhausted.
    """
    rng = random.Random(seed)
    seen: set = set()
    b = bound
    misses = 0
    while True:
        v = tuple(rng.randint(-b, b) for _ in range(3))
        if v == (0, 0, 0):
            continue
        a = Axis(v)
        if a.key in seen:
            misses += 1
            if misses > 50:
                b += 1
                misses = 0
            continue
        misses = 0
        seen.add(a.key)
        yield a


def random_family(r: int, rng: random.Random, bound: int = 5) -> AxisFamily:
    axes: list[Axis] = []
    while len(axes) < r:
        v = tuple(rng.randint(-bound, bound) for _ in range(3))
        if v == (0, 0, 0):
            continue
        a = Axis(v)
        if any(a.parallel(b) for b in axes):
            continue
        axes.append(a)
    return AxisFamily(tuple(axes))


def default_family(r: int, seed: int = DEFAULT_SEED) -> AxisFamily:
    it = axis_stream(seed)
    return AxisFamily(tuple(next(it) for _ in range(r)))


def extend_family(fam: AxisFamily, r: int, seed: int = DEFAULT_SEED) -> AxisFamily:
    """Grow ``fam`` to ``r`` axes with fresh stream axes not collinear to it."""
    axes = list(fam.axes)
    it = axis_stream(seed)
    while len(axes) < r:
        a = next(it)
        if not any(a.parallel(b) for b in axes):
            axes.append(a)
    return AxisFamily(tuple(axes))


# --- span dimensions and the kernel relation ---------------------------------


def predicted_span_dimension(n: int, r: int) -> int:
    return 2 * r if r <= n else 2 * n + 1


def span_dimension(n: int, fam) -> int:
    fam = as_family(fam)
    if n < 1:
        raise ValueError("n must be >= 1")
    vecs = [e.to_vector(n) for w in fam for e in basis_axial_scalar(n, w)]
    return linalg.rank(vecs)


def _axial_columns(n: int, fam: AxisFamily):
    bases = [basis_axial_scalar(n, w).elements for w in fam]
    cols = [e.to_vector(n) for b in bases for e in b]
    return bases, cols


def kernel_relation(n: int, fam) -> list[Polynomial3]:
    """Nonzero ``phi_k``, axial along ``fam[k]``, with ``sum(phi_k) == 0``.

    Scaled so that the leading graded-lex coefficient of ``phi_1`` is 1.
    """
    fam = as_family(fam)
    if len(fam) != n + 1:
        raise InvalidFamilyError(f"need exactly {n + 1} axes, got {len(fam)}")
    bases, cols = _axial_columns(n, fam)
    ker = linalg.nullspace(linalg.transpose(cols), len(cols))
    if len(ker) != 1:
        raise DegenerateFamilyError(f"kernel dimension {len(ker)} != 1")
    c = ker[0]
    phis = []
    k = 0
    for b in bases:
        phi = Polynomial3()
        for e in b:
            phi = phi + e * c[k]
            k += 1
        phis.append(phi)
    if any(p.is_zero() for p in phis):
        raise DegenerateFamilyError("kernel relation has a vanishing summand")
    lead = phis[0].leading_coefficient()
    phis = [p / lead for p in phis]
    assert sum(phis, Polynomial3()).is_zero()
    return phis


def star_parts(n: int, fam) -> list[tuple[Axis, QField]]:
    fam = as_family(fam)
    return [(w, axial_lift(phi, w)) for w, phi in zip(fam, kernel_relation(n, fam))]


def star_field(n: int, fam) -> QField:
    """The zero-scalar harmonic field ``{0, u*}`` summed from the axial lifts
    of a kernel relation."""
    parts = star_parts(n, fam)
    s = sum((p for _, p in parts), QField())
    if not s.alpha.is_zero():
        raise AssertionError("star field has a nonzero scalar part")
    if s.u.is_zero():
        raise DegenerateFamilyError("star field vanishes")
    if not rot(s.u).is_zero() or not is_harmonic_field(s):
        raise AssertionError("star field is not harmonic")
    return s


def star_potential(s: QField, n: int) -> Polynomial3:
    """Harmonic ``beta*`` of degree n + 1 with ``grad beta* = u*``."""
    if not s.alpha.is_zero():
        raise ValueError("expected a zero-scalar field")
    beta = euler_potential(s.u, n)
    if grad(beta) != s.u or not laplacian(beta).is_zero():
        raise AssertionError("star potential postcondition failed")
    return beta


# --- decompositions -------------------------------------------------------


@dataclass
class Decomposition:
    target: QField
    parts: list[tuple[Axis, QField]] = field(default_factory=list)
    residual: QField = field(default_factory=QField)
    axes_tried: int = 0

    def total(self) -> QField:
        return sum((p for _, p in self.parts), QField())

    def is_complete(self) -> bool:
        return self.residual.is_zero()

    def verify(self) -> bool:
        """Exact: every part is axial harmonic and parts + residual = target."""
        if self.total() + self.residual != self.target:
            return False
        return all(part_is_axial_harmonic(p, w) for w, p in self.parts)


def part_is_axial_harmonic(p: QField, w) -> bool:
    """Constant fields count as axial for any axis."""
    return is_harmonic_field(p) and (p.is_constant() or is_axial(p, w))


def decompose_scalar(alpha: Polynomial3, fam) -> list[tuple[Axis, Polynomial3]]:
    """Split a degree-n harmonic polynomial into axial summands along ``fam``.

    Among all representations, the one whose coefficient vector in the
    axial bases has least Euclidean norm is returned.
    """
    fam = as_family(fam)
    n = max(alpha.degree(), 0)
    if not alpha.is_homogeneous() or not laplacian(alpha).is_zero():
        raise NotHarmonicError(f"{alpha} is not homogeneous harmonic")
    if alpha.is_zero():
        return []
    if n == 0:
        return [(fam[0], alpha)]
    if len(fam) <= n:
        raise InvalidFamilyError(
            f"{len(fam)} axes span a proper subspace of the degree-{n} harmonics; need {n + 1}"
        )
    bases, cols = _axial_columns(n, fam)
    c = linalg.min_norm_solve(linalg.transpose(cols), alpha.to_vector(n))
    parts = []
    k = 0
    for w, b in zip(fam, bases):
        phi = Polynomial3()
        for e in b:
            phi = phi + e * c[k]
            k += 1
        if not phi.is_zero():
            parts.append((w, phi))
    assert sum((p for _, p in parts), Polynomial3()) == alpha
    return parts


def _merge(parts: Sequence[tuple[Axis, QField]]) -> list[tuple[Axis, QField]]:
    merged: dict = {}
    order = []
    for w, p in parts:
        k = w.key
        if k in merged:
            merged[k] = (merged[k][0], merged[k][1] + p)
        else:
            merged[k] = (w, p)
            order.append(k)
    return [merged[k] for k in order if not merged[k][1].is_zero()]


def _check_harmonic(p: QField) -> None:
    if not is_harmonic_field(p):
        from .poly import harmonicity_defect

        raise NotHarmonicError("field is not harmonic", harmonicity_defect(p))


def _constant_axis(p: QField, fam: AxisFamily | None) -> Axis:
    if not p.u.is_zero():
        return Axis(tuple(c((0, 0, 0)) for c in p.u))
    return fam[0] if fam else Axis((0, 0, 1))


COORDINATE_AXES = (Axis((1, 0, 0)), Axis((0, 1, 0)), Axis((0, 0, 1)))


def _single_axis(p: QField, fam: AxisFamily | None) -> Axis | None:
    """An axis among the family (or the coordinate axes) about which p is
    already axial, so it can stand as a one-part decomposition."""
    for w in (fam.axes if fam is not None else COORDINATE_AXES):
        if is_axial(p, w):
            return w
    return None


def decompose_quat(p: QField, fam=None, cap: int | None = None,
                   seed: int = DEFAULT_SEED) -> Decomposition:
    """Exact decomposition of a homogeneous harmonic field into axial fields.

    The scalar part is split first and lifted; the zero-scalar remainder is
    then solved for over axial fields, adding axes one at a time until the
    system is consistent or ``cap`` axes (default ``4n + 4``) are in use.
    """
    _check_harmonic(p)
    if not p.is_homogeneous():
        raise ValueError("field is not homogeneous")
    fam = as_family(fam) if fam is not None else None
    if p.is_zero():
        return Decomposition(p)
    n = p.degree()
    if n == 0:
        return Decomposition(p, [(_constant_axis(p, fam), p)])
    w = _single_axis(p, fam)
    if w is not None:
        return Decomposition(p, [(w, p)], QField(), 1)
    cap = 4 * n + 4 if cap is None else cap
    if fam is None:
        fam = default_family(n + 1, seed)
    elif len(fam) < n + 1:
        fam = extend_family(fam, n + 1, seed)

    lifted = [(w, axial_lift(phi, w)) for w, phi in decompose_scalar(p.alpha, fam)]
    p0 = p - sum((f for _, f in lifted), QField())
    extra: list[tuple[Axis, QField]] = []
    tried = len(fam)
    if not p0.is_zero():
        family = fam
        while True:
            gens = [(w, g) for w in family for g in lifted_axial_basis(n, w)]
            cols = [g.to_vector(n) for _, g in gens]
            try:
                c = linalg.min_norm_solve(linalg.transpose(cols), p0.to_vector(n))
            except linalg.InconsistentSystemError:
                if len(family) >= cap:
                    raise DecompositionError(
                        f"no axial decomposition found with {len(family)} axes", p0
                    )
                family = extend_family(family, len(family) + 1, seed)
                continue
            extra = [(w, g * ci) for (w, g), ci in zip(gens, c) if ci != 0]
            tried = len(family)
            break
    d = Decomposition(p, _merge(lifted + extra), QField(), tried)
    d.residual = p - d.total()
    if not d.is_complete() or not d.verify():
        raise DecompositionError("decomposition failed verification", d.residual)
    return d


def decompose_full(p: QField, fam=None, seed: int = DEFAULT_SEED) -> Decomposition:
    """Decompose a harmonic field of mixed degree, merging parts per axis."""
    _check_harmonic(p)
    fam = as_family(fam) if fam is not None else None
    if p.degree() > 0:
        w = _single_axis(p, fam)
        if w is not None:
            return Decomposition(p, [(w, p)], QField(), 1)
    parts: list[tuple[Axis, QField]] = []
    tried = 0
    for _, comp in homogeneous_components(p):
        d = decompose_quat(comp, fam, seed=seed)
        parts.extend(d.parts)
        tried = max(tried, d.axes_tried)
    out = Decomposition(p, _merge(parts), QField(), tried)
    out.residual = p - out.total()
    return out


def axes_needed_for_span(n: int, seed: int = DEFAULT_SEED, cap: int | None = None) -> int:
    """Smallest r such that the first r stream axes give axial fields spanning
    all degree-n harmonic quaternion fields (empirical count)."""
    from .harmonic import basis_quat_harmonic

    target = basis_quat_harmonic(n).size
    cap = 4 * n + 4 if cap is None else cap
    vecs: list = []
    it = axis_stream(seed)
    for r in range(1, cap + 1):
        w = next(it)
        vecs.extend(g.to_vector(n) for g in lifted_axial_basis(n, w))
        if linalg.rank(vecs) == target:
            return r
    raise DecompositionError(f"axial fields of {cap} axes do not span", QField())
