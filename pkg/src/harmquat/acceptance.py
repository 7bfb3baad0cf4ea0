"""Reproducible acceptance checks, shared by the test suite and ``harmquat accept``.

Each check returns a :class:`CheckResult`; all comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import axial, characters, density, harmonic, linalg
from .poly import Polynomial3, QField, VectorPoly, div, grad, laplacian, rot
from .quaternion import BASIS, dot

DEFAULT_SEED = axial.DEFAULT_SEED


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def dimension_table(seed: int = DEFAULT_SEED, n_max: int = 6, families: int = 10) -> CheckResult:
    rng = random.Random(seed)
    bad = []
    cells = 0
    for n in range(1, n_max + 1):
        for r in range(1, n + 3):
            pred = axial.predicted_span_dimension(n, r)
            for _ in range(families):
                fam = axial.random_family(r, rng)
                obs = axial.span_dimension(n, fam)
                cells += 1
                if obs != pred:
                    bad.append((n, r, [str(a) for a in fam], pred, obs))
    return CheckResult("1 span dimension table", not bad,
                       f"{cells} families, {len(bad)} mismatches", bad)


def axial_dimension(seed: int = DEFAULT_SEED, n_max: int = 8, axes: int = 20) -> CheckResult:
    rng = random.Random(seed + 2)
    bad = []
    for n in range(1, n_max + 1):
        for _ in range(axes):
            w = axial.random_family(1, rng)[0]
            b = harmonic.basis_axial_scalar(n, w)
            if b.size != 2 or not b.verify():
                bad.append((n, str(w), b.size))
    return CheckResult("2 axial subspace dimension is 2", not bad,
                       f"{n_max * axes} (n, axis) pairs, {len(bad)} failures", bad)


def coordinate_identity(seed: int = DEFAULT_SEED, frames: int = 10) -> CheckResult:
    rng = random.Random(seed + 3)
    fs = [characters.Frame.standard()] + [characters.random_frame(rng) for _ in range(frames)]
    bad = [f for f in fs if not characters.verify_coordinate_identity(f)]
    return CheckResult("3 identity pi1 = o3 pi2 - o2 pi3", not bad,
                       f"{len(fs)} frames, {len(bad)} failures", bad)


def decomposition_roundtrip(seed: int = DEFAULT_SEED, n_max: int = 4) -> CheckResult:
    bad = []
    count = 0
    for n in range(1, n_max + 1):
        for e in harmonic.basis_quat_harmonic(n):
            d = axial.decompose_quat(e, seed=seed)
            count += 1
            if not (d.is_complete() and d.verify()):
                bad.append((n, str(e)))
    return CheckResult("4 axial decomposition round-trip", not bad,
                       f"{count} basis fields, {len(bad)} failures", bad)


def star_construction(seed: int = DEFAULT_SEED, n_max: int = 5, families: int = 4) -> CheckResult:
    rng = random.Random(seed + 5)
    bad = []
    for n in range(1, n_max + 1):
        for _ in range(families):
            fam = axial.random_family(n + 1, rng)
            _, cols = axial._axial_columns(n, fam)
            kdim = len(linalg.nullspace(linalg.transpose(cols), len(cols)))
            s = axial.star_field(n, fam)
            beta = axial.star_potential(s, n)
            ok = (kdim == 1 and not s.u.is_zero() and rot(s.u).is_zero()
                  and laplacian(beta).is_zero() and grad(beta) == s.u
                  and beta.is_homogeneous(n + 1))
            if not ok:
                bad.append((n, [str(a) for a in fam]))
    return CheckResult("5 star field and potential", not bad,
                       f"{n_max * families} families, {len(bad)} failures", bad)


def random_harmonic_vector(rng: random.Random, max_degree: int = 6) -> VectorPoly:
    """Componentwise harmonic polynomial vector field with random rational
    coefficients over the harmonic bases of degrees 0..max_degree."""
    comps = []
    top = rng.randint(1, max_degree)
    for _ in range(3):
        c = Polynomial3()
        for n in range(top + 1):
            for e in harmonic.basis_harmonic_scalar(n):
                if rng.random() < 0.6:
                    c = c + e * Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        comps.append(c)
    return VectorPoly(*comps)


def density_certificates(seed: int = DEFAULT_SEED, count: int = 50) -> CheckResult:
    rng = random.Random(seed + 6)
    bad = []
    for i in range(count):
        v = random_harmonic_vector(rng)
        rep = density.divergence_correction(v)
        ok = rep.ok()
        for c in (Fraction(1, 2), Fraction(2)):
            rc = density.divergence_correction(v * c)
            ok = ok and rc.eta == rep.eta * c and rc.u_tilde == rep.u_tilde * c
            ok = ok and rc.q == rep.q * c and rc.r == rep.r * c
        if not ok:
            bad.append(i)
    return CheckResult("6 density pipeline certificates and linearity", not bad,
                       f"{count} fields, {len(bad)} failures", bad)


def random_ball_point(rng: random.Random, den: int = 60) -> tuple[Fraction, ...]:
    while True:
        x = tuple(Fraction(rng.randint(-den, den), den) for _ in range(3))
        if dot(x, x) <= 1:
            return x


def character_reconstruction(seed: int = DEFAULT_SEED, points: int = 100) -> CheckResult:
    rng = random.Random(seed + 7)
    frames = [characters.Frame.standard()] + [characters.random_frame(rng) for _ in range(4)]
    bad = []
    for i in range(points):
        f = frames[i % len(frames)]
        x0 = random_ball_point(rng)
        vals = characters.dirac(x0).values(f)
        if characters.reconstruct_point(vals, f) != x0:
            bad.append(("roundtrip", x0))
        for slot in range(6):
            try:
                characters.reconstruct_point(vals.perturbed(f, slot, Fraction(1, 7)), f)
                bad.append(("perturbation accepted", x0, slot))
            except characters.InconsistentValuesError:
                pass
    outside = [(2, 0, 0), (Fraction(3, 4), Fraction(3, 4), Fraction(1, 2))]
    for x in outside:
        try:
            characters.dirac(x)
            bad.append(("outside accepted", x))
        except characters.OutsideBallError as e:
            ratios = [row["ratio"] for row in e.growth]
            if not all(b > a for a, b in zip(ratios, ratios[1:])):
                bad.append(("no growth", x))
    return CheckResult("7 character reconstruction", not bad,
                       f"{points} points x 6 perturbations, {len(outside)} outside points", bad)


def module_property(n_max: int = 4) -> CheckResult:
    bad = []
    count = 0
    for n in range(n_max + 1):
        for p in harmonic.basis_quat_harmonic(n):
            for h in BASIS:
                count += 1
                if not characters.h_module_check(h, p):
                    bad.append((n, str(h), str(p)))
    _, _, pq, cert = characters.non_closure_witness()
    witness_ok = (cert["p_harmonic"] and cert["q_harmonic"] and not cert["pq_harmonic"]
                  and div(pq.u) == Polynomial3({(0, 0, 1): 2}))
    if not witness_ok:
        bad.append(("witness", cert))
    return CheckResult("8 H-module property and non-closure witness", not bad,
                       f"{count} products, witness div u = {cert['div_u']}", bad)


def dirac_agreement(seed: int = DEFAULT_SEED, points: int = 20, n_max: int = 3) -> CheckResult:
    rng = random.Random(seed + 9)
    f = characters.Frame.standard()
    fields = [e for n in range(n_max + 1) for e in harmonic.basis_quat_harmonic(n)]
    rng_fields = random.Random(seed + 10)
    mixed = []
    for _ in range(3):
        p = QField()
        for e in fields:
            if rng_fields.random() < 0.3:
                p = p + e * Fraction(rng_fields.randint(-5, 5), rng_fields.randint(1, 3))
        mixed.append(p)
    decomposed = [(p, axial.decompose_full(p, seed=seed)) for p in fields + mixed]
    bad = []
    for _ in range(points):
        x0 = random_ball_point(rng)
        mu = characters.dirac(x0)
        rec = characters.ReconstructedCharacter(mu.values(f), f)
        for p, d in decomposed:
            if not d.is_complete() or rec(d) != mu(p):
                bad.append((x0, str(p)))
    return CheckResult("9 reconstructed character agrees with evaluation on decomposed fields", not bad,
                       f"{points} points x {len(fields) + len(mixed)} fields", bad)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "dims": dimension_table,
    "axial-dim": axial_dimension,
    "identity": coordinate_identity,
    "decompose": decomposition_roundtrip,
    "star": star_construction,
    "density": density_certificates,
    "characters": character_reconstruction,
    "module": module_property,
    "agreement": dirac_agreement,
}


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS.items():
        out.append(fn() if name == "module" else fn(seed=seed))
    return out
