"""Command-line entry point.

Exit codes: 0 ok, 2 a mathematical check did not hold, 3 invalid input field,
4 file or format error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import acceptance, axial, characters, density, fieldfile
from .fieldfile import FieldFileError, field_to_json, rational_str, vector_to_json
from .poly import QField, harmonicity_defect, is_axial, is_harmonic_field

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INVALID = 3
EXIT_FORMAT = 4


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _emit_doc(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(fieldfile.dumps(doc))
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in doc.items():
        w.writerow([k, v if isinstance(v, str) else json.dumps(v)])


def _jsonable(x):
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _read(path) -> dict:
    try:
        return fieldfile.read_field(path)
    except characters.InvalidFrameError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    except FieldFileError as exc:
        raise CliError(str(exc), EXIT_FORMAT) from exc


def _require_harmonic(p: QField) -> None:
    if not is_harmonic_field(p):
        g, d = harmonicity_defect(p)
        raise CliError(
            f"field is not harmonic\n  grad alpha - rot u = {g}\n  div u = {d}", EXIT_INVALID
        )


def _parse_point(s: str):
    try:
        parts = [Fraction(t.strip()) for t in s.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad point {s!r}", EXIT_FORMAT) from exc
    if len(parts) != 3:
        raise CliError("point needs three comma-separated rationals", EXIT_FORMAT)
    return tuple(parts)


# --- commands ---------------------------------------------------------------


def cmd_dims(args, out) -> int:
    rng = random.Random(args.seed)
    rows = []
    bad = []
    for n in range(1, args.n_max + 1):
        for r in range(1, n + 3):
            pred = axial.predicted_span_dimension(n, r)
            obs_all = []
            for _ in range(args.families):
                fam = axial.random_family(r, rng)
                obs = axial.span_dimension(n, fam)
                obs_all.append(obs)
                if obs != pred:
                    bad.append({"n": n, "r": r, "axes": [str(a) for a in fam], "observed": obs})
            observed = obs_all[0] if len(set(obs_all)) == 1 else "/".join(map(str, sorted(set(obs_all))))
            rows.append({"n": n, "r": r, "predicted": pred, "observed": observed,
                         "match": str(all(o == pred for o in obs_all)).lower()})
    if rows or args.format == "json":
        _emit(rows, args.format, out)
    else:
        out.write("n,r,predicted,observed,match\n")
    if bad:
        for b in bad:
            sys.stderr.write(f"mismatch: {json.dumps(b)}\n")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_axes_needed(args, out) -> int:
    rows = [{"n": n, "axes_needed": axial.axes_needed_for_span(n, seed=args.seed)}
            for n in range(1, args.n_max + 1)]
    if rows:
        _emit(rows, args.format, out)
    else:
        out.write("n,axes_needed\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    doc = _read(args.field)
    p = doc["field"]
    _require_harmonic(p)
    fam = None
    if doc["axes"]:
        try:
            fam = axial.AxisFamily(tuple(doc["axes"]))
        except axial.InvalidFamilyError as exc:
            raise CliError(str(exc), EXIT_INVALID) from exc
    try:
        d = axial.decompose_full(p, fam, seed=args.seed)
    except axial.DecompositionError as exc:
        sys.stderr.write(f"{exc}\nresidual: {exc.residual}\n")
        return EXIT_MISMATCH
    cert = {
        "format_version": fieldfile.FORMAT_VERSION,
        "target": field_to_json(p),
        "parts": [{"axis": vector_to_json(w.v), "field": field_to_json(f)} for w, f in d.parts],
        "residual": field_to_json(d.residual),
        "residual_zero": d.is_complete(),
        "parts_axial_harmonic": d.verify(),
        "axes_used": d.axes_tried,
    }
    _write_or_print(cert, args, out)
    return EXIT_OK if d.is_complete() and d.verify() else EXIT_MISMATCH


def _write_or_print(doc: dict, args, out) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit_doc(doc, args.format, fh)
    else:
        _emit_doc(doc, args.format, out)


def cmd_verify(args, out) -> int:
    doc = _read(args.field)
    p = doc["field"]
    frame = doc["frame"] or characters.Frame.standard()
    candidates = list(frame.vectors) + [a.v for a in (doc["axes"] or [])]
    harmonic = is_harmonic_field(p)
    g, d = harmonicity_defect(p)
    found = []
    for v in candidates:
        if is_axial(p, v) and vector_to_json(v) not in found:
            found.append(vector_to_json(v))
    report = {
        "harmonic": harmonic,
        "grad_alpha_minus_rot_u": str(g),
        "div_u": str(d),
        "degree": p.degree(),
        "axial_axes_found": found,
    }
    _emit_doc(report, args.format, out)
    return EXIT_OK


def cmd_density(args, out) -> int:
    target = _read(args.field)["field"]
    pert = _read(args.perturbation)["field"].u
    _require_harmonic(target)
    try:
        res = density.approximate(target, pert, density.ball_grid(args.points, args.radii))
    except density.PreconditionError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    rep = res.correction
    doc = {
        "format_version": fieldfile.FORMAT_VERSION,
        "input_v": [fieldfile.poly_to_json(c) for c in rep.input_v],
        "q": fieldfile.poly_to_json(rep.q),
        "r": fieldfile.poly_to_json(rep.r),
        "eta": fieldfile.poly_to_json(rep.eta),
        "u_tilde": [fieldfile.poly_to_json(c) for c in rep.u_tilde],
        "certificates": rep.certificates,
        "p_tilde": field_to_json(res.p_tilde),
        "error_estimate": res.error,
    }
    _write_or_print(doc, args, out)
    return EXIT_OK if rep.ok() else EXIT_MISMATCH


def _values_from_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_FORMAT) from exc
    if not isinstance(doc, dict) or doc.get("format_version") != fieldfile.FORMAT_VERSION:
        raise CliError("unsupported values file", EXIT_FORMAT)
    try:
        qs = []
        for v in doc["values"]:
            s = fieldfile.parse_rational(v["scalar"])
            qs.append(characters.Quaternion(s, fieldfile.vector_from_json(v["vec"])))
        frame = (characters.Frame(*(fieldfile.vector_from_json(w) for w in doc["frame"]))
                 if doc.get("frame") else characters.Frame.standard())
    except (KeyError, TypeError, FieldFileError) as exc:
        raise CliError(f"bad values file: {exc}", EXIT_FORMAT) from exc
    except characters.InvalidFrameError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    if len(qs) != 3:
        raise CliError("values file needs three quaternions", EXIT_FORMAT)
    return characters.FunctionalValues(*qs), frame


def cmd_characters(args, out) -> int:
    if args.point:
        x0 = _parse_point(args.point)
        frame = characters.Frame.standard()
        try:
            mu = characters.dirac(x0)
        except characters.OutsideBallError as exc:
            sys.stderr.write(f"rejected: {exc}\n")
            _emit(_jsonable(exc.growth), args.format, out)
            return EXIT_INVALID
        vals = mu.values(frame)
    else:
        vals, frame = _values_from_file(args.values)
        x0 = None
    try:
        x = characters.reconstruct_point(vals, frame)
    except characters.InconsistentValuesError as exc:
        sys.stderr.write(f"rejected: {exc}\n")
        return EXIT_MISMATCH
    report = {
        "values": [{"scalar": rational_str(v.scalar), "vec": vector_to_json(v.vec)}
                   for v in (vals.v1, vals.v2, vals.v3)],
        "reconstructed_point": vector_to_json(x),
        "inside_ball": sum(c * c for c in x) <= 1,
    }
    if x0 is not None:
        report["input_point"] = vector_to_json(x0)
        report["match"] = tuple(x) == tuple(x0)
    _emit_doc(report, args.format, out)
    if x0 is not None and tuple(x) != tuple(x0):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_witness(args, out) -> int:
    p, q, pq, cert = characters.non_closure_witness()
    doc = {
        "format_version": fieldfile.FORMAT_VERSION,
        "p": field_to_json(p),
        "q": field_to_json(q),
        "pq": field_to_json(pq),
        **cert,
    }
    _emit_doc(doc, args.format, out)
    ok = cert["p_harmonic"] and cert["q_harmonic"] and not cert["pq_harmonic"]
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_accept(args, out) -> int:
    only = set(args.only) if args.only else None
    failed = False
    for name, fn in acceptance.CHECKS.items():
        if only and name not in only:
            continue
        r = fn() if name == "module" else fn(seed=args.seed)
        out.write(r.line() + "\n")
        out.flush()
        failed |= not r.passed
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="harmquat", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=axial.DEFAULT_SEED,
                    help=f"seed for all randomized choices (default {axial.DEFAULT_SEED})")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, default):
        p.add_argument("--format", choices=("csv", "json"), default=default)

    p = sub.add_parser("dims", help="span dimension table of axial subspaces")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--families", type=int, default=10)
    fmt(p, "csv")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("axes-needed", help="observed axes needed to span the harmonic fields")
    p.add_argument("--n-max", type=int, default=4)
    fmt(p, "csv")
    p.set_defaults(func=cmd_axes_needed)

    p = sub.add_parser("decompose", help="decompose a harmonic field into axial fields")
    p.add_argument("field")
    p.add_argument("-o", "--output")
    fmt(p, "json")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="harmonicity and axiality report for a field")
    p.add_argument("field")
    fmt(p, "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("density", help="divergence correction and completion")
    p.add_argument("field")
    p.add_argument("perturbation")
    p.add_argument("-o", "--output")
    p.add_argument("--points", type=int, default=2562)
    p.add_argument("--radii", type=int, default=8)
    fmt(p, "json")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("characters", help="reconstruct a point from character values")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", help="x1,x2,x3 as rationals, e.g. 1/2,-1/3,1/4")
    g.add_argument("--values", help="JSON file with the values on pi1, pi2, pi3")
    fmt(p, "json")
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("witness", help="certificate that harmonic fields are not closed under products")
    fmt(p, "json")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("accept", help="run the acceptance checks")
    p.add_argument("--only", nargs="*", choices=list(acceptance.CHECKS))
    p.set_defaults(func=cmd_accept)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
