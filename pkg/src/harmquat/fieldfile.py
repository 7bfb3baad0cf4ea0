"""JSON field files with exact ``"num/den"`` coefficients.

Layout::

    {"format_version": 1,
     "field": {"alpha": [{"e": [r1, r2, r3], "c": "num/den"}, ...],
               "u": [[...], [...], [...]]},
     "frame": [["1/1", "0/1", "0/1"], ...],      # optional
     "axes": [["0/1", "0/1", "1/1"], ...]}       # optional
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .poly import Axis, Polynomial3, QField, VectorPoly

FORMAT_VERSION = 1


class FieldFileError(ValueError):
    pass


def rational_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FieldFileError(f"rational must be a string 'num/den', got {s!r}")
    try:
        return Fraction(s.strip()) if isinstance(s, str) else Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldFileError(f"bad rational {s!r}") from exc


def poly_to_json(p: Polynomial3) -> list[dict]:
    return [{"e": list(e), "c": rational_str(c)} for e, c in p.items()]


def poly_from_json(terms) -> Polynomial3:
    if not isinstance(terms, list):
        raise FieldFileError("polynomial must be a list of terms")
    out: dict = {}
    for t in terms:
        try:
            e = t["e"]
            c = t["c"]
        except (TypeError, KeyError) as exc:
            raise FieldFileError(f"bad term {t!r}") from exc
        if (not isinstance(e, list) or len(e) != 3
                or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in e)):
            raise FieldFileError(f"bad exponent {e!r}")
        key = tuple(e)
        out[key] = out.get(key, Fraction(0)) + parse_rational(c)
    return Polynomial3(out)


def field_to_json(p: QField) -> dict:
    return {"alpha": poly_to_json(p.alpha), "u": [poly_to_json(c) for c in p.u]}


def field_from_json(d) -> QField:
    try:
        alpha = poly_from_json(d["alpha"])
        u = d["u"]
    except (TypeError, KeyError) as exc:
        raise FieldFileError("field needs 'alpha' and 'u'") from exc
    if not isinstance(u, list) or len(u) != 3:
        raise FieldFileError("'u' must hold three polynomials")
    return QField(alpha, VectorPoly(*(poly_from_json(c) for c in u)))


def vector_to_json(v) -> list[str]:
    return [rational_str(c) for c in v]


def vector_from_json(v) -> tuple[Fraction, Fraction, Fraction]:
    if not isinstance(v, list) or len(v) != 3:
        raise FieldFileError(f"expected a 3-vector, got {v!r}")
    return tuple(parse_rational(c) for c in v)  # type: ignore[return-value]


def dump_document(p: QField, frame=None, axes=None, **extra) -> dict:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "field": field_to_json(p)}
    if frame is not None:
        doc["frame"] = [vector_to_json(w) for w in frame.vectors]
    if axes is not None:
        doc["axes"] = [vector_to_json(a.v) for a in axes]
    doc.update(extra)
    return doc


def load_document(doc) -> dict:
    """Parse a field document into ``{"field", "frame", "axes"}``."""
    if not isinstance(doc, dict):
        raise FieldFileError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FieldFileError(f"unsupported format_version {doc.get('format_version')!r}")
    out: dict[str, Any] = {"field": field_from_json(doc.get("field")), "frame": None, "axes": None}
    if doc.get("frame") is not None:
        from .characters import Frame

        f = doc["frame"]
        if not isinstance(f, list) or len(f) != 3:
            raise FieldFileError("'frame' must hold three vectors")
        out["frame"] = Frame(*(vector_from_json(w) for w in f))
    if doc.get("axes") is not None:
        if not isinstance(doc["axes"], list):
            raise FieldFileError("'axes' must be a list")
        try:
            out["axes"] = [Axis(vector_from_json(a)) for a in doc["axes"]]
        except ValueError as exc:
            raise FieldFileError(str(exc)) from exc
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_field(path, p: QField, **kw) -> None:
    Path(path).write_text(dumps(dump_document(p, **kw)), encoding="utf-8")


def read_field(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FieldFileError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldFileError(f"{path}: invalid JSON: {exc}") from exc
    return load_document(doc)
