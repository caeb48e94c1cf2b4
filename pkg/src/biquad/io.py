"""JSON file formats for biquadratics, sextics and two-phase problems.

All indices are 0-based and all values are rational strings ("p/q", integers
or decimals).  Repeated records are summed.

biquadratic:  {"n": 3, "m": 3, "coefficients": [{"i", "j", "k", "l", "value"}]}
              record (i, j, k, l, v) contributes v * x_i y_j x_k y_l
sextic:       {"coefficients": [{"a", "b", "c", "value"}]}  (or a bare list)
              record contributes v * x^a y^b z^c with a + b + c = 6
two-phase:    {"n", "C1", "C2", "theta1", "theta2",
               "translation": {"matrix": [[...]]} | {"minors": [9 values]}}
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .composites import TwoPhase, minor_translation
from .forms import Biquadratic
from .sextics import TernarySextic


class ParseError(ValueError):
    pass


def rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational value: {value!r}")
    try:
        return Fraction(value) if not isinstance(value, str) else Fraction(value.strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"not a rational value: {value!r}") from exc


def _load(source):
    if isinstance(source, (dict, list)):
        return source
    text = Path(source).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from exc


def _int(doc, key):
    try:
        v = doc[key]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field {key!r}") from exc
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"field {key!r} must be an integer")
    return v


def parse_biquadratic(source) -> Biquadratic:
    doc = _load(source)
    if not isinstance(doc, dict):
        raise ParseError("biquadratic file must be an object")
    n, m = _int(doc, "n"), _int(doc, "m")
    if n < 1 or m < 1:
        raise ParseError("dimensions must be positive")
    records = []
    for rec in doc.get("coefficients", []):
        try:
            records.append((_int(rec, "i"), _int(rec, "j"), _int(rec, "k"), _int(rec, "l"), rational(rec["value"])))
        except KeyError as exc:
            raise ParseError(f"coefficient record missing {exc}") from exc
    try:
        return Biquadratic.from_tensor_records(n, m, records)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def biquadratic_document(F: Biquadratic) -> dict:
    return {
        "n": F.n,
        "m": F.m,
        "coefficients": [{"i": i, "j": j, "k": k, "l": l, "value": str(v)} for i, j, k, l, v in F.to_records()],
    }


def parse_sextic(source) -> TernarySextic:
    doc = _load(source)
    recs = doc.get("coefficients") if isinstance(doc, dict) else doc
    if not isinstance(recs, list):
        raise ParseError("sextic file must hold a list of coefficient records")
    try:
        return TernarySextic.from_records(
            [(_int(r, "a"), _int(r, "b"), _int(r, "c"), rational(r["value"])) for r in recs])
    except KeyError as exc:
        raise ParseError(f"coefficient record missing {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def sextic_document(f) -> dict:
    return {"coefficients": [{"a": a, "b": b, "c": c, "value": str(v)}
                             for (a, b, c), v in sorted(f.terms.items(), reverse=True)]}


def _matrix(doc, key, size):
    try:
        rows = doc[key]
        M = np.array([[rational(v) for v in row] for row in rows], dtype=object)
    except KeyError as exc:
        raise ParseError(f"missing field {key!r}") from exc
    if M.shape != (size, size):
        raise ParseError(f"{key} must be {size}x{size}")
    return M


def parse_two_phase(source):
    """Returns (TwoPhase, translation matrix or None)."""
    doc = _load(source)
    if not isinstance(doc, dict):
        raise ParseError("two-phase file must be an object")
    n = _int(doc, "n")
    N = n * n
    C1, C2 = _matrix(doc, "C1", N), _matrix(doc, "C2", N)
    try:
        t1 = rational(doc["theta1"])
        t2 = rational(doc["theta2"]) if "theta2" in doc else 1 - t1
        tp = TwoPhase(C1, C2, t1, t2)
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    tr = doc.get("translation")
    if tr is None:
        return tp, None
    if "matrix" in tr:
        return tp, _matrix(tr, "matrix", N)
    if "minors" in tr:
        try:
            return tp, minor_translation(n, [rational(v) for v in tr["minors"]])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError("translation must give 'matrix' or 'minors'")


def two_phase_document(tp: TwoPhase, T=None) -> dict:
    doc = {
        "n": tp.n,
        "C1": [[str(v) for v in row] for row in tp.C1.tolist()],
        "C2": [[str(v) for v in row] for row in tp.C2.tolist()],
        "theta1": str(tp.theta1),
        "theta2": str(tp.theta2),
    }
    if T is not None:
        doc["translation"] = {"matrix": [[str(v) for v in row] for row in np.asarray(T).tolist()]}
    return doc


def write_json(doc, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
