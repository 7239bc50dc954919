"""JSON equation files.

An equation file is a JSON object::

    {"kind": "hermitian", "A": <matrix>, "B": <matrix>, "C": <matrix>}

with ``kind`` one of ``standard``, ``transpose``, ``conjugate``,
``hermitian`` or ``general`` (the last also needs ``"f"`` and takes lists of
matrices for ``A`` and ``B``).  A matrix is a list of rows and each entry is
a ``[re, im]`` pair; bare numbers are read as real entries.
"""

import json
import math

import numpy as np

from .equations import EquationSpec
from .errors import DimensionError

__all__ = ["ParseError", "parse_matrix", "matrix_to_json", "load_spec", "spec_from_dict", "spec_to_dict", "dumps"]


class ParseError(ValueError):
    pass


def _entry(x, where):
    if isinstance(x, bool):
        raise ParseError(f"{where}: booleans are not matrix entries")
    if isinstance(x, (int, float)):
        return complex(x, 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(float(x[0]), float(x[1]))
    raise ParseError(f"{where}: expected [re, im] pair or number, got {x!r}")


def parse_matrix(obj, where="matrix"):
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{where}[{i}]: expected a non-empty row")
        rows.append([_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError(f"{where}: rows have different lengths")
    out = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(out)):
        raise ParseError(f"{where}: non-finite entry")
    return out


def _is_matrix(obj):
    # matrix: list of rows whose entries are numbers or [re, im] pairs
    try:
        parse_matrix(obj)
        return True
    except ParseError:
        return False


def matrix_to_json(X):
    X = np.asarray(X, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in X]


def spec_from_dict(d):
    if not isinstance(d, dict):
        raise ParseError("top level: expected a JSON object")
    for key in ("kind", "A", "B", "C"):
        if key not in d:
            raise ParseError(f"missing field {key!r}")
    kind = d["kind"]
    if not isinstance(kind, str):
        raise ParseError("kind: expected a string")
    C = parse_matrix(d["C"], "C")

    general = kind in ("general", "generalN")

    def mats(key):
        obj = d[key]
        # bare-number entries make [[[1, 2]]] ambiguous, so the kind decides:
        # general equations always take lists of matrices
        if not general and _is_matrix(obj):
            return [parse_matrix(obj, key)]
        if not isinstance(obj, list) or not obj:
            raise ParseError(f"{key}: expected a matrix or a list of matrices")
        return [parse_matrix(M, f"{key}[{i}]") for i, M in enumerate(obj)]

    A, B = mats("A"), mats("B")
    try:
        if general:
            if "f" not in d:
                raise ParseError("general equations need field 'f'")
            return EquationSpec.general(d["f"], A, B, C)
        if len(A) != 1 or len(B) != 1:
            raise ParseError(f"kind {kind!r} takes a single A and B")
        return EquationSpec(kind, A[0], B[0], C, d.get("f"))
    except DimensionError:
        raise
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def spec_to_dict(spec):
    d = {"kind": spec.kind}
    if spec.kind == "general":
        d["f"] = spec.f
        d["A"] = [matrix_to_json(a) for a in spec.A]
        d["B"] = [matrix_to_json(b) for b in spec.B]
    else:
        d["A"] = matrix_to_json(spec.A[0])
        d["B"] = matrix_to_json(spec.B[0])
    d["C"] = matrix_to_json(spec.C)
    return d


def load_spec(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return spec_from_dict(data)


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return _clean(float(obj))
    return obj


def dumps(obj):
    """JSON text; floats are written in shortest round-trip form, infinities as strings."""
    return json.dumps(_clean(obj), indent=2)
