"""JSON wire formats shared by the library and the CLI.

Matrix:       {"n": int, "entries": [[re, im], ...]}   (row-major, n^2 pairs)
Polynomial:   {"coeffs": [[re, im], ...]}              (index k = z^k)
Region:       {"angles": [...], "radii": [...], "vertices": [[re, im], ...],
               "norm": "l1|l2|linf", "method": "closed_form|limit_scheme"}
SparseVector: {"pairs": [[index, [re, im]], ...]}

Deserializers raise ValueError with the offending field named, which the
CLI maps to exit code 2.
"""

from __future__ import annotations

import json

import numpy as np

from .combinat import SparseVector, sparse_vector
from .linalg import as_matrix
from .numrange import ConvexRegion


def plain(obj):
    """Recursively convert numpy scalars/arrays into JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        z = complex(obj)
        return [z.real, z.imag]
    return obj


def _check_pair(value, field):
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(x, (int, float)) for x in value)):
        raise ValueError(f"field {field!r}: expected a [re, im] number pair, got {value!r}")
    if not all(np.isfinite(x) for x in value):
        raise ValueError(f"field {field!r}: entries must be finite")
    return complex(value[0], value[1])


def matrix_to_dict(T):
    T = as_matrix(T)
    n = T.shape[0]
    return {"n": n, "entries": [[z.real, z.imag] for z in T.reshape(-1)]}


def matrix_from_dict(d):
    if not isinstance(d, dict):
        raise ValueError("matrix JSON must be an object")
    n = d.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("field 'n': must be a positive integer")
    if n > 256:
        raise ValueError("field 'n': dimension cap is 256")
    entries = d.get("entries")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise ValueError(f"field 'entries': expected {n * n} [re, im] pairs")
    vals = [_check_pair(e, "entries") for e in entries]
    return as_matrix(np.array(vals, dtype=np.complex128).reshape(n, n))


def poly_to_dict(coeffs):
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    return {"coeffs": [[z.real, z.imag] for z in c]}


def poly_from_dict(d):
    if not isinstance(d, dict):
        raise ValueError("polynomial JSON must be an object")
    coeffs = d.get("coeffs")
    if not isinstance(coeffs, list) or not coeffs:
        raise ValueError("field 'coeffs': expected a nonempty list of [re, im] pairs")
    return np.array([_check_pair(c, "coeffs") for c in coeffs], dtype=np.complex128)


def region_to_dict(region: ConvexRegion):
    return {
        "angles": [float(a) for a in region.angles],
        "radii": [float(r) for r in region.radii],
        "vertices": [[z.real, z.imag] for z in region.vertices],
        "norm": region.support.norm_kind,
        "method": region.support.method,
    }


def sparse_vector_to_dict(x: SparseVector):
    return {"pairs": [[i, [v.real, v.imag]] for i, v in x.pairs]}


def sparse_vector_from_dict(d):
    if not isinstance(d, dict):
        raise ValueError("vector JSON must be an object")
    pairs = d.get("pairs")
    if not isinstance(pairs, list):
        raise ValueError("field 'pairs': expected a list of [index, [re, im]] items")
    out = []
    for item in pairs:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError("field 'pairs': each item must be [index, [re, im]]")
        i, val = item
        if not isinstance(i, int) or isinstance(i, bool) or i < 1:
            raise ValueError("field 'pairs': indices must be positive integers")
        out.append((i, _check_pair(val, "pairs")))
    return sparse_vector(out)


def estimate_to_dict(est):
    return {
        "lower_bound": float(est.lower_bound),
        "witness": poly_to_dict(est.witness),
        "numerator": float(est.numerator),
        "denominator": {
            "value": float(est.denominator.value),
            "kind": est.denominator.kind,
            "samples": int(est.denominator.samples),
            "inflation": float(est.denominator.inflation),
        },
        "family_log": [[name, float(v)] for name, v in est.family_log],
        "seed": int(est.seed),
        "region": region_to_dict(est.region),
    }


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {path}: {exc}") from exc


def load_matrix(path):
    return matrix_from_dict(load_json(path))


def load_poly(path):
    return poly_from_dict(load_json(path))


def load_sparse_vector(path):
    return sparse_vector_from_dict(load_json(path))


def dumps(obj):
    """Canonical JSON text: insertion order, compact separators."""
    return json.dumps(plain(obj), separators=(",", ":"))
