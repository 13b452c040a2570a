"""JSON encodings of relations, banded models and complex numbers.

Relation file::

    {"dim_x": n, "dim_y": m, "kind": "operator" | "pencil" | "graph",
     "data": ...}

``operator`` data is an ``m x n`` matrix, ``pencil`` data is ``[A, B]`` and
``graph`` data is a list of generators of length ``n + m``; every scalar is
``[re, im]``.

Model file::

    {"space": "laurent" | "toeplitz",
     "symbol": {"k": [re, im], ...} | {"num": {...}, "den": {...}},
     "perturbation": [{"u": sparse, "v": sparse}, ...],
     "mv_part": [sparse, ...],
     "domain_constraints": [sparse, ...]}

with ``sparse = [[index, re, im], ...]``.  ``domain_constraints`` is optional.
"""

from __future__ import annotations

import json

import numpy as np

from relspec import relation as rel
from relspec.banded.model import BandedModel
from relspec.banded.symbol import LaurentSymbol


def encode_complex_array(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [encode_complex_array(x) for x in a]


def decode_complex_array(data):
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1:] != (2,):
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def relation_to_dict(T: rel.Relation) -> dict:
    """Graph-generator encoding of the orthonormal graph frame."""
    return {
        "dim_x": T.dim_x,
        "dim_y": T.dim_y,
        "kind": "graph",
        "data": [encode_complex_array(col) for col in T.graph.frame.T],
    }


def matrix_to_dict(A) -> dict:
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    m, n = A.shape
    return {"dim_x": n, "dim_y": m, "kind": "operator", "data": encode_complex_array(A)}


def relation_from_dict(d: dict, tol=None) -> rel.Relation:
    try:
        n, m, kind, data = int(d["dim_x"]), int(d["dim_y"]), d["kind"], d["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"relation JSON missing field: {exc}") from None
    if kind == "operator":
        A = decode_complex_array(data)
        if A.ndim != 2:
            raise ValueError("operator data must be a matrix")
        return rel.build("operator_matrix", A, n, m, tol)
    if kind == "pencil":
        if len(data) != 2:
            raise ValueError("pencil data must be [A, B]")
        A, B = (decode_complex_array(x) for x in data)
        return rel.build("pencil", (A, B), n, m, tol)
    if kind == "graph":
        gens = [decode_complex_array(g) for g in data]
        for g in gens:
            if g.shape != (n + m,):
                raise ValueError(f"graph generators must have length {n + m}")
        return rel.build("graph_generators", gens, n, m, tol)
    raise ValueError(f"unknown relation kind {kind!r}")


def _enc_sparse(vec):
    return [[int(k), float(complex(v).real), float(complex(v).imag)] for k, v in vec]


def _dec_sparse(data):
    out = []
    for entry in data:
        if len(entry) != 3:
            raise ValueError("sparse vector entries must be [index, re, im]")
        k, re, im = entry
        out.append((int(k), complex(re, im)))
    return tuple(out)


def _enc_coeffs(pairs):
    return {str(k): [float(complex(a).real), float(complex(a).imag)] for k, a in pairs}


def _dec_coeffs(d):
    return {int(k): complex(v[0], v[1]) for k, v in d.items()}


def model_to_dict(T: BandedModel) -> dict:
    if T.symbol.is_rational:
        symbol = {"num": _enc_coeffs(T.symbol.num), "den": _enc_coeffs(T.symbol.den)}
    else:
        symbol = _enc_coeffs(T.symbol.num)
    out = {
        "space": T.space,
        "symbol": symbol,
        "perturbation": [{"u": _enc_sparse(u), "v": _enc_sparse(v)}
                         for u, v in T.perturbation],
        "mv_part": [_enc_sparse(m) for m in T.mv_part],
    }
    if T.domain_constraints:
        out["domain_constraints"] = [_enc_sparse(c) for c in T.domain_constraints]
    return out


def model_from_dict(d: dict) -> BandedModel:
    try:
        space, sym = d["space"], d["symbol"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"model JSON missing field: {exc}") from None
    if "num" in sym or "den" in sym:
        symbol = LaurentSymbol.rational(_dec_coeffs(sym["num"]), _dec_coeffs(sym["den"]))
    else:
        symbol = LaurentSymbol.from_coeffs(_dec_coeffs(sym))
    pert = [(_dec_sparse(p["u"]), _dec_sparse(p["v"])) for p in d.get("perturbation", [])]
    mv = [_dec_sparse(m) for m in d.get("mv_part", [])]
    cons = [_dec_sparse(c) for c in d.get("domain_constraints", [])]
    return BandedModel(space, symbol, tuple(pert), tuple(mv), tuple(cons))


def load_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: malformed JSON ({exc})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
