"""Model files: JSON in, JSON out.

One document describes exactly one model:

* ``{"type": "pair", "a": [...], "b": [...]}`` or
  ``{"type": "pair", "A": [[...]], "B": [[...]]}``
* ``{"type": "atoms", "atoms": [{"kind": "shift", "s": 1.0, "t": 1.0, "mult": 1}]}``
* ``{"type": "embedding", "levels": L, "width": w, "v_scale": [re, im],
  "E": [[...]], "Q": [[...]]}``

Scalars may be numbers or decimal strings; complex entries are ``[re, im]``
pairs.  Writers emit decimal strings with 17 significant digits so a file
round-trips the in-memory values exactly.  An optional top-level ``eps``
records the tolerance the model was prepared with.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ModelFormatError
from .model import AtomKind, AtomModel, PairModel, QAtom, ShiftEmbedding

_MODEL_TYPES = ("pair", "atoms", "embedding")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _real(value, where: str) -> float:
    if isinstance(value, bool):
        raise ModelFormatError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ModelFormatError(f"{where}: cannot parse {value!r} as a number") from None
    raise ModelFormatError(f"{where}: expected a number or decimal string")


def _complex(value, where: str) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ModelFormatError(f"{where}: a complex entry is a [re, im] pair")
        return complex(_real(value[0], where), _real(value[1], where))
    return complex(_real(value, where))


def _matrix(rows, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ModelFormatError(f"{where}: expected a list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ModelFormatError(f"{where}: rows must be nonempty and of equal length")
    return np.array([[_complex(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)]
                     for i, row in enumerate(rows)], dtype=complex)


def _complex_json(z: complex) -> list[str]:
    return [format_float(z.real), format_float(z.imag)]


def _matrix_json(a: np.ndarray) -> list[list[list[str]]]:
    return [[_complex_json(complex(v)) for v in row] for row in np.asarray(a, dtype=complex)]


def model_from_json(doc, where: str = "model"):
    """Parse one model document; returns ``(model, eps_or_None)``."""
    if not isinstance(doc, dict):
        raise ModelFormatError(f"{where}: expected a JSON object")
    kind = doc.get("type")
    if kind not in _MODEL_TYPES:
        raise ModelFormatError(f"{where}: 'type' must be one of {_MODEL_TYPES}, got {kind!r}")
    eps = _real(doc["eps"], f"{where}.eps") if "eps" in doc else None
    if kind == "pair":
        has_diag = "a" in doc or "b" in doc
        has_mat = "A" in doc or "B" in doc
        if has_diag == has_mat:
            raise ModelFormatError(f"{where}: a pair carries either a/b or A/B")
        if has_diag:
            if "a" not in doc or "b" not in doc:
                raise ModelFormatError(f"{where}: diagonal pair needs both 'a' and 'b'")
            a = [_real(v, f"{where}.a[{i}]") for i, v in enumerate(doc["a"])]
            b = [_real(v, f"{where}.b[{i}]") for i, v in enumerate(doc["b"])]
            return PairModel.from_diagonal(a, b), eps
        if "A" not in doc or "B" not in doc:
            raise ModelFormatError(f"{where}: matrix pair needs both 'A' and 'B'")
        return (PairModel.from_matrices(_matrix(doc["A"], f"{where}.A"),
                                        _matrix(doc["B"], f"{where}.B")), eps)
    if kind == "atoms":
        entries = doc.get("atoms")
        if not isinstance(entries, list) or not entries:
            raise ModelFormatError(f"{where}: 'atoms' must be a nonempty list")
        atoms = []
        for i, at in enumerate(entries):
            ctx = f"{where}.atoms[{i}]"
            if not isinstance(at, dict):
                raise ModelFormatError(f"{ctx}: expected an object")
            try:
                k = AtomKind(at.get("kind"))
            except ValueError:
                raise ModelFormatError(f"{ctx}: 'kind' must be 'unitary' or 'shift'") from None
            atoms.append(QAtom(k, _real(at.get("s", None), f"{ctx}.s"),
                               _real(at.get("t", None), f"{ctx}.t"),
                               int(at.get("mult", 1))))
        return AtomModel(tuple(atoms)), eps
    for key in ("levels", "width", "E", "Q"):
        if key not in doc:
            raise ModelFormatError(f"{where}: embedding needs '{key}'")
    v_scale = _complex(doc["v_scale"], f"{where}.v_scale") if "v_scale" in doc else 1.0 + 0.0j
    return (ShiftEmbedding(int(doc["levels"]), int(doc["width"]),
                           _matrix(doc["E"], f"{where}.E"),
                           _matrix(doc["Q"], f"{where}.Q"), v_scale), eps)


def model_to_json(model, eps: float | None = None) -> dict:
    if isinstance(model, PairModel):
        if model.is_diagonal:
            doc = {"type": "pair",
                   "a": [format_float(x) for x in model.a],
                   "b": [format_float(x) for x in model.b]}
        else:
            doc = {"type": "pair", "A": _matrix_json(model.A), "B": _matrix_json(model.B)}
    elif isinstance(model, AtomModel):
        doc = {"type": "atoms",
               "atoms": [{"kind": at.kind.value, "s": format_float(at.s),
                          "t": format_float(at.t), "mult": at.mult}
                         for at in model.atoms]}
    elif isinstance(model, ShiftEmbedding):
        doc = {"type": "embedding", "levels": model.levels, "width": model.width,
               "v_scale": _complex_json(model.v_scale),
               "E": _matrix_json(model.E), "Q": _matrix_json(model.Q)}
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    if eps is not None:
        doc["eps"] = format_float(eps)
    return doc


def load_model(path):
    """Read a model file; returns ``(model, eps_or_None)``."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ModelFormatError(f"{p}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return model_from_json(doc, where=str(p))


def save_model(model, path, eps: float | None = None) -> None:
    Path(path).write_text(json.dumps(model_to_json(model, eps), indent=2) + "\n")
