"""JSON schemas for states, observables and reports.

States::

    {"n": N, "matrix": [[[re, im], ...], ...]}
    {"n": N, "bloch": [r_1, ...], "basis": "gellmann" | "tensor"}

Observables use the ``matrix`` form.  Every emitted document carries
``"schema": "ebr/1"``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import EBlochError, NotAStateError
from .observables import spin_axis, spin_observable, spin_product
from .state_space import StateKind, check_density, classify, from_bloch, to_bloch
from .su_basis import GeneratorBasis, basis_from_name

SCHEMA = "ebr/1"


class SchemaError(EBlochError):
    pass


@dataclass(frozen=True)
class LoadedState:
    """A validated state carrying both representations."""

    matrix: np.ndarray
    bloch: np.ndarray
    basis: GeneratorBasis
    source: str  # "matrix" or "bloch"

    @property
    def n(self) -> int:
        return self.basis.n


def matrix_to_json(M) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]


def matrix_from_json(data, field: str = "matrix") -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field '{field}' is not a numeric array: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise SchemaError(f"field '{field}' must be an N x N array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _read_json(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top-level JSON value must be an object")
    return doc


def _field_n(doc: dict) -> int:
    if "n" not in doc:
        raise SchemaError("missing field 'n'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SchemaError(f"field 'n' must be an integer >= 2, got {n!r}")
    return n


def state_from_doc(doc: dict, basis_name: Optional[str] = None) -> LoadedState:
    n = _field_n(doc)
    name = doc.get("basis", basis_name or "gellmann")
    if not isinstance(name, str):
        raise SchemaError("field 'basis' must be a string")
    try:
        basis = basis_from_name(name, n)
    except (ValueError, EBlochError) as exc:
        raise SchemaError(f"field 'basis': {exc}") from None
    if "matrix" in doc:
        D = matrix_from_json(doc["matrix"])
        if D.shape != (n, n):
            raise SchemaError(f"field 'matrix' has shape {D.shape}, but 'n' is {n}")
        try:
            D = check_density(D)
        except ValueError as exc:
            raise SchemaError(f"field 'matrix': {exc}") from None
        return LoadedState(D, to_bloch(D, basis), basis, "matrix")
    if "bloch" in doc:
        try:
            r = np.array(doc["bloch"], dtype=float)
        except (TypeError, ValueError):
            raise SchemaError("field 'bloch' must be a list of numbers") from None
        if r.shape != (basis.size,):
            raise SchemaError(f"field 'bloch' must have {basis.size} components for n = {n}, got {r.size}")
        if classify(r, basis) is StateKind.NOT_A_STATE:
            raise NotAStateError("field 'bloch': vector is not a state (operator has a negative eigenvalue)")
        return LoadedState(from_bloch(r, basis), r, basis, "bloch")
    raise SchemaError("state needs a 'matrix' or 'bloch' field")


def load_state(path, basis_name: Optional[str] = None) -> LoadedState:
    return state_from_doc(_read_json(path), basis_name)


def state_to_doc(state: LoadedState, form: str) -> dict:
    if form == "matrix":
        return {"schema": SCHEMA, "n": state.n, "matrix": matrix_to_json(state.matrix)}
    if form == "bloch":
        return {"schema": SCHEMA, "n": state.n, "basis": state.basis.determination, "bloch": state.bloch.tolist()}
    raise ValueError(f"unknown state form {form!r}")


_SPIN_PRODUCT = re.compile(r"^spin-product\s+a=(\S+)\s+b=(\S+)$")


def parse_builtin_observable(spec: str) -> Optional[np.ndarray]:
    """Named observables: ``pauli-x|y|z`` and ``spin-product a=<deg> b=<deg>``."""
    spec = spec.strip()
    paulis = {"pauli-x": (1, 0, 0), "pauli-y": (0, 1, 0), "pauli-z": (0, 0, 1)}
    if spec in paulis:
        return spin_observable(paulis[spec])
    m = _SPIN_PRODUCT.match(spec)
    if m:
        try:
            a, b = float(m.group(1)), float(m.group(2))
        except ValueError:
            raise SchemaError(f"bad angles in observable {spec!r}") from None
        return spin_product(spin_axis(a), spin_axis(b))
    return None


def load_observable(spec: str) -> np.ndarray:
    O = parse_builtin_observable(spec)
    if O is not None:
        return O
    path = Path(spec)
    if not path.exists():
        raise SchemaError(f"observable {spec!r} is neither a built-in name nor an existing file")
    doc = _read_json(path)
    n = _field_n(doc)
    if "matrix" not in doc:
        raise SchemaError("missing field 'matrix'")
    O = matrix_from_json(doc["matrix"])
    if O.shape != (n, n):
        raise SchemaError(f"field 'matrix' has shape {O.shape}, but 'n' is {n}")
    if np.max(np.abs(O - O.conj().T)) > 1e-10:
        raise SchemaError("field 'matrix': observable is not Hermitian")
    return O


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def save_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report))
