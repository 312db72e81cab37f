"""JSON/CSV encodings and problem-file loading.

Encodings
---------
complex number   ``[re, im]``
vector           ``[[re, im], ...]`` or ``{"dim": d, "vector": [...]}``
matrix           ``[[[re, im], ...], ...]`` (rows) or ``{"dim": d, "matrix": [...]}``;
                 the names ``pauli_x``, ``pauli_y``, ``pauli_z``, ``identity(d)``
                 are accepted wherever a matrix is expected.

Problem file
------------
::

    {
      "A": <matrix>,
      "B": <matrix>,
      "state": <vector> | {"of": "A" | "B", "index": k},
      "tolerances": {"eps_eigen": 1e-8, "commutator_tol": 2e-8}
    }

``state`` is optional for commands that do not need one. An eigenstate
selector picks the ``index``-th eigenvector (ascending eigenvalues) of the
named operator.

Emitted JSON is canonical: keys keep insertion order and floats are written
with 17 significant digits, so parse-and-re-emit reproduces the same bytes.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import hermitian_eigensystem
from .state import Observable, StateVector, builtin_observable

__all__ = [
    "ProblemError",
    "ProblemSpec",
    "BUILTIN_PROBLEMS",
    "CSV_VERSION",
    "complex_to_json",
    "vector_to_json",
    "matrix_to_json",
    "parse_vector",
    "parse_matrix",
    "parse_problem",
    "load_problem",
    "dumps_canonical",
    "format_float",
    "write_csv",
]

CSV_VERSION = "uncertainty-bounds-csv v1"


class ProblemError(ValueError):
    """Invalid problem definition; the message names the offending location."""


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def dumps_canonical(obj, indent: int = 2) -> str:
    """JSON text with fixed float formatting and insertion key order."""
    out = io.StringIO()
    _emit(obj, out, indent, 0)
    out.write("\n")
    return out.getvalue()


def _emit(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.write(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.write("[]")
            return
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out.write("[")
            for i, v in enumerate(obj):
                _emit(v, out, indent, level + 1)
                if i < len(obj) - 1:
                    out.write(", ")
            out.write("]")
            return
        out.write("[\n")
        for i, v in enumerate(obj):
            out.write(pad)
            _emit(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "]")
    elif isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        out.write(json.dumps(obj if not isinstance(obj, np.bool_) else bool(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(format_float(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(v, dtype=complex)]


def matrix_to_json(m) -> list[list[list[float]]]:
    return [vector_to_json(row) for row in np.asarray(m, dtype=complex)]


def _parse_complex(obj, where: str) -> complex:
    if isinstance(obj, bool):
        raise ProblemError(f"{where}: expected a number or [re, im], got {obj!r}")
    if isinstance(obj, (int, float)):
        z = complex(obj)
    elif isinstance(obj, list) and len(obj) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj
    ):
        z = complex(obj[0], obj[1])
    else:
        raise ProblemError(f"{where}: expected [re, im], got {obj!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ProblemError(f"{where}: non-finite entry")
    return z


def parse_vector(obj, where: str = "vector") -> np.ndarray:
    if isinstance(obj, dict):
        if "vector" not in obj:
            raise ProblemError(f"{where}: missing key 'vector'")
        vec = parse_vector(obj["vector"], f"{where}.vector")
        if "dim" in obj and obj["dim"] != vec.shape[0]:
            raise ProblemError(f"{where}.dim: declared {obj['dim']} but vector has {vec.shape[0]} entries")
        return vec
    if not isinstance(obj, list) or not obj:
        raise ProblemError(f"{where}: expected a non-empty list of [re, im]")
    return np.array([_parse_complex(x, f"{where}[{i}]") for i, x in enumerate(obj)], dtype=complex)


def parse_matrix(obj, where: str = "matrix") -> np.ndarray:
    if isinstance(obj, str):
        try:
            return np.array(builtin_observable(obj).mat)
        except KeyError as exc:
            raise ProblemError(f"{where}: {exc.args[0]}") from None
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise ProblemError(f"{where}: missing key 'matrix'")
        m = parse_matrix(obj["matrix"], f"{where}.matrix")
        if "dim" in obj and obj["dim"] != m.shape[0]:
            raise ProblemError(f"{where}.dim: declared {obj['dim']} but matrix is {m.shape[0]}x{m.shape[0]}")
        return m
    if not isinstance(obj, list) or not obj:
        raise ProblemError(f"{where}: expected a list of rows")
    rows = [parse_vector(r, f"{where}[{i}]") for i, r in enumerate(obj)]
    d = len(rows)
    for i, r in enumerate(rows):
        if r.shape[0] != d:
            raise ProblemError(f"{where}[{i}]: row has {r.shape[0]} entries, expected {d}")
    return np.array(rows)


def _observable(obj, where: str) -> Observable:
    m = parse_matrix(obj, where)
    asym = np.abs(m - m.conj().T)
    if asym.max() > 1e-10 * (1.0 + np.abs(m).max()):
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        base = f"{where}.matrix" if isinstance(obj, dict) else where
        raise ProblemError(
            f"{base}[{i}][{j}]: matrix is not Hermitian, entry {m[i, j]} "
            f"is not the conjugate of [{j}][{i}] = {m[j, i]}"
        )
    return Observable(m)


@dataclass
class ProblemSpec:
    A: Observable
    B: Observable
    state: StateVector | None = None
    selector: tuple[str, int] | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.A.dim


BUILTIN_PROBLEMS: dict[str, dict] = {
    "pauli-xy-equator": {
        "A": "pauli_x",
        "B": "pauli_y",
        "state": [[1 / math.sqrt(2), 0.0], [0.5, 0.5]],
    },
    "pauli-xz-eigenstate": {
        "A": "pauli_x",
        "B": "pauli_z",
        "state": {"of": "B", "index": 1},
    },
}

_TOLERANCE_KEYS = ("eps_eigen", "commutator_tol")


def parse_problem(obj, name: str = "") -> ProblemSpec:
    if not isinstance(obj, dict):
        raise ProblemError("problem: expected a JSON object")
    for key in ("A", "B"):
        if key not in obj:
            raise ProblemError(f"problem: missing key {key!r}")
    A = _observable(obj["A"], "A")
    B = _observable(obj["B"], "B")
    if A.dim != B.dim:
        raise ProblemError(f"B: dimension {B.dim} does not match A ({A.dim})")

    spec = ProblemSpec(A=A, B=B, name=name)
    raw_state = obj.get("state")
    if isinstance(raw_state, dict) and "of" in raw_state:
        of, index = raw_state.get("of"), raw_state.get("index")
        if of not in ("A", "B"):
            raise ProblemError(f"state.of: expected 'A' or 'B', got {of!r}")
        if not isinstance(index, int) or isinstance(index, bool) or not 0 <= index < A.dim:
            raise ProblemError(f"state.index: expected an integer in [0, {A.dim}), got {index!r}")
        op = A if of == "A" else B
        _, vecs = hermitian_eigensystem(op.mat)
        spec.selector = (of, index)
        spec.state = StateVector.from_unnormalized(vecs[:, index])
    elif raw_state is not None:
        vec = parse_vector(raw_state, "state")
        if vec.shape[0] != A.dim:
            raise ProblemError(f"state: dimension {vec.shape[0]} does not match A ({A.dim})")
        n = np.linalg.norm(vec)
        if abs(n - 1.0) > 1e-8:
            raise ProblemError(f"state: vector norm is {n:.12g}, expected 1")
        spec.state = StateVector.from_unnormalized(vec)

    tols = obj.get("tolerances", {})
    if not isinstance(tols, dict):
        raise ProblemError("tolerances: expected an object")
    for k, v in tols.items():
        if k not in _TOLERANCE_KEYS:
            raise ProblemError(f"tolerances.{k}: unknown tolerance (known: {', '.join(_TOLERANCE_KEYS)})")
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ProblemError(f"tolerances.{k}: expected a positive number, got {v!r}")
        spec.tolerances[k] = float(v)
    return spec


def load_problem(source: str) -> ProblemSpec:
    """Load a built-in problem by name, or parse a JSON problem file."""
    if source in BUILTIN_PROBLEMS:
        return parse_problem(BUILTIN_PROBLEMS[source], name=source)
    path = Path(source)
    if not path.is_file():
        known = ", ".join(sorted(BUILTIN_PROBLEMS))
        raise ProblemError(f"{source}: no such file or built-in problem (built-ins: {known})")
    text = path.read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        return parse_problem(obj, name=path.stem)
    except ProblemError as exc:
        raise ProblemError(f"{source}: {exc}") from None


def write_csv(path, columns: list[str], rows: list[list]) -> None:
    """CSV with a version comment line; floats use :func:`format_float`."""

    def cell(v):
        if isinstance(v, (bool, np.bool_)):
            return "1" if v else "0"
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        if isinstance(v, (float, np.floating)):
            return format_float(v)
        return str(v)

    lines = [f"# {CSV_VERSION}", ",".join(columns)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
