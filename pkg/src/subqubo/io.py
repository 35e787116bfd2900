"""JSON problem, QUBO and report files."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .errors import ProblemFileError, SubquboError
from .problem_model import BinaryEncoding, LinearSystem, QuboMatrix, SubrangeSpec, decode
from .subrange_search import SweepReport

SCHEMA_VERSION = 1


def _num(v: float):
    v = float(v)
    if math.isfinite(v) and v.is_integer():
        return int(v)
    return v


def _nums(arr) -> list:
    arr = np.asarray(arr)
    if arr.ndim == 1:
        return [_num(v) for v in arr]
    return [_nums(row) for row in arr]


@dataclass(frozen=True)
class ProblemFile:
    """Contents of a problem file.

    At most one of ``s`` (sweep bound) and ``T`` (explicit translation) is set.
    """

    system: LinearSystem
    encoding: BinaryEncoding
    s: Optional[int] = None
    T: Optional[tuple] = None
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if self.s is not None and self.T is not None:
            raise ProblemFileError("subrange: give either 's' or 'T', not both")
        if self.T is not None:
            object.__setattr__(self, "T", tuple(float(t) for t in self.T))
            self.subrange_spec()  # validates

    @property
    def n(self) -> int:
        return self.system.n

    def subrange_spec(self) -> Optional[SubrangeSpec]:
        if self.T is None:
            return None
        if len(self.T) != self.n:
            raise ProblemFileError(f"subrange.T: expected {self.n} values, got {len(self.T)}")
        try:
            return SubrangeSpec.from_translation(self.T, self.encoding)
        except SubquboError as exc:
            raise ProblemFileError(f"subrange.T: {exc}") from exc

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "schema_version": self.schema_version,
            "n": self.n,
            "A": _nums(self.system.A),
            "b": _nums(self.system.b),
            "encoding": {"lo": self.encoding.lo, "hi": self.encoding.hi},
        }
        if self.s is not None:
            d["subrange"] = {"s": self.s}
        elif self.T is not None:
            d["subrange"] = {"T": _nums(self.T)}
        return d

    @classmethod
    def from_dict(cls, d: Any) -> ProblemFile:
        if not isinstance(d, dict):
            raise ProblemFileError("top level: expected a JSON object")
        version = _field(d, "schema_version", int)
        if version != SCHEMA_VERSION:
            raise ProblemFileError(f"schema_version: unsupported value {version}, expected {SCHEMA_VERSION}")
        n = _field(d, "n", int)
        if n < 1:
            raise ProblemFileError("n: must be positive")
        A = _field(d, "A", list)
        if len(A) != n:
            raise ProblemFileError(f"A: expected {n} rows, got {len(A)}")
        for k, row in enumerate(A):
            if not isinstance(row, list) or len(row) != n:
                raise ProblemFileError(f"A[{k}]: expected a row of {n} numbers (A must be square)")
            _check_numbers(row, f"A[{k}]")
        b = _field(d, "b", list)
        if len(b) != n:
            raise ProblemFileError(f"b: expected {n} values, got {len(b)}")
        _check_numbers(b, "b")
        enc = _field(d, "encoding", dict)
        try:
            encoding = BinaryEncoding(_field(enc, "lo", int, "encoding."), _field(enc, "hi", int, "encoding."))
        except SubquboError as exc:
            raise ProblemFileError(f"encoding: {exc}") from exc
        s = T = None
        if d.get("subrange") is not None:
            sub = _field(d, "subrange", dict)
            if "s" in sub:
                s = _field(sub, "s", int, "subrange.")
                if s < 1:
                    raise ProblemFileError("subrange.s: must be positive")
            if "T" in sub:
                T = _field(sub, "T", list, "subrange.")
                _check_numbers(T, "subrange.T")
            if s is None and T is None:
                raise ProblemFileError("subrange: expected key 's' or 'T'")
        try:
            system = LinearSystem(A, b)
        except SubquboError as exc:
            raise ProblemFileError(f"A/b: {exc}") from exc
        return cls(system, encoding, s, T, version)


def _field(d: dict, key: str, kind: type, prefix: str = ""):
    if key not in d:
        raise ProblemFileError(f"{prefix}{key}: missing required field")
    v = d[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise ProblemFileError(f"{prefix}{key}: expected an integer, got {v!r}")
    if kind is not int and not isinstance(v, kind):
        raise ProblemFileError(f"{prefix}{key}: expected {kind.__name__}, got {type(v).__name__}")
    return v


def _check_numbers(values: list, where: str) -> None:
    for k, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ProblemFileError(f"{where}[{k}]: expected a number, got {v!r}")


def _read_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _write_json(path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def load_problem(path) -> tuple[LinearSystem, BinaryEncoding, Optional[SubrangeSpec]]:
    problem = read_problem_file(path)
    return problem.system, problem.encoding, problem.subrange_spec()


def read_problem_file(path) -> ProblemFile:
    return ProblemFile.from_dict(_read_json(path))


def save_problem(path, problem: ProblemFile) -> None:
    _write_json(path, problem.to_dict())


def qubo_to_dict(q: QuboMatrix) -> dict:
    enc = None if q.encoding is None else {"lo": q.encoding.lo, "hi": q.encoding.hi}
    return {"schema_version": SCHEMA_VERSION, "kind": "qubo", "encoding": enc, "Q": _nums(q.entries)}


def qubo_from_dict(d: Any) -> QuboMatrix:
    if not isinstance(d, dict) or d.get("kind") != "qubo":
        raise ProblemFileError("kind: expected 'qubo'")
    rows = _field(d, "Q", list)
    for k, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise ProblemFileError(f"Q[{k}]: expected a row of {len(rows)} numbers")
        _check_numbers(row, f"Q[{k}]")
    enc = d.get("encoding")
    try:
        encoding = None if enc is None else BinaryEncoding(enc["lo"], enc["hi"])
        return QuboMatrix(rows, encoding)
    except (SubquboError, KeyError, TypeError) as exc:
        raise ProblemFileError(f"Q: {exc}") from exc


def save_qubo(path, q: QuboMatrix) -> None:
    _write_json(path, qubo_to_dict(q))


def load_qubo(path) -> QuboMatrix:
    return qubo_from_dict(_read_json(path))


def report_to_dict(report: SweepReport) -> dict:
    width = report.encoding.subrange_width
    entries = []
    for r in report.per_subrange:
        spec = SubrangeSpec(r.T, report.s, width)
        entries.append(
            {
                "index": r.index,
                "T": _nums(r.T),
                "target_energy": r.target_energy,
                "best_energy": r.best_energy,
                "hit": r.hit,
                "x": _nums(decode(r.best_assignment, report.encoding, spec)),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "encoding": {"lo": report.encoding.lo, "hi": report.encoding.hi},
        "s": report.s,
        "solver": report.solver,
        "hits": report.hits,
        "solutions": [{"index": k, "x": _nums(x)} for k, x in report.solutions],
        "approximate": report.approximate,
        "per_subrange": entries,
    }


def save_report(path, report: SweepReport) -> None:
    _write_json(path, report_to_dict(report))
