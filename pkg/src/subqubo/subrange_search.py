"""Sweep the subrange grid and find the subrange whose QUBO reaches ``-c^T c``."""

from __future__ import annotations

import itertools
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import CapacityError, DimensionError
from .problem_model import Assignment, BinaryEncoding, LinearSystem, QuboMatrix, SubrangeSpec, decode
from .qubo_builder import build_qubo, effective_rhs, update_linear_for_subrange
from .solvers import BRUTE_FORCE_CAP, AnnealSchedule, brute_force_solve, simulated_anneal

SOLVERS = ("brute", "sa")
RELATIVE_TOLERANCE = 1e-6


def subrange_count(n: int, s: int) -> int:
    return (2 * s) ** n


def enumerate_subranges(n: int, encoding: BinaryEncoding, s: int) -> Iterator[SubrangeSpec]:
    """All ``(2s)**n`` translations, coefficients in lexicographic order, lowest first."""
    encoding.require_subrange_mode()
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    if subrange_count(n, s) > sys.maxsize:
        raise CapacityError(f"(2s)^n = {2 * s}^{n} subranges exceed the platform limit")
    for coeffs in itertools.product(range(-s, s), repeat=n):
        yield SubrangeSpec.from_coefficients(coeffs, encoding, s)


def verify_solution(system: LinearSystem, x) -> float:
    """Squared residual ``||A x - b||^2``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (system.n,):
        raise DimensionError(f"x must have length {system.n}, got shape {x.shape}")
    r = system.A @ x - system.b
    return float(r @ r)


def is_hit(best: float, target: float, exact: bool) -> bool:
    if exact:
        return best == target
    return abs(best - target) <= RELATIVE_TOLERANCE * max(1.0, abs(target))


@dataclass(frozen=True, eq=False)
class SubrangeResult:
    index: int
    T: np.ndarray
    target_energy: float
    best_energy: float
    best_assignment: Assignment
    minimizers: Tuple[Assignment, ...]
    hit: bool

    @property
    def gap(self) -> float:
        return self.best_energy - self.target_energy


@dataclass
class SweepReport:
    """Per-subrange outcomes of a sweep.

    ``solutions`` holds one decoded vector per minimum-energy assignment of
    every hit subrange. With no hit, ``approximate`` points at the subrange
    whose best energy lies closest to its own target.
    """

    encoding: BinaryEncoding
    s: int
    solver: str
    per_subrange: List[SubrangeResult] = field(default_factory=list)
    solutions: List[Tuple[int, np.ndarray]] = field(default_factory=list)
    approximate: Optional[int] = None

    @property
    def hits(self) -> List[int]:
        return [r.index for r in self.per_subrange if r.hit]

    @property
    def found(self) -> bool:
        return bool(self.solutions)

    @property
    def solution(self) -> Optional[np.ndarray]:
        return self.solutions[0][1] if self.solutions else None


def _solve(q: QuboMatrix, solver: str, schedule: AnnealSchedule | None, cap: int):
    if solver == "brute":
        best, minimizers = brute_force_solve(q, cap)
        return best, tuple(minimizers)
    if solver == "sa":
        samples = simulated_anneal(q, schedule)
        return samples.lowest_energy, tuple(r.assignment for r in samples.ground_records())
    raise ValueError(f"unknown solver {solver!r}, expected one of {SOLVERS}")


def solve_subrange(
    system: LinearSystem,
    spec: SubrangeSpec,
    encoding: BinaryEncoding,
    solver: str = "brute",
    schedule: AnnealSchedule | None = None,
    base: QuboMatrix | None = None,
    index: int = 0,
    cap: int = BRUTE_FORCE_CAP,
) -> SubrangeResult:
    """Solve one subrange. ``base`` must be the QUBO built with ``c = b``."""
    rhs = effective_rhs(system, spec)
    if base is None:
        q = build_qubo(system.A, rhs.c, encoding)
    else:
        q = update_linear_for_subrange(base, system.A, system.b, rhs.c, encoding)
    best, minimizers = _solve(q, solver, schedule, cap)
    hit = is_hit(best, rhs.target_energy, system.is_integral)
    return SubrangeResult(index, spec.T, rhs.target_energy, best, minimizers[0], minimizers, hit)


def sweep(
    system: LinearSystem,
    encoding: BinaryEncoding,
    s: int,
    solver: str = "brute",
    stop_on_hit: bool = False,
    schedule: AnnealSchedule | None = None,
    workers: int = 1,
    cap: int = BRUTE_FORCE_CAP,
) -> SweepReport:
    """Search every subrange of the total range ``[-s*width, s*width - 1]``.

    The QUBO is built once for ``c = b``; each subrange then only rewrites the
    diagonal. A subrange is a hit when its minimum equals its target
    ``-c^T c`` (exactly for integer data, to a relative 1e-6 otherwise).

    With ``workers > 1`` subranges run on a thread pool; results are merged
    by enumeration index, and ``stop_on_hit`` then keeps everything up to the
    first hit in that order.
    """
    encoding.require_subrange_mode()
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}, expected one of {SOLVERS}")
    dim = system.n * encoding.bits_per_var
    if solver == "brute" and dim > cap:
        raise CapacityError(f"brute force refuses dim {dim} > cap {cap}")
    base = build_qubo(system.A, system.b, encoding)
    report = SweepReport(encoding, s, solver)
    specs = enumerate_subranges(system.n, encoding, s)

    def task(item):
        k, spec = item
        return solve_subrange(system, spec, encoding, solver, schedule, base, k, cap)

    if workers <= 1:
        for item in enumerate(specs):
            result = task(item)
            report.per_subrange.append(result)
            if stop_on_hit and result.hit:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, enumerate(specs)))
        if stop_on_hit:
            first = next((k for k, r in enumerate(results) if r.hit), len(results) - 1)
            results = results[: first + 1]
        report.per_subrange.extend(results)

    for r in report.per_subrange:
        if r.hit:
            spec = SubrangeSpec(r.T, s, encoding.subrange_width)
            report.solutions.extend((r.index, decode(bits, encoding, spec)) for bits in r.minimizers)
    if not report.solutions:
        report.approximate = min(report.per_subrange, key=lambda r: (r.gap, r.index)).index
    return report
