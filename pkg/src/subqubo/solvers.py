"""QUBO energy evaluation, exhaustive ground-state search and simulated annealing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from numba import njit, prange

from .errors import CapacityError, ConfigurationError, DimensionError
from .problem_model import Assignment, QuboMatrix, as_assignment

BRUTE_FORCE_CAP = 24
_CHUNK_BITS = 16


def energy(q: QuboMatrix, bits) -> float:
    """``sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j``."""
    x = as_assignment(bits, q.dim).astype(np.float64)
    return float(x @ q.linear + x @ q.quadratic @ x)


def energies(q: QuboMatrix, states: np.ndarray) -> np.ndarray:
    """Row-wise energies of a (k, dim) 0/1 array."""
    X = np.asarray(states, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != q.dim:
        raise DimensionError(f"states must have shape (k, {q.dim}), got {X.shape}")
    return X @ q.linear + np.einsum("ki,ki->k", X @ q.quadratic, X)


@dataclass(frozen=True)
class SampleRecord:
    assignment: Assignment
    energy: float
    occurrences: int


@dataclass(frozen=True)
class SampleSet:
    """Distinct sampled assignments, lowest energy first."""

    records: Tuple[SampleRecord, ...]
    total_reads: int

    def __post_init__(self) -> None:
        if self.total_reads < 1:
            raise ConfigurationError("total_reads must be positive")
        if sum(r.occurrences for r in self.records) > self.total_reads:
            raise ConfigurationError("occurrences exceed total_reads")
        es = [r.energy for r in self.records]
        if es != sorted(es):
            raise ConfigurationError("records must be sorted by energy")

    @property
    def first(self) -> SampleRecord:
        return self.records[0]

    @property
    def lowest_energy(self) -> float:
        return self.records[0].energy

    def ground_records(self) -> List[SampleRecord]:
        low = self.lowest_energy
        return [r for r in self.records if r.energy == low]

    @classmethod
    def from_states(cls, q: QuboMatrix, states: np.ndarray) -> SampleSet:
        """Aggregate raw per-read states into counted, energy-sorted records."""
        uniq, counts = np.unique(np.asarray(states, dtype=np.uint8), axis=0, return_counts=True)
        es = energies(q, uniq)
        # np.unique already sorted rows lexicographically; stable sort keeps that as tie-break
        order = np.argsort(es, kind="stable")
        records = tuple(
            SampleRecord(tuple(int(b) for b in uniq[k]), float(es[k]), int(counts[k])) for k in order
        )
        return cls(records, int(states.shape[0]))


def brute_force_solve(q: QuboMatrix, cap: int = BRUTE_FORCE_CAP) -> tuple[float, List[Assignment]]:
    """Exact minimum over all ``2**dim`` assignments and every assignment attaining it."""
    dim = q.dim
    if dim > cap:
        raise CapacityError(f"brute force refuses dim {dim} > cap {cap}")
    shifts = np.arange(dim, dtype=np.int64)
    chunk = 1 << min(dim, _CHUNK_BITS)
    best = np.inf
    winners: list[np.ndarray] = []
    for start in range(0, 1 << dim, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        X = ((idx[:, None] >> shifts) & 1).astype(np.uint8)
        es = energies(q, X)
        low = es.min()
        if low < best:
            best = low
            winners = [X[es == low]]
        elif low == best:
            winners.append(X[es == low])
    rows = np.concatenate(winners)
    minimizers = sorted(tuple(int(b) for b in row) for row in rows)
    return float(best), minimizers


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric inverse-temperature ramp shared by every read."""

    num_reads: int = 1000
    sweeps_per_read: int = 200
    beta_initial: float = 0.1
    beta_final: float = 10.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_reads < 1:
            raise ConfigurationError("num_reads must be positive")
        if self.sweeps_per_read < 1:
            raise ConfigurationError("sweeps_per_read must be positive")
        if not 0 < self.beta_initial <= self.beta_final:
            raise ConfigurationError("need 0 < beta_initial <= beta_final")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")

    def betas(self) -> np.ndarray:
        return np.geomspace(self.beta_initial, self.beta_final, self.sweeps_per_read)


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _uniform(state):
    # splitmix64 step; state is a 1-element uint64 array
    state[0] += _GOLDEN
    return float(_mix(state[0]) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _anneal_one(linear, coupling, betas, seed, read, out):
    dim = linear.shape[0]
    state = np.empty(1, dtype=np.uint64)
    # counter-based stream: depends only on (seed, read)
    state[0] = _mix(seed ^ _mix(np.uint64(read) * _GOLDEN + _GOLDEN))
    x = np.empty(dim, dtype=np.uint8)
    for i in range(dim):
        x[i] = 1 if _uniform(state) < 0.5 else 0
    local = np.zeros(dim)
    e = 0.0
    for i in range(dim):
        if x[i]:
            e += linear[i]
            for j in range(dim):
                local[j] += coupling[i, j]
    for i in range(dim):
        if x[i]:
            e += 0.5 * local[i]
    best = e
    out[:] = x
    for t in range(betas.shape[0]):
        beta = betas[t]
        for i in range(dim):
            sign = 1.0 - 2.0 * x[i]
            delta = sign * (linear[i] + local[i])
            if delta <= 0.0 or _uniform(state) < np.exp(-beta * delta):
                x[i] = 1 - x[i]
                e += delta
                for j in range(dim):
                    local[j] += sign * coupling[i, j]
        if e < best:
            best = e
            out[:] = x


@njit(parallel=True, cache=True)
def _anneal_reads(linear, coupling, betas, seed, num_reads):
    out = np.empty((num_reads, linear.shape[0]), dtype=np.uint8)
    for r in prange(num_reads):
        _anneal_one(linear, coupling, betas, seed, r, out[r])
    return out


def simulated_anneal(q: QuboMatrix, schedule: AnnealSchedule | None = None) -> SampleSet:
    """Sample low-energy states with single-bit-flip Metropolis annealing.

    Each read starts from a random state and keeps the lowest-energy state
    seen at the end of any sweep. Read ``r`` draws from a stream determined
    by ``(schedule.seed, r)`` alone, so the result does not depend on how
    many threads run the reads. Stored energies are recomputed exactly from
    the returned assignments.
    """
    schedule = schedule or AnnealSchedule()
    upper = q.quadratic
    coupling = np.ascontiguousarray(upper + upper.T)
    linear = np.ascontiguousarray(q.linear)
    states = _anneal_reads(
        linear, coupling, schedule.betas(), np.uint64(schedule.seed), schedule.num_reads
    )
    return SampleSet.from_states(q, states)
