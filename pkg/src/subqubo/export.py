"""Text export of a QUBO as a D-Wave ``sample_qubo`` script."""

from __future__ import annotations

import math

from .problem_model import QuboMatrix


def _fmt(v: float) -> str:
    v = float(v)
    if math.isfinite(v) and v.is_integer():
        return str(int(v))
    return repr(v)


def _label(i: int) -> str:
    return f"q{i + 1}"


def export_sampler_script(q: QuboMatrix, num_reads: int = 1000) -> str:
    """Python source that submits ``q`` to a D-Wave QPU.

    Qubits are labelled ``q1..qN``. Every diagonal entry goes into ``linear``;
    only nonzero couplers go into ``quadratic``.
    """
    Q = q.entries
    linear = ", ".join(f"('{_label(i)}','{_label(i)}'): {_fmt(Q[i, i])}" for i in range(q.dim))
    quadratic = ", ".join(
        f"('{_label(i)}','{_label(j)}'): {_fmt(Q[i, j])}"
        for i in range(q.dim)
        for j in range(i + 1, q.dim)
        if Q[i, j] != 0
    )
    lines = [
        "from dwave.system import DWaveSampler, EmbeddingComposite",
        "sampler_auto = EmbeddingComposite(DWaveSampler(solver={'qpu': True}))",
        "",
        f"linear = {{{linear}}}",
        "",
        f"quadratic = {{{quadratic}}}",
        "",
        "Q = dict(linear)",
        "Q.update(quadratic)",
        "",
        f"sampleset = sampler_auto.sample_qubo(Q, num_reads={num_reads})",
        "print(sampleset)",
    ]
    return "\n".join(lines) + "\n"
