"""Assemble the least-squares QUBO for one subrange.

With ``x = sum_l 2**e_l q_{i,l}`` substituted into ``||A x - c||^2`` and
``q**2 = q`` applied, the objective becomes ``q^T Q q + c^T c`` where

* diagonal ``(i,l)``:        ``2**(2 e_l) G_ii - 2**(e_l + 1) h_i``
* same variable ``l1 < l2``: ``2**(e_l1 + e_l2 + 1) G_ii``
* ``i < j``, any bits:       ``2**(e_l1 + e_l2 + 1) G_ij``

with ``G = A^T A`` and ``h = A^T c``. Moving to another subrange only changes
``c``, hence only the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .problem_model import BinaryEncoding, LinearSystem, QuboMatrix, SubrangeSpec, _frozen


@dataclass(frozen=True, eq=False)
class EffectiveRhs:
    """Right-hand side ``c = b - A T`` of a translated problem and its target energy."""

    c: np.ndarray
    target_energy: float

    def __post_init__(self) -> None:
        c = _frozen(self.c)
        object.__setattr__(self, "c", c)
        if self.target_energy != -float(c @ c):
            raise DomainError(
                f"target energy {self.target_energy} does not equal -c.c = {-float(c @ c)}"
            )

    @classmethod
    def from_c(cls, c) -> EffectiveRhs:
        c = np.asarray(c, dtype=np.float64)
        return cls(c, -float(c @ c))


def target_energy(rhs: EffectiveRhs | np.ndarray) -> float:
    """Ground-state energy a subrange reaches iff it holds an exact solution."""
    if isinstance(rhs, EffectiveRhs):
        return rhs.target_energy
    c = np.asarray(rhs, dtype=np.float64)
    return -float(c @ c)


def effective_rhs(system: LinearSystem, spec: SubrangeSpec) -> EffectiveRhs:
    if spec.n != system.n:
        raise DimensionError(f"translation has length {spec.n}, system has n={system.n}")
    return EffectiveRhs.from_c(system.b - system.A @ spec.T)


def _check_inputs(A, c) -> tuple[np.ndarray, np.ndarray]:
    A = np.asarray(A, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionError(f"A must be a non-empty square matrix, got shape {A.shape}")
    if c.shape != (A.shape[0],):
        raise DimensionError(f"c must have length {A.shape[0]}, got shape {c.shape}")
    return A, c


def _gram(A: np.ndarray) -> np.ndarray:
    # k-outermost accumulation so the float result does not depend on BLAS
    G = np.zeros((A.shape[1], A.shape[1]))
    for row in A:
        G += np.outer(row, row)
    return G


def _rhs_projection(A: np.ndarray, c: np.ndarray) -> np.ndarray:
    h = np.zeros(A.shape[1])
    for row, ck in zip(A, c):
        h += row * ck
    return h


def _linear_terms(G_diag: np.ndarray, h: np.ndarray, encoding: BinaryEncoding) -> np.ndarray:
    e = encoding.exponents
    quad = np.ldexp(1.0, 2 * e)
    lin = np.ldexp(1.0, e + 1)
    return (G_diag[:, None] * quad[None, :] - h[:, None] * lin[None, :]).ravel()


def build_qubo(A, c, encoding: BinaryEncoding) -> QuboMatrix:
    """Upper-triangular QUBO for ``||A x - c||^2`` under ``encoding``.

    The constant ``c^T c`` is dropped, so the minimum over all bit vectors is
    ``-c^T c`` exactly when some representable ``x`` solves ``A x = c``.

    Examples
    --------
    >>> build_qubo([[1.0]], [1.0], BinaryEncoding(0, 0)).entries
    array([[-1.]])
    """
    A, c = _check_inputs(A, c)
    n = A.shape[0]
    bits = encoding.bits_per_var
    e = encoding.exponents
    G = _gram(A)
    h = _rhs_projection(A, c)

    pair_scale = np.ldexp(1.0, e[:, None] + e[None, :] + 1)
    # block (i, j) of the full coupling tensor is pair_scale * G[i, j]
    Q = np.kron(G, pair_scale)
    Q = np.triu(Q, 1)
    # kron fills the diagonal blocks completely; only their strict upper part is a coupling
    Q[np.diag_indices(n * bits)] = _linear_terms(np.diag(G), h, encoding)
    return QuboMatrix(Q, encoding)


def update_linear_for_subrange(q: QuboMatrix, A, c_old, c_new, encoding: BinaryEncoding) -> QuboMatrix:
    """Move a QUBO built for ``c_old`` to ``c_new`` by rewriting only its diagonal.

    Diagonal entry ``(i, l)`` gains ``2**(e_l + 1) * (A^T (c_old - c_new))_i``.
    For integer data the result equals ``build_qubo(A, c_new, encoding)``
    entry for entry; off-diagonal entries are always copied unchanged.
    """
    A, c_old = _check_inputs(A, c_old)
    _, c_new = _check_inputs(A, c_new)
    n = A.shape[0]
    if q.dim != n * encoding.bits_per_var:
        raise DimensionError(
            f"QUBO has dim {q.dim}, expected {n * encoding.bits_per_var} for n={n}"
        )
    shift = _rhs_projection(A, c_old - c_new)
    delta = (shift[:, None] * np.ldexp(1.0, encoding.exponents + 1)[None, :]).ravel()
    Q = np.array(q.entries)
    Q[np.diag_indices(q.dim)] += delta
    return QuboMatrix(Q, encoding)


def build_for_subrange(system: LinearSystem, spec: SubrangeSpec, encoding: BinaryEncoding):
    """Convenience: ``(QuboMatrix, EffectiveRhs)`` for one translated subrange."""
    encoding.require_subrange_mode()
    rhs = effective_rhs(system, spec)
    return build_qubo(system.A, rhs.c, encoding), rhs
