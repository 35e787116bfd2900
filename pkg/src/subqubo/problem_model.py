"""Domain types shared by the builder, the solvers and the subrange search.

All types are immutable after construction: arrays are copied to float64 and
flagged read-only. Coefficients and energies are float64 throughout; results
are exact for integer inputs as long as every intermediate product stays
below 2**53.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError

Assignment = Tuple[int, ...]


def _frozen(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _is_integral(arr: np.ndarray) -> bool:
    return bool(np.all(arr == np.round(arr)))


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Square system ``A x = b`` whose least-squares residual is minimised.

    Parameters
    ----------
    A : array_like
        Real matrix of shape (n, n).
    b : array_like
        Right-hand side of length n.
    """

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        A = _frozen(self.A)
        b = _frozen(self.b)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise DimensionError(f"A must be a non-empty square matrix, got shape {A.shape}")
        if b.ndim != 1 or b.shape[0] != A.shape[0]:
            raise DimensionError(f"b must have length {A.shape[0]}, got shape {b.shape}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise DomainError("A and b must contain only finite values")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def is_integral(self) -> bool:
        return _is_integral(self.A) and _is_integral(self.b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSystem):
            return NotImplemented
        return np.array_equal(self.A, other.A) and np.array_equal(self.b, other.b)


@dataclass(frozen=True)
class BinaryEncoding:
    """Radix-2 expansion ``x = sum_l 2**(lo + l) q_l`` for ``l = 0..hi-lo``.

    ``lo < 0`` adds fractional bits. Subrange translation only works with
    ``lo == 0``, where each variable holds an integer residue in
    ``[0, 2**(hi+1))``.
    """

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if int(self.lo) != self.lo or int(self.hi) != self.hi:
            raise DomainError("bit exponents must be integers")
        if self.lo > self.hi:
            raise DomainError(f"lo ({self.lo}) must not exceed hi ({self.hi})")

    @classmethod
    def integer(cls, bits_per_var: int) -> BinaryEncoding:
        """Nonnegative integer encoding with the given number of bits."""
        if bits_per_var < 1:
            raise DomainError("bits_per_var must be at least 1")
        return cls(0, bits_per_var - 1)

    @property
    def bits_per_var(self) -> int:
        return self.hi - self.lo + 1

    @property
    def exponents(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    @property
    def weights(self) -> np.ndarray:
        return np.ldexp(1.0, self.exponents)

    @property
    def subrange_width(self) -> int:
        return 2 ** (self.hi + 1)

    @property
    def supports_subranges(self) -> bool:
        return self.lo == 0

    def require_subrange_mode(self) -> None:
        if not self.supports_subranges:
            raise DomainError(
                f"subrange translation needs an integer encoding (lo == 0), got lo={self.lo}"
            )


@dataclass(frozen=True, eq=False)
class SubrangeSpec:
    """Translation vector placing every variable in one subrange.

    Each ``T[i]`` is ``coefficient[i] * width`` with
    ``-s <= coefficient[i] <= s - 1``, so the subranges tile the total range
    ``[-s * width, s * width - 1]``.
    """

    T: np.ndarray
    s: int
    width: int

    def __post_init__(self) -> None:
        T = _frozen(self.T)
        if T.ndim != 1 or T.size == 0:
            raise DimensionError(f"T must be a non-empty vector, got shape {T.shape}")
        if self.s < 1:
            raise DomainError(f"subrange bound s must be positive, got {self.s}")
        if self.width < 1:
            raise DomainError(f"width must be positive, got {self.width}")
        coeffs = T / self.width
        if not _is_integral(coeffs):
            raise DomainError(f"every T_i must be a multiple of the width {self.width}")
        if np.any(coeffs < -self.s) or np.any(coeffs > self.s - 1):
            raise DomainError(
                f"translation coefficients must lie in [{-self.s}, {self.s - 1}], got {coeffs.tolist()}"
            )
        object.__setattr__(self, "T", T)

    @classmethod
    def from_coefficients(
        cls, coefficients: Sequence[int], encoding: BinaryEncoding, s: int
    ) -> SubrangeSpec:
        encoding.require_subrange_mode()
        width = encoding.subrange_width
        return cls(np.asarray(coefficients, dtype=np.float64) * width, s, width)

    @classmethod
    def from_translation(cls, T: Sequence[float], encoding: BinaryEncoding) -> SubrangeSpec:
        """Wrap an explicit T, using the smallest bound s that contains it."""
        encoding.require_subrange_mode()
        width = encoding.subrange_width
        coeffs = np.asarray(T, dtype=np.float64) / width
        if coeffs.size and _is_integral(coeffs):
            s = int(max(1, -coeffs.min(), coeffs.max() + 1))
        else:
            s = 1  # rejected by validation below
        return cls(T, s, width)

    @classmethod
    def zero(cls, n: int, encoding: BinaryEncoding, s: int = 1) -> SubrangeSpec:
        return cls.from_coefficients([0] * n, encoding, s)

    @property
    def n(self) -> int:
        return self.T.shape[0]

    @property
    def coefficients(self) -> np.ndarray:
        return (self.T / self.width).astype(np.int64)

    @property
    def total_range(self) -> tuple[int, int]:
        return -self.s * self.width, self.s * self.width - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubrangeSpec):
            return NotImplemented
        return (
            np.array_equal(self.T, other.T) and self.s == other.s and self.width == other.width
        )


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    """Upper-triangular QUBO coefficients.

    The energy of a bit vector ``q`` is ``q^T Q q``: diagonal entries are the
    linear terms and entries above the diagonal the couplings.

    Parameters
    ----------
    entries : array_like
        Square matrix with zeros below the diagonal.
    encoding : BinaryEncoding, optional
        Encoding the matrix was built with. When given, ``dim`` must be a
        multiple of ``encoding.bits_per_var``.
    """

    entries: np.ndarray
    encoding: BinaryEncoding | None = None

    def __post_init__(self) -> None:
        Q = _frozen(self.entries)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or Q.shape[0] == 0:
            raise DimensionError(f"QUBO matrix must be non-empty and square, got shape {Q.shape}")
        if np.any(np.tril(Q, -1) != 0):
            raise DomainError("QUBO matrix must be upper triangular")
        if self.encoding is not None and Q.shape[0] % self.encoding.bits_per_var:
            raise DimensionError(
                f"dim {Q.shape[0]} is not a multiple of {self.encoding.bits_per_var} bits per variable"
            )
        object.__setattr__(self, "entries", Q)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def linear(self) -> np.ndarray:
        return np.diag(self.entries)

    @property
    def quadratic(self) -> np.ndarray:
        """Strict upper triangle (diagonal zeroed)."""
        return np.triu(self.entries, 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuboMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)


def as_assignment(bits, dim: int | None = None) -> np.ndarray:
    """Validate a bit vector and return it as a uint8 array."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise DimensionError(f"assignment must be a vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"assignment has length {arr.shape[0]}, expected {dim}")
    if not np.all((arr == 0) | (arr == 1)):
        raise DomainError("assignment entries must be 0 or 1")
    return arr.astype(np.uint8)


def qubit_index(var_index: int, bit_offset: int, encoding: BinaryEncoding, n: int | None = None) -> int:
    """Flat position of bit ``bit_offset`` of variable ``var_index``.

    Variables occupy consecutive blocks of ``bits_per_var`` qubits, lowest
    exponent first.
    """
    bits = encoding.bits_per_var
    if not 0 <= bit_offset < bits:
        raise IndexError(f"bit offset {bit_offset} out of range for {bits} bits per variable")
    if var_index < 0 or (n is not None and var_index >= n):
        raise IndexError(f"variable index {var_index} out of range")
    return bits * var_index + bit_offset


def decode(bits, encoding: BinaryEncoding, spec: SubrangeSpec | None = None) -> np.ndarray:
    """Real vector represented by ``bits``, shifted by the translation ``spec.T``."""
    arr = as_assignment(bits)
    width = encoding.bits_per_var
    if arr.shape[0] % width:
        raise DimensionError(f"assignment length {arr.shape[0]} is not a multiple of {width}")
    n = arr.shape[0] // width
    x = arr.reshape(n, width).astype(np.float64) @ encoding.weights
    if spec is not None:
        if spec.n != n:
            raise DimensionError(f"translation has length {spec.n}, assignment encodes {n} variables")
        x = x + spec.T
    return x


def encode(residues, encoding: BinaryEncoding) -> np.ndarray:
    """Bits for nonnegative values representable by ``encoding`` (inverse of decode)."""
    vals = np.asarray(residues, dtype=np.float64)
    scaled = np.ldexp(vals, -encoding.lo)
    if not _is_integral(scaled) or np.any(scaled < 0) or np.any(scaled >= 2**encoding.bits_per_var):
        raise DomainError(f"values {vals.tolist()} are not representable by {encoding}")
    ints = scaled.astype(np.int64)
    shifts = np.arange(encoding.bits_per_var)
    return ((ints[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def subrange_of(value, encoding: BinaryEncoding) -> tuple[int, int]:
    """Split an integer into ``(coefficient, residue)`` with floor semantics.

    ``value == coefficient * width + residue`` and ``0 <= residue < width``,
    also for negative values (``-17`` with width 16 gives ``(-2, 15)``).
    """
    encoding.require_subrange_mode()
    if isinstance(value, (float, np.floating)):
        if not float(value).is_integer():
            raise DomainError(f"subrange mode needs integer values, got {value}")
        value = int(value)
    elif not isinstance(value, (int, np.integer)):
        raise DomainError(f"subrange mode needs integer values, got {value!r}")
    coefficient, residue = divmod(int(value), encoding.subrange_width)
    return coefficient, residue


def locate(x, encoding: BinaryEncoding, s: int | None = None) -> tuple[SubrangeSpec, np.ndarray]:
    """Translation and bits placing an integer vector inside its subrange."""
    parts = [subrange_of(v, encoding) for v in np.asarray(x).tolist()]
    coeffs = [c for c, _ in parts]
    residues = [r for _, r in parts]
    if s is None:
        s = max([1] + [-c for c in coeffs] + [c + 1 for c in coeffs])
    spec = SubrangeSpec.from_coefficients(coeffs, encoding, s)
    return spec, encode(residues, encoding)
