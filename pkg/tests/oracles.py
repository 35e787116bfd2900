"""Independent reference computations used as test oracles.

Nothing here calls into the builder or the solvers under test.
"""

import itertools

import numpy as np


def reference_qubo(A, c, lo, hi):
    """Per-term accumulation, k outermost, one coefficient family at a time."""
    A = np.asarray(A, dtype=float)
    c = np.asarray(c, dtype=float)
    n = A.shape[0]
    exps = list(range(lo, hi + 1))
    bits = len(exps)
    Q = np.zeros((n * bits, n * bits))
    for k in range(n):
        for i in range(n):
            for l, e in enumerate(exps):
                po = bits * i + l
                Q[po][po] += 2.0 ** (2 * e) * A[k][i] ** 2 - 2.0 ** (e + 1) * A[k][i] * c[k]
    for k in range(n):
        for i in range(n):
            for l1 in range(bits - 1):
                for l2 in range(l1 + 1, bits):
                    Q[bits * i + l1][bits * i + l2] += 2.0 ** (exps[l1] + exps[l2] + 1) * A[k][i] ** 2
    for k in range(n):
        for i in range(n - 1):
            for j in range(i + 1, n):
                for l1 in range(bits):
                    for l2 in range(bits):
                        Q[bits * i + l1][bits * j + l2] += (
                            2.0 ** (exps[l1] + exps[l2] + 1) * A[k][i] * A[k][j]
                        )
    return Q


def radix_value(bits, lo, hi):
    """Values of consecutive bit blocks, weights 2**lo .. 2**hi."""
    width = hi - lo + 1
    return [
        sum(bits[v * width + l] * 2.0 ** (lo + l) for l in range(width))
        for v in range(len(bits) // width)
    ]


def least_squares_shifted(A, c, x):
    """||A x - c||^2 - c.c evaluated directly."""
    A = np.asarray(A, dtype=float)
    c = np.asarray(c, dtype=float)
    r = A @ np.asarray(x, dtype=float) - c
    return float(r @ r - c @ c)


def qubo_value(Q, bits):
    Q = np.asarray(Q)
    total = 0.0
    for i in range(len(bits)):
        if bits[i]:
            total += Q[i][i]
            for j in range(i + 1, len(bits)):
                if bits[j]:
                    total += Q[i][j]
    return total


def enumerate_minimum(Q):
    """(min, sorted minimizers) by walking all bit tuples."""
    dim = len(Q)
    best, winners = None, []
    for bits in itertools.product((0, 1), repeat=dim):
        e = qubo_value(Q, bits)
        if best is None or e < best:
            best, winners = e, [bits]
        elif e == best:
            winners.append(bits)
    return best, sorted(winners)
