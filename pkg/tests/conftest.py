import numpy as np
import pytest

from subqubo import BinaryEncoding, LinearSystem

# Printed in the discussion of the source method (subrange T = (16, -32)).
PAPER_Q_PRIME = np.array(
    [
        [-120, 40, 80, 160, 2, 4, 8, 16],
        [0, -220, 160, 320, 4, 8, 16, 32],
        [0, 0, -360, 640, 8, 16, 32, 64],
        [0, 0, 0, -400, 16, 32, 64, 128],
        [0, 0, 0, 0, -155, 20, 40, 80],
        [0, 0, 0, 0, 0, -300, 80, 160],
        [0, 0, 0, 0, 0, 0, -560, 320],
        [0, 0, 0, 0, 0, 0, 0, -960],
    ],
    dtype=float,
)

# Printed untranslated Q (c = b), including its two misprinted diagonal entries.
PAPER_Q_PRINTED = np.array(
    [
        [-3760, 40, 80, 160, 2, 4, 8, 16],
        [0, -732, 160, 320, 4, 8, 16, 32],
        [0, 0, -1384, 640, 8, 16, 32, 64],
        [0, 0, 0, -2448, 16, 32, 64, 128],
        [0, 0, 0, 0, -133, 20, 40, 80],
        [0, 0, 0, 0, 0, 276, 80, 160],
        [0, 0, 0, 0, 0, 0, 592, 320],
        [0, 0, 0, 0, 0, 0, 0, 1344],
    ],
    dtype=float,
)

PAPER_A = [[3, 1], [-1, 2]]
PAPER_B = [46, -55]


@pytest.fixture
def paper_system():
    return LinearSystem(PAPER_A, PAPER_B)


@pytest.fixture
def enc4():
    return BinaryEncoding.integer(4)


_ACCEPTANCE_LINES = []


def record_criterion(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def small_qubo_fixtures():
    """Named QUBOs with at most 12 qubits, used to compare SA with brute force."""
    from subqubo import BinaryEncoding, QuboMatrix, build_qubo, gen_random, locate
    from subqubo.qubo_builder import build_for_subrange

    out = {
        "paper_q_prime": QuboMatrix(PAPER_Q_PRIME),
        "paper_q_untranslated": build_qubo(PAPER_A, PAPER_B, BinaryEncoding.integer(4)),
        "single_negative": QuboMatrix([[-1.0]]),
        "zero_3": QuboMatrix(np.zeros((3, 3))),
    }
    for n, bits, seed in [(2, 2, 1), (2, 3, 2), (3, 2, 3), (3, 3, 4), (3, 4, 5), (4, 3, 6), (6, 2, 7)]:
        enc = BinaryEncoding.integer(bits)
        width = enc.subrange_width
        system, x = gen_random(n, x_range=(-2 * width, 2 * width - 1), seed=seed, invertible=True)
        spec, _ = locate(x, enc, s=2)
        out[f"lsq_n{n}_b{bits}"] = build_for_subrange(system, spec, enc)[0]
    rng = np.random.default_rng(2024)
    for dim in (5, 9, 12):
        out[f"uniform_{dim}"] = QuboMatrix(np.triu(rng.uniform(-1, 1, (dim, dim))))
    return out
