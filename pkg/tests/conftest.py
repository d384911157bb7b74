"""Shared fixtures: small realizable matroids with hand-checked cocircuits.

The triangle matroid (rows x, y, x+y) is small enough to verify every value
by hand; the rank-3 and rank-4 matrices below were screened so that their
programs exercise general position, degeneracy, feasibility and boundedness
in the combinations the tests need.
"""

import random

import pytest

from omprog.extend import lex_extend
from omprog.formats import om_from_matrix
from omprog.programs import Program
from omprog.signs import SignVector

TRIANGLE_ROWS = [[1, 0], [0, 1], [1, 1]]
RANK3_5_ROWS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]
RANK3_6_ROWS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 1]]
RANK3_7_ROWS = [
    [-3, 1, -2],
    [2, 0, 4],
    [0, 3, 1],
    [2, 0, 2],
    [2, -4, 2],
    [-2, -1, -4],
    [3, 4, 2],
]
RANK4_8_ROWS = [
    [2, 3, 2, 2],
    [3, 4, -2, -3],
    [3, 2, 5, 4],
    [-3, -4, 2, -1],
    [-3, -4, 3, 5],
    [-5, 4, 1, 2],
    [5, 4, 5, -3],
    [4, -5, 3, -4],
]
# two opposite parallel pairs; the program (g=1, f=3) has no feasible cocircuit
INFEASIBLE_ROWS = [[1, 0], [-1, 0], [0, 1], [0, -1]]


def sv(text):
    return SignVector.from_string(text)


def strs(vectors):
    return [str(v) for v in vectors]


def random_matrix_oms(count, seed, ranks=(2, 4), rows=(4, 8), entry=5, loop_free=False):
    """Deterministic corpus of realizable oriented matroids from random
    integer matrices; matrices whose rank misses the target are redrawn."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.randint(*ranks)
        m = rng.randint(max(rows[0], r), rows[1])
        mat = [[rng.randint(-entry, entry) for _ in range(r)] for _ in range(m)]
        try:
            om = om_from_matrix(mat)
        except (ValueError, RuntimeError):
            continue
        if om.rank != r:
            continue
        if loop_free and om.loops():
            continue
        out.append((mat, om))
    return out


@pytest.fixture(scope="session")
def triangle():
    return om_from_matrix(TRIANGLE_ROWS)


@pytest.fixture(scope="session")
def triangle_ext(triangle):
    """The triangle extended lexicographically over the base [1, 2] with
    positive template signs: uniform rank 2 on four elements."""
    return lex_extend(triangle, ["1", "2"], "++", "p")


@pytest.fixture(scope="session")
def om5():
    return om_from_matrix(RANK3_5_ROWS)


@pytest.fixture(scope="session")
def om6():
    return om_from_matrix(RANK3_6_ROWS)


@pytest.fixture(scope="session")
def om7():
    return om_from_matrix(RANK3_7_ROWS)


@pytest.fixture(scope="session")
def om_r4():
    return om_from_matrix(RANK4_8_ROWS)


@pytest.fixture(scope="session")
def om_infeasible():
    return om_from_matrix(INFEASIBLE_ROWS)


@pytest.fixture(scope="session")
def rank1_om():
    return om_from_matrix([[1]])


@pytest.fixture(scope="session")
def rank2_om4():
    return om_from_matrix([[1, 0], [0, 1], [1, 1], [1, 2]])


@pytest.fixture(scope="session")
def coloop_om():
    """Element 1 is a coloop; the antiparallel pair 2, 3 keeps the program
    with infinity element 1 feasible and bounded."""
    return om_from_matrix([[0, 1], [1, 0], [-1, 0]])


@pytest.fixture()
def prog_triangle(triangle):
    return Program(triangle, "3", "1")


@pytest.fixture()
def prog7(om7):
    return Program(om7, "1", "6")
