import numpy as np
import pytest

from deltafilt.hsys import HomologicalSystem, projective_system
from deltafilt.qrep import PathAlgebra, Quiver, projective, simple


def a2(p=5):
    return PathAlgebra(Quiver((1, 2), [("a", 1, 2)]), p)


def a3(p=5):
    return PathAlgebra(Quiver((1, 2, 3), [("a", 1, 2), ("b", 2, 3)]), p)


def simples_system(alg, pairs=((1, 2),)):
    return HomologicalSystem.from_pairs(alg, alg.vertices, pairs,
                                        {v: simple(alg, v) for v in alg.vertices})


@pytest.fixture
def A2():
    return a2()


@pytest.fixture
def A3():
    return a3()


@pytest.fixture
def simples(A2):
    return simples_system(A2)


@pytest.fixture
def projectives(A2):
    return projective_system(A2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
