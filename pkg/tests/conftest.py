import pytest
from hypothesis import settings

from smalldefect.appendix import load_tables
from smalldefect.engine import P5_WEIGHT3_ASSUMPTION, Solver, SolverConfig

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def solver5():
    """p=5 solver carrying the one standing weight-3 assumption."""
    return Solver(5, SolverConfig(), [P5_WEIGHT3_ASSUMPTION])


@pytest.fixture(scope="session")
def bare_solver5():
    return Solver(5, SolverConfig())


@pytest.fixture(scope="session")
def solver7():
    return Solver(7, SolverConfig())


@pytest.fixture(scope="session")
def solvers():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = Solver(p, SolverConfig())
        return cache[p]

    return get


@pytest.fixture(scope="session")
def tables():
    return load_tables()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, text = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}")
