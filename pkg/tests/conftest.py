import numpy as np
import pytest

from vecfw import OrderingCone, Polytope, QuadraticVectorObjective, portfolio_objective


@pytest.fixture(scope="session")
def portfolio():
    return portfolio_objective()


@pytest.fixture(scope="session")
def orthant2():
    return OrderingCone.orthant(2, "linf")


@pytest.fixture(scope="session")
def simplex5():
    return Polytope.unit_simplex(5)


@pytest.fixture(scope="session")
def toy():
    """F(x) = (x1, x2) on the unit simplex of R^2: every feasible point is stationary."""
    obj = QuadraticVectorObjective(np.zeros((2, 2, 2)), np.eye(2))
    return OrderingCone.orthant(2, "linf"), obj, Polytope.unit_simplex(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def barycenter_problem(n: int = 5):
    """m = 1, f(x) = ||x - b||^2 - ||b||^2 with b the simplex barycenter."""
    b = np.full(n, 1.0 / n)
    obj = QuadraticVectorObjective(np.eye(n)[None], (-2.0 * b)[None])
    return OrderingCone.orthant(1), obj, Polytope.unit_simplex(n), b


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; all lines are echoed in the terminal summary."""

    def _report(criterion: str, passed: bool, detail: str) -> bool:
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
