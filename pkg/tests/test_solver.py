import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecfw import OrderingCone, Polytope, QuadraticVectorObjective, SolverConfig, SolveStatus, portfolio_objective, solve
from vecfw.objective import PORTFOLIO_COVARIANCE as V, PORTFOLIO_RETURNS as u
from vecfw.oracles import simplex_edge_gap, simplex_grid
from vecfw.solver import (
    InfeasibleStartError,
    LineSearchFailure,
    adaptive_stepsize,
    armijo_line_search,
    direction_subproblem,
    psi,
    verify_trace,
)

from conftest import barycenter_problem

X_BAR = np.full(5, 0.2)


def test_psi_examples(portfolio, orthant2):
    assert psi(orthant2, portfolio, X_BAR, X_BAR) == 0.0
    s = np.eye(5)[2]
    expected = max(-u @ (s - X_BAR), 2 * V @ X_BAR @ (s - X_BAR))
    assert psi(orthant2, portfolio, X_BAR, s) == pytest.approx(expected, abs=1e-15)


def test_psi_single_objective():
    cone, obj, _, _ = barycenter_problem()
    x, s = np.eye(5)[0], np.eye(5)[3]
    assert psi(cone, obj, x, s) == pytest.approx(obj.jacobian(x)[0] @ (s - x))


def test_psi_dimension_error(orthant2, portfolio):
    with pytest.raises(ValueError):
        psi(orthant2, portfolio, np.zeros(4), np.zeros(4))


def test_toy_gap_zero_everywhere(toy):
    cone, obj, region = toy
    for a in np.linspace(0, 1, 21):
        x = np.array([a, 1 - a])
        s, v, d = direction_subproblem(cone, obj, region, x)
        assert abs(v) <= 1e-9
        assert simplex_edge_gap(obj.jacobian(x), x)[0] == pytest.approx(0.0, abs=1e-12)


def test_gap_zero_at_vertex_minimiser():
    p = np.eye(4)[1]
    obj = QuadraticVectorObjective(np.eye(4)[None], (-2 * p)[None])
    _, v, _ = direction_subproblem(OrderingCone.orthant(1), obj, Polytope.unit_simplex(4), p)
    assert v == 0.0


def test_portfolio_gap_matches_oracles(portfolio, orthant2, simplex5, rng):
    s, v, d = direction_subproblem(orthant2, portfolio, simplex5, X_BAR)
    assert v < 0
    np.testing.assert_array_equal(d, s - X_BAR)
    exact, _ = simplex_edge_gap(portfolio.jacobian(X_BAR), X_BAR)
    assert v == pytest.approx(exact, abs=1e-12)
    grid = simplex_grid(5, 20)
    grid_best = np.min(np.max((grid - X_BAR) @ portfolio.jacobian(X_BAR).T, axis=1))
    assert v <= grid_best + 1e-12
    for x in rng.dirichlet(np.ones(5), 50):
        _, v, _ = direction_subproblem(orthant2, portfolio, simplex5, x)
        assert v == pytest.approx(simplex_edge_gap(portfolio.jacobian(x), x)[0], abs=1e-12)


def test_direction_needs_max_linear_cone(portfolio, simplex5):
    with pytest.raises(ValueError):
        direction_subproblem(OrderingCone.orthant(2, "l2"), portfolio, simplex5, X_BAR)


def test_armijo_square_example():
    obj = QuadraticVectorObjective(np.ones((1, 1, 1)), np.zeros((1, 1)))
    cone = OrderingCone.orthant(1)
    x, d = np.array([1.0]), np.array([-2.0])
    t, backtracks = armijo_line_search(cone, obj, x, d, obj.jacobian(x), 0.1, 0.5)
    assert (t, backtracks) == (0.5, 1)


def test_armijo_linear_full_step(orthant2):
    obj = QuadraticVectorObjective(np.zeros((2, 3, 3)), np.array([[1.0, 2, 3], [3, 1, 2]]))
    x = np.array([0.0, 0.0, 1.0])
    d = np.array([0.0, 1.0, -1.0])
    t, _ = armijo_line_search(orthant2, obj, x, d, obj.jacobian(x), 0.9, 0.5)
    assert t == 1.0


def test_armijo_first_portfolio_step(portfolio, orthant2, simplex5):
    s, v, d = direction_subproblem(orthant2, portfolio, simplex5, X_BAR)
    J = portfolio.jacobian(X_BAR)
    t, _ = armijo_line_search(orthant2, portfolio, X_BAR, d, J)
    F0 = portfolio(X_BAR)
    excess = lambda step: orthant2(portfolio(X_BAR + step * d) - F0 - step * 0.1 * J @ d)
    assert excess(t) <= 1e-12
    if t < 1.0:
        assert excess(t / 0.5) > 0.0


def test_armijo_failure():
    # an ascent direction can never satisfy the condition
    obj = QuadraticVectorObjective(np.ones((1, 1, 1)), np.zeros((1, 1)))
    x = np.array([1.0])
    with pytest.raises(LineSearchFailure):
        armijo_line_search(OrderingCone.orthant(1), obj, x, np.array([1.0]), obj.jacobian(x), max_backtracks=5)


@pytest.mark.parametrize("v, L, d, expected", [(-1.0, 2.0, (1.0, 0.0), 0.5), (-10.0, 1.0, (0.0, 1.0), 1.0)])
def test_adaptive_examples(v, L, d, expected):
    assert adaptive_stepsize(v, np.array(d), L) == expected


def test_adaptive_small_gap(portfolio, orthant2, simplex5):
    _, _, d = direction_subproblem(orthant2, portfolio, simplex5, X_BAR)
    t = adaptive_stepsize(-1e-6, d, portfolio.lipschitz_constant())
    assert 0 < t < 1e-2


def test_adaptive_errors():
    with pytest.raises(ValueError):
        adaptive_stepsize(-1.0, np.zeros(2), 1.0)
    with pytest.raises(ValueError):
        adaptive_stepsize(-1.0, np.ones(2), 0.0)


@pytest.mark.parametrize("mode", ["armijo", "adaptive"])
def test_barycenter_convergence(mode):
    cone, obj, region, b = barycenter_problem()
    res = solve(cone, obj, region, SolverConfig(stepsize=mode), np.eye(5)[0])
    assert res.status is SolveStatus.STATIONARY
    assert abs(res.v) <= 1e-5
    assert np.sum((res.x - b) ** 2) <= 1e-6
    assert verify_trace(res, cone, obj, region, SolverConfig(stepsize=mode)) == []


def test_toy_returns_immediately(toy):
    cone, obj, region = toy
    res = solve(cone, obj, region, SolverConfig(), np.array([0.3, 0.7]))
    assert res.status is SolveStatus.STATIONARY
    assert res.iterations == 0
    assert len(res.trace) == 1 and res.trace[0].t is None


@pytest.mark.parametrize("mode", ["armijo", "adaptive"])
def test_portfolio_trace_guarantees(portfolio, orthant2, simplex5, rng, mode):
    config = SolverConfig(stepsize=mode)
    for x0 in rng.dirichlet(np.ones(5), 3):
        res = solve(orthant2, portfolio, simplex5, config, x0)
        assert res.status is SolveStatus.STATIONARY
        assert verify_trace(res, orthant2, portfolio, simplex5, config) == []
        if mode == "armijo":
            for rec, nxt in zip(res.trace, res.trace[1:]):
                Jd = portfolio.jacobian(rec.x) @ rec.d
                assert np.all(nxt.F <= rec.F - rec.t * 0.1 * np.abs(Jd) + 1e-12)


def test_assumption_a_surrogate(portfolio, orthant2, simplex5, rng):
    steps = 20
    grid = simplex_grid(5, steps)
    F_grid = np.array([portfolio(g) for g in grid])
    # every point of the simplex is within sqrt(2)/steps of a grid point
    slope = max(np.abs(portfolio.jacobian(g)).sum(axis=1).max() for g in np.eye(5))
    floor = F_grid.min(axis=0) - slope * np.sqrt(2) / steps
    res = solve(orthant2, portfolio, simplex5, SolverConfig(stepsize="adaptive"), rng.dirichlet(np.ones(5)))
    F_trace = np.array([r.F for r in res.trace])
    assert np.all(F_trace.min(axis=0) >= floor)


def _random_simplex(rng, k, n=5):
    S = rng.standard_exponential((k, n))
    return S / S.sum(axis=1, keepdims=True)


def test_stationarity_random_s(portfolio, orthant2, simplex5, rng):
    S = _random_simplex(rng, 10_000)
    x0 = rng.dirichlet(np.ones(5))
    for eps in (1e-5, 1e-7):
        res = solve(orthant2, portfolio, simplex5, SolverConfig(epsilon=eps), x0)
        psis = np.max((S - res.x) @ portfolio.jacobian(res.x).T, axis=1)
        # psi(s) >= v(x) is what |v| <= eps certifies
        assert psis.min() >= res.v - 1e-12
        if eps <= 1e-6:
            assert psis.min() >= -1e-6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gap_continuity(seed):
    obj, cone, region = portfolio_objective(), OrderingCone.orthant(2), Polytope.unit_simplex(5)
    r = np.random.default_rng(seed)
    x = r.dirichlet(np.ones(5))
    direction = r.standard_normal(5)
    direction -= direction.mean()
    direction /= np.linalg.norm(direction)
    base = direction_subproblem(cone, obj, region, x).v
    diffs = []
    for delta in (1e-2, 1e-4, 1e-6):
        y = x + delta * direction
        if np.any(y < 0):
            y = (1 - delta) * x + delta * np.full(5, 0.2)
        diffs.append(abs(direction_subproblem(cone, obj, region, y).v - base))
    assert diffs[2] <= diffs[1] + 1e-15 <= diffs[0] + 2e-15
    assert diffs[2] <= 1e-5


def test_keep_trace_false(portfolio, orthant2, simplex5):
    full = solve(orthant2, portfolio, simplex5, SolverConfig(), X_BAR)
    short = solve(orthant2, portfolio, simplex5, SolverConfig(keep_trace=False), X_BAR)
    assert len(short.trace) == 1
    assert short.iterations == full.iterations
    np.testing.assert_array_equal(short.x, full.x)


def test_max_iterations(portfolio, orthant2, simplex5):
    res = solve(orthant2, portfolio, simplex5, SolverConfig(stepsize="adaptive", max_iterations=3), X_BAR)
    assert res.status is SolveStatus.MAX_ITERATIONS
    assert res.iterations == 3


def test_line_search_failure_status(orthant2, simplex5):
    # strong curvature rejects the full step, and no backtracking is allowed
    Q = np.stack([np.zeros((5, 5)), 50 * np.eye(5)])
    c = np.stack([-np.arange(1.0, 6.0), np.zeros(5)])
    obj = QuadraticVectorObjective(Q, c)
    res = solve(orthant2, obj, simplex5, SolverConfig(max_backtracks=0), np.eye(5)[0])
    assert res.status is SolveStatus.LINE_SEARCH_FAILURE


def test_infeasible_start(portfolio, orthant2, simplex5):
    with pytest.raises(InfeasibleStartError, match="x0 infeasible"):
        solve(orthant2, portfolio, simplex5, SolverConfig(), np.full(5, 0.3))
    with pytest.raises(InfeasibleStartError):
        solve(orthant2, portfolio, simplex5, SolverConfig(), np.full(4, 0.25))


@pytest.mark.parametrize("kwargs", [dict(beta=1.0), dict(tau=0.0), dict(epsilon=0.0),
                                    dict(max_iterations=-1), dict(lipschitz=-1.0), dict(stepsize="newton")])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_lipschitz_override(portfolio, orthant2, simplex5):
    L = 10 * portfolio.lipschitz_constant()
    res = solve(orthant2, portfolio, simplex5, SolverConfig(stepsize="adaptive", lipschitz=L), X_BAR)
    assert res.lipschitz == L
    assert res.status is SolveStatus.STATIONARY
