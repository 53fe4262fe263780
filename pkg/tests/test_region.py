import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecfw.oracles import enumerate_vertices
from vecfw.region import Polytope, RegionError


def test_contains(simplex5):
    assert simplex5.contains(np.full(5, 0.2), tol=1e-9)
    assert not simplex5.contains(np.array([0.5, 0.6, 0, 0, -0.1]))
    assert Polytope.box([0, 0], [1, 1]).contains(np.array([1 + 1e-10, 0.5]), tol=1e-9)
    assert not Polytope.box([0, 0], [1, 1]).contains(np.array([1 + 1e-8, 0.5]), tol=1e-9)


def test_contains_dimension_error(simplex5):
    with pytest.raises(RegionError):
        simplex5.contains(np.zeros(4))


def test_diameter_simplex_and_box(simplex5):
    V = simplex5.vertices()
    brute = max(np.linalg.norm(a - b) for a, b in itertools.combinations(V, 2))
    assert simplex5.diameter() == pytest.approx(brute)
    assert simplex5.diameter() == pytest.approx(np.sqrt(2))
    assert Polytope.box(np.zeros(3), np.ones(3)).diameter() == pytest.approx(np.sqrt(3))


def test_diameter_general_upper_bound():
    # triangle (0,0), (1,0), (0.5,0.5) inside [0,1]^2
    P = Polytope.general(2, A_ub=[[-1, 1], [1, 1]], b_ub=[0, 1], lower=[0, 0], upper=[1, 1])
    verts = np.array([[0, 0], [1, 0], [0.5, 0.5]])
    true = max(np.linalg.norm(a - b) for a, b in itertools.combinations(verts, 2))
    assert true - 1e-12 <= P.diameter() <= np.sqrt(2) + 1e-12


def test_empty_and_unbounded():
    with pytest.raises(RegionError):
        Polytope.general(2, A_ub=[[1, 1]], b_ub=[-1], lower=[0, 0])
    with pytest.raises(RegionError):
        Polytope.general(2, A_ub=[[1, -1]], b_ub=[0], lower=[0, 0])
    with pytest.raises(RegionError):
        Polytope.box([0.0], [np.inf])


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_simplex_samples_feasible(n, seed):
    x = Polytope.unit_simplex(n).sample_uniform(np.random.default_rng(seed))
    assert np.all(x >= 0)
    assert x.sum() == pytest.approx(1.0, abs=1e-12)


def test_sample_means(rng):
    s2 = Polytope.unit_simplex(2)
    xs = np.array([s2.sample_uniform(rng) for _ in range(100_000)])
    assert abs(xs[:, 0].mean() - 0.5) <= 0.01
    box = Polytope.box([0, 0], [1, 1])
    xs = np.array([box.sample_uniform(rng) for _ in range(100_000)])
    assert np.all(np.abs(xs.mean(axis=0) - 0.5) <= 0.01)


def test_simplex_sampling_is_uniform(rng):
    # uniform on the simplex of R^3: x1 ~ Beta(1, 2) with mean 1/3 and variance 1/18
    s3 = Polytope.unit_simplex(3)
    xs = np.array([s3.sample_uniform(rng) for _ in range(50_000)])
    assert abs(xs[:, 0].mean() - 1 / 3) < 0.01
    assert abs(xs[:, 0].var() - 1 / 18) < 0.005


def test_general_sampling_unsupported():
    P = Polytope.general(2, A_ub=[[1, 1]], b_ub=[1], lower=[0, 0])
    with pytest.raises(RegionError):
        P.sample_uniform(np.random.default_rng(0))


def test_lmo_examples(simplex5):
    np.testing.assert_array_equal(simplex5.linear_minimization_oracle(np.array([3, 1, 2, 5, 4.0])), np.eye(5)[1])
    np.testing.assert_array_equal(simplex5.linear_minimization_oracle(np.ones(5)), np.eye(5)[0])
    box = Polytope.box([-1, 0], [2, 3])
    np.testing.assert_array_equal(box.linear_minimization_oracle(np.array([1.0, -1.0])), [-1, 3])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lmo_random_polytope(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(2, 5))
    A = r.standard_normal((3, n))
    b = np.abs(r.standard_normal(3)) + 0.1
    P = Polytope.general(n, A_ub=A, b_ub=b, lower=np.zeros(n), upper=np.ones(n))
    cost = r.standard_normal(n)
    s = P.linear_minimization_oracle(cost)
    status, value, _ = enumerate_vertices(cost, A_ub=A, b_ub=b, lower=np.zeros(n), upper=np.ones(n))
    assert status == "optimal"
    assert P.contains(s)
    assert cost @ s == pytest.approx(value, abs=1e-9)


def test_region_arrays_read_only(simplex5):
    with pytest.raises(ValueError):
        simplex5.lower[0] = 1.0
