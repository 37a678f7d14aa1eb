import math

import numpy as np
import pytest

from lpprox.errors import ProblemError
from lpprox.problem import (
    ProblemKind,
    ProblemSpec,
    dimension_factor,
    holder_ratio,
    make_problem,
    midpoint_violation,
)
from lpprox.problem.handle import SPOT_CHECK_SLACK
from tests.mocks.problems import benchmark, half_squared_norm

GRID = [
    ("quadratic", 2.0, 1, 1.0),
    ("quadratic", 4.0, 1, 1.0),
    ("quadratic", 1.5, 1, 1.0),
    ("pth-power", 3.0, 2, 1.0),
    ("pth-power", 2.0, 1, 0.5),
    ("logistic", 2.0, 1, 1.0),
    ("logistic", 2.0, 2, 1.0),
    ("logistic", 3.0, 3, 1.0),
    ("softmax-regression", 2.0, 1, 1.0),
    ("huberized-norm", 2.0, 1, 1.0),
]


class TestProblemKind:
    def test_parse(self):
        assert ProblemKind.parse("pth-power") is ProblemKind.PTH_POWER
        assert str(ProblemKind.LOGISTIC) == "logistic"

    def test_parse_unknown(self):
        with pytest.raises(ProblemError):
            ProblemKind.parse("rosenbrock")


class TestMakeProblem:
    @pytest.mark.parametrize("kind,p,q,nu", GRID)
    def test_holder_data_is_consistent_with_samples(self, rng, kind, p, q, nu):
        problem = benchmark(kind, p=p, q=q, nu=nu)
        assert problem.holder.q == q
        assert problem.holder.nu == nu
        assert holder_ratio(problem, rng) <= 1.0 + SPOT_CHECK_SLACK

    @pytest.mark.parametrize("kind,p,q,nu", GRID)
    def test_convex(self, rng, kind, p, q, nu):
        problem = benchmark(kind, p=p, q=q, nu=nu)
        assert midpoint_violation(problem, rng, pairs=200) <= 1e-12

    @pytest.mark.parametrize("kind,p,q,nu", GRID)
    def test_known_optimum(self, kind, p, q, nu):
        problem = benchmark(kind, p=p, q=q, nu=nu)
        assert problem.known_optimum()
        assert problem.value(problem.x_star) == pytest.approx(problem.f_star, abs=1e-12)
        assert np.linalg.norm(problem.gradient(problem.x_star)) <= 1e-6
        assert problem.gap(problem.x0) >= 0.0

    def test_deterministic_in_the_seed(self):
        first = benchmark("logistic", seed=3)
        second = benchmark("logistic", seed=3)
        other = benchmark("logistic", seed=4)
        assert np.array_equal(first.x_star, second.x_star)
        assert first.f_star == second.f_star
        assert not np.array_equal(first.x_star, other.x_star)

    def test_quadratic_minimizer_at_the_radius(self):
        problem = benchmark("quadratic", p=3.0, radius=2.0)
        assert problem.distance_to_optimum() == pytest.approx(2.0)

    def test_explicit_quadratic_data(self):
        spec = ProblemSpec(
            kind=ProblemKind.QUADRATIC, dim=2, matrix=np.diag([1.0, 2.0]), vector=np.array([1.0, 2.0])
        )
        problem = make_problem(spec)
        assert np.allclose(problem.x_star, [1.0, 1.0])
        assert problem.f_star == pytest.approx(-1.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": ProblemKind.QUADRATIC, "dim": 0},
            {"kind": ProblemKind.QUADRATIC, "dim": 1000},
            {"kind": ProblemKind.QUADRATIC, "radius": 0.0},
            {"kind": ProblemKind.QUADRATIC, "q": 3},
            {"kind": ProblemKind.QUADRATIC, "nu": 0.5},
            {"kind": ProblemKind.HUBERIZED_NORM, "q": 2},
            {"kind": ProblemKind.LOGISTIC, "q": 4},
        ],
    )
    def test_rejects_unsupported_specs(self, kwargs):
        with pytest.raises(ProblemError):
            make_problem(ProblemSpec(**kwargs))

    def test_accepts_kind_names(self):
        assert make_problem(ProblemSpec(kind="quadratic", dim=3)).name == "quadratic"


class TestProblemHandle:
    def test_derivative_orders(self):
        problem = half_squared_norm()
        h = np.array([1.0, 0.0, 0.0, 0.0])
        assert np.array_equal(problem.derivative(2, np.ones(4), h), h)
        with pytest.raises(ProblemError):
            problem.derivative(4, np.ones(4), h)

    def test_hessian_needs_second_order(self):
        problem = benchmark("huberized-norm")
        with pytest.raises(ProblemError):
            problem.hessian(np.zeros(4))

    def test_gap_without_optimum(self):
        problem = half_squared_norm()._replace(f_star=None, x_star=None)
        assert problem.gap(np.ones(4)) is None
        assert problem.distance_to_optimum() is None


class TestDimensionFactor:
    def test_values(self):
        assert dimension_factor(16, 2.0, 2.0) == 1.0
        assert dimension_factor(16, 4.0, 2.0) == pytest.approx(4.0)
        assert dimension_factor(16, math.inf, 2.0) == 16.0
