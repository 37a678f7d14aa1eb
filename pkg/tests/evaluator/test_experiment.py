import json
import math
import os

import numpy as np
import pytest

from lpprox.config import BenchConfig
from lpprox.errors import ConfigError
from lpprox.evaluator import (
    build_problem,
    certify,
    dispatch,
    effective_exponent,
    execute,
    execute_all,
    run_experiment,
)
from lpprox.evaluator.experiment import unaccel_mode
from lpprox.method import UnaccelMode, read_trace_csv

BASE = BenchConfig(dim=4, rows=16, T=24)


class TestSetup:
    def test_effective_exponent(self):
        assert effective_exponent(BASE) == 2.0
        assert effective_exponent(BASE._replace(p=1.0)) == pytest.approx(1.0 + 1.0 / math.log(4))
        assert effective_exponent(BASE._replace(p=1.0, method="unaccel")) == 1.0
        with pytest.raises(ConfigError):
            effective_exponent(BASE._replace(p=1.0, dim=1))

    def test_unaccel_mode(self):
        assert unaccel_mode(BASE._replace(method="unaccel")) is UnaccelMode.SMOOTH
        assert unaccel_mode(BASE._replace(method="unaccel", q=2)) is UnaccelMode.POWER
        assert unaccel_mode(BASE._replace(method="unaccel", nu=0.5)) is UnaccelMode.POWER
        assert unaccel_mode(BASE._replace(p=math.inf)) is UnaccelMode.POWER
        assert unaccel_mode(BASE._replace(ball_radius=0.1)) is UnaccelMode.BALL

    def test_build_problem(self):
        problem = build_problem(BASE._replace(problem="logistic", q=2), p=3.0)
        assert problem.name == "logistic"
        assert problem.geometry.p == 3.0
        assert problem.holder.q == 2
        assert problem.dim == 4


class TestDispatch:
    @pytest.mark.parametrize(
        "overrides, method, branch",
        [
            ({}, "accel", "accel"),
            ({"method": "accel"}, "accel", "accel"),
            ({"method": "adaptive"}, "adaptive", "adaptive"),
            ({"method": "unaccel"}, "unaccel", "unaccel-smooth"),
            ({"problem": "logistic", "q": 2}, "adaptive", "adaptive"),
        ],
    )
    def test_branches(self, overrides, method, branch):
        config = BASE._replace(T=6, **overrides)
        trace = dispatch(config, build_problem(config))
        assert trace.method == method
        assert trace.params["branch"] == branch
        assert trace.params["exponent"] > 0.0


class TestRunExperiment:
    def test_accelerated_run_passes(self):
        experiment = run_experiment(BASE)
        assert experiment.passed
        checks = experiment.certification.checks
        assert {"run_completed", "gap_audit", "rate_bound"} <= set(checks)
        assert experiment.stem == "quadratic-auto-p2-q1-nu1-d4-T24-s0"
        assert len(experiment.certification.drops) == experiment.trace.T

    def test_adaptive_run_carries_growth_checks(self):
        experiment = run_experiment(BASE._replace(method="adaptive", T=12))
        assert {"growth", "growth_theorem", "movement"} <= set(experiment.certification.checks)
        assert experiment.certification.checks["growth"]
        assert experiment.certification.checks["gap_audit"]

    def test_unaccelerated_smooth_run(self):
        experiment = run_experiment(BASE._replace(method="unaccel", T=10))
        assert experiment.passed
        assert experiment.certification.bounds["unaccel_bound"] > 0.0
        drops = experiment.certification.drops
        assert drops[-1] is None
        assert all(drop is not None for drop in drops[:-1])

    def test_summary(self):
        experiment = run_experiment(BASE)
        summary = experiment.summary()
        assert summary["branch"] == "accel"
        assert summary["p"] == summary["p_effective"] == "2"
        assert summary["budget"] == summary["T"] == 24
        assert summary["status"] == "complete"
        assert summary["theoretical_exponent"] == pytest.approx(2.0)
        assert summary["final_gap"] >= 0.0
        assert summary["best_gap"] <= summary["final_gap"]
        assert summary["passed"]
        assert "wall_time" not in summary
        json.loads(experiment.summary_json())

    def test_csv_metadata(self):
        experiment = run_experiment(BASE._replace(T=8))
        table = read_trace_csv(experiment.csv_text())
        assert table.meta["branch"] == "accel"
        assert table.meta["problem"] == "quadratic"
        assert table.meta_float("f_star") == experiment.problem.f_star
        assert np.array_equal(table.columns["f_y"], experiment.values)
        assert not np.any(np.isnan(table.columns["drop"]))

    def test_rate_needs_enough_rows(self):
        assert run_experiment(BASE._replace(T=8)).rate is None


class TestExecute:
    def test_writes_files(self, tmp_path):
        config = BASE._replace(T=8, output_dir=str(tmp_path))
        summary = execute(config)
        stem = os.path.join(str(tmp_path), "quadratic-auto-p2-q1-nu1-d4-T8-s0")
        assert summary["files"] == [stem + ".csv", stem + ".json"]
        assert summary["wall_time"] >= 0.0
        with open(stem + ".json") as f:
            written = json.load(f)
        assert "wall_time" not in written
        assert written["passed"] == summary["passed"]

    def test_reruns_write_identical_files(self, tmp_path):
        contents = []
        for name in ("first", "second"):
            output_dir = tmp_path / name
            output_dir.mkdir()
            summary = execute(BASE._replace(T=8, output_dir=str(output_dir)))
            contents.append([open(path, "rb").read() for path in summary["files"]])
        assert contents[0] == contents[1]

    def test_execute_all_keeps_the_order(self, tmp_path):
        configs = [BASE._replace(T=4, seed=seed, output_dir=str(tmp_path)) for seed in (3, 1, 2)]
        summaries = execute_all(configs, workers=1)
        assert [summary["seed"] for summary in summaries] == [3, 1, 2]


class TestCertify:
    def test_unaccel_power_mode(self):
        config = BASE._replace(method="unaccel", q=2, problem="pth-power", p=2.0, T=5)
        problem = build_problem(config)
        trace = dispatch(config, problem)
        certification = certify(trace, problem)
        assert "stationarity" in certification.checks
        assert certification.drops is None
