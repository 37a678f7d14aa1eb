import json
import os
from unittest import mock

import pytest

from lpprox.command.solve import solve

SMALL_RUN = ["--T", "8", "--dim", "4", "--rows", "16"]


class TestSolve:
    def test_solve_exits_with_invalid_runs(self):
        with pytest.raises(SystemExit) as error:
            solve(["--runs", "0"])
        assert error.value.code == 1

    def test_solve_exits_with_invalid_config(self):
        with pytest.raises(SystemExit) as error:
            solve(["--method", "newton"])
        assert error.value.code == 1

    def test_solve_exits_with_unknown_problem(self, tmp_path):
        with pytest.raises(SystemExit) as error:
            solve(SMALL_RUN + ["--problem", "rosenbrock", "--output_dir", str(tmp_path)])
        assert error.value.code == 1

    @mock.patch("builtins.print")
    def test_solve(self, mock_print, tmp_path):
        solve(SMALL_RUN + ["--output_dir", str(tmp_path)])
        summary = json.loads(mock_print.call_args[0][0])
        assert summary["passed"]
        assert summary["branch"] == "accel"
        assert all(os.path.exists(path) for path in summary["files"])

    @mock.patch("builtins.print")
    @mock.patch("lpprox.command.solve.execute_all")
    def test_solve_runs_consecutive_seeds(self, mock_execute_all, mock_print):
        mock_execute_all.return_value = [{"seed": s, "passed": True} for s in (5, 6, 7)]
        solve(["--runs", "3", "--seed", "5", "--workers", "2"])
        configs, workers = mock_execute_all.call_args[0]
        assert [config.seed for config in configs] == [5, 6, 7]
        assert workers == 2
        assert len(json.loads(mock_print.call_args[0][0])) == 3

    @mock.patch("builtins.print")
    @mock.patch("lpprox.command.solve.execute_all")
    def test_solve_exits_on_certificate_failure(self, mock_execute_all, mock_print):
        mock_execute_all.return_value = [{"seed": 0, "passed": False}]
        with pytest.raises(SystemExit) as error:
            solve([])
        assert error.value.code == 2
        mock_print.assert_called_once()
