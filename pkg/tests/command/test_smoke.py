import json
from unittest import mock

import pytest

from lpprox.command.smoke import SMOKE_PROBES, SMOKE_RUNS, smoke
from lpprox.errors import DeterminismError


def fake_summaries(configs, workers):
    return [
        {"problem": c.problem, "method": c.method, "p": str(c.p), "q": c.q, "branch": "accel", "passed": True}
        for c in configs
    ]


class FakeRun:
    class report:
        passed = True


class TestSmoke:
    def test_smoke_exits_with_invalid_budget(self):
        with pytest.raises(SystemExit) as error:
            smoke(["--k", "2"])
        assert error.value.code == 1

    @mock.patch("builtins.print")
    @mock.patch("lpprox.command.smoke.replay")
    @mock.patch("lpprox.command.smoke.execute_all")
    def test_smoke(self, mock_execute_all, mock_replay, mock_print, tmp_path):
        mock_execute_all.side_effect = fake_summaries
        mock_replay.return_value = FakeRun()
        smoke(["--T", "10", "--output_dir", str(tmp_path)])
        configs = mock_execute_all.call_args[0][0]
        assert len(configs) == len(SMOKE_RUNS)
        assert all(config.T == 10 and config.dim == 4 for config in configs)
        results = [json.loads(call[0][0]) for call in mock_print.call_args_list]
        assert len(results) == len(SMOKE_RUNS) + len(SMOKE_PROBES)
        assert all(result["passed"] for result in results)

    @mock.patch("builtins.print")
    @mock.patch("lpprox.command.smoke.replay")
    @mock.patch("lpprox.command.smoke.execute_all")
    def test_smoke_exits_on_failure(self, mock_execute_all, mock_replay, mock_print, tmp_path):
        mock_execute_all.side_effect = fake_summaries
        mock_replay.side_effect = DeterminismError("reveals differ between replays")
        with pytest.raises(SystemExit) as error:
            smoke(["--output_dir", str(tmp_path)])
        assert error.value.code == 2
        results = [json.loads(call[0][0]) for call in mock_print.call_args_list]
        assert [result["passed"] for result in results[-len(SMOKE_PROBES) :]] == [False] * len(SMOKE_PROBES)
