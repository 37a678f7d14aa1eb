import math
import os
from unittest import mock

import pytest

from lpprox.config import BenchConfig, format_exponent, get_config, load_config_file
from lpprox.config import config
from lpprox.errors import ConfigError


class TestBenchConfig:
    def test_create(self):
        conf = BenchConfig()
        assert isinstance(conf, BenchConfig)
        assert conf.method == "auto"
        assert conf.p == 2.0
        assert conf.sigma == conf.sigma_prime == 0.25
        assert conf.alpha == 2.0
        assert conf.ball_radius is None

    def test_items(self):
        items = BenchConfig().items()
        assert all(len(v) == 2 for v in items)
        assert len(items) == len(BenchConfig._fields)

    def test_with_mutations(self):
        conf = BenchConfig()
        conf2 = conf.with_mutations()
        assert conf == conf2
        conf2 = conf.with_mutations(p="inf", T="50", ball_radius="none", lam_hat0="0.5")
        assert conf.p == 2.0
        assert math.isinf(conf2.p)
        assert conf2.T == 50
        assert conf2.ball_radius is None
        assert conf2.lam_hat0 == 0.5

    def test_with_mutations_rejects_bad_values(self):
        with pytest.raises(ConfigError):
            BenchConfig().with_mutations(colour="blue")
        with pytest.raises(ConfigError):
            BenchConfig().with_mutations(T="2.5")
        with pytest.raises(ConfigError):
            BenchConfig().with_mutations(p="zero")

    @pytest.mark.parametrize(
        "field, value",
        [
            ("method", "newton"),
            ("T", -1),
            ("dim", 0),
            ("nu", 0.0),
            ("nu", 1.5),
            ("sigma", 0.5),
            ("alpha", 1.0),
            ("y_mode", "average"),
        ],
    )
    def test_validate(self, field, value):
        with pytest.raises(ConfigError):
            BenchConfig()._replace(**{field: value}).validate()

    def test_format_exponent(self):
        assert format_exponent(math.inf) == "inf"
        assert format_exponent(2.0) == "2"
        assert format_exponent(1.5) == "1.5"


class TestLoadConfigFile:
    def test_load(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("# a comment\n\nproblem = logistic\np=4\nq=2\nball_radius=none\n")
        assert load_config_file(str(path)) == {"problem": "logistic", "p": 4.0, "q": 2, "ball_radius": None}

    def test_rejects_malformed_lines(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("problem logistic\n")
        with pytest.raises(ConfigError):
            load_config_file(str(path))
        path.write_text("speed=fast\n")
        with pytest.raises(ConfigError):
            load_config_file(str(path))


class TestGetConfig:
    @mock.patch.dict(os.environ, {}, clear=True)
    def test_get_default_config(self):
        conf = get_config()
        assert conf == BenchConfig()
        assert conf.output_dir == config.DEFAULT_OUTPUT_DIR

    @mock.patch.dict(os.environ, {"LPPROX_SEED": "7", "LPPROX_OUTPUT_DIR": "/tmp/out", "LPPROX_WORKERS": "3"}, clear=True)
    def test_get_config_with_environment(self):
        conf = get_config()
        assert conf.seed == 7
        assert conf.output_dir == "/tmp/out"
        assert conf.workers == 3

    @mock.patch.dict(os.environ, {"LPPROX_SEED": "7"}, clear=True)
    def test_precedence(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("seed=11\nT=40\n")
        conf = get_config(str(path))
        assert conf.seed == 11
        assert conf.T == 40
        conf = get_config(str(path), seed="13", T=None)
        assert conf.seed == 13
        assert conf.T == 40

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_invalid_override(self):
        with pytest.raises(ConfigError):
            get_config(method="newton")
