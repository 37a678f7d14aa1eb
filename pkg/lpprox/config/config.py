""" This module defines the BenchConfig used to launch solver runs and lower-bound experiments """
import math
import os
from typing import Any, Callable, Dict, NamedTuple, Optional

from lpprox.errors import ConfigError
from lpprox.geometry import parse_exponent

DEFAULT_OUTPUT_DIR = "results"

ENV_SEED = "LPPROX_SEED"
ENV_OUTPUT_DIR = "LPPROX_OUTPUT_DIR"
ENV_WORKERS = "LPPROX_WORKERS"

METHODS = ("accel", "adaptive", "unaccel", "auto")


class BenchConfig(NamedTuple):
    """ BenchConfig defines the parameters of a run: problem, geometry, method and output """

    problem: str = "quadratic"
    method: str = "auto"
    p: float = 2.0
    q: int = 1
    nu: float = 1.0
    dim: int = 8
    T: int = 200
    seed: int = 0
    sigma: float = 0.25
    sigma_prime: float = 0.25
    alpha: float = 2.0
    radius: float = 1.0
    rows: int = 64
    smoothing_mu: float = 0.1
    ball_radius: Optional[float] = None
    output_dir: str = DEFAULT_OUTPUT_DIR
    workers: int = 1
    lam_hat0: Optional[float] = None
    y_mode: str = "argmin"

    def items(self):
        """ Return the dictionary items() method for this object """
        return self._asdict().items()  # pylint: disable=no-member

    def with_mutations(self, **kwargs) -> "BenchConfig":
        """ Returns a new BenchConfig with the given fields coerced and replaced """
        unknown = set(kwargs) - set(self._fields)
        if unknown:
            raise ConfigError("unknown configuration keys", keys=",".join(sorted(unknown)))
        return self._replace(**{key: coerce(key, value) for key, value in kwargs.items()})

    def validate(self) -> "BenchConfig":
        """ Returns self, or raises a ConfigError naming the first invalid field """
        if self.method not in METHODS:
            raise ConfigError("unknown method", method=self.method)
        if self.T < 0 or self.dim < 1 or self.q < 1 or self.rows < 1 or self.workers < 1:
            raise ConfigError("T, dim, q, rows and workers must be positive", T=self.T, dim=self.dim, q=self.q)
        if not 0.0 < self.nu <= 1.0:
            raise ConfigError("nu must lie in (0, 1]", nu=self.nu)
        if not (0.0 <= self.sigma < 0.5 and 0.0 <= self.sigma_prime < 0.5):
            raise ConfigError("sigma and sigma_prime must lie in [0, 1/2)", sigma=self.sigma)
        if self.alpha <= 1.0:
            raise ConfigError("alpha must exceed 1", alpha=self.alpha)
        if self.p < 1.0:
            raise ConfigError("p must lie in [1, inf]", p=self.p)
        if self.y_mode not in ("argmin", "combination"):
            raise ConfigError("unknown y mode", y_mode=self.y_mode)
        return self


def _optional_float(value: Any) -> Optional[float]:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
        return None
    return float(value)


def _bool_free_int(value: Any) -> int:
    number = float(value)
    if number != int(number):
        raise ValueError("not an integer: {}".format(value))
    return int(number)


FIELD_TYPES: Dict[str, Callable[[Any], Any]] = {
    "problem": str,
    "method": str,
    "p": parse_exponent,
    "q": _bool_free_int,
    "nu": float,
    "dim": _bool_free_int,
    "T": _bool_free_int,
    "seed": _bool_free_int,
    "sigma": float,
    "sigma_prime": float,
    "alpha": float,
    "radius": float,
    "rows": _bool_free_int,
    "smoothing_mu": float,
    "ball_radius": _optional_float,
    "output_dir": str,
    "workers": _bool_free_int,
    "lam_hat0": _optional_float,
    "y_mode": str,
}


def coerce(key: str, value: Any) -> Any:
    """ Converts a raw (usually textual) value to the type of field `key` """
    try:
        return FIELD_TYPES[key](value.strip() if isinstance(value, str) else value)
    except KeyError:
        raise ConfigError("unknown configuration key", key=key)
    except (TypeError, ValueError) as e:
        raise ConfigError("invalid value", key=key, value=value, reason=str(e))


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Parses a flat key=value file. Blank lines and lines starting with # are skipped; unknown keys and
    lines without '=' are rejected
    """
    values: Dict[str, Any] = {}
    with open(path, "r") as config_file:
        for lineno, line in enumerate(config_file, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError("expected key=value", path=path, line=lineno)
            key = key.strip()
            if key not in FIELD_TYPES:
                raise ConfigError("unknown configuration key", key=key, path=path, line=lineno)
            values[key] = coerce(key, value)
    return values


def _environment_values() -> Dict[str, Any]:
    values = {}
    for key, var in (("seed", ENV_SEED), ("output_dir", ENV_OUTPUT_DIR), ("workers", ENV_WORKERS)):
        if var in os.environ:
            values[key] = coerce(key, os.environ[var])
    return values


def get_config(config_file: Optional[str] = None, **overrides) -> BenchConfig:
    """
    get_config returns the runtime configuration: defaults, overridden by the LPPROX_* environment
    variables, then by the values in `config_file`, then by the keyword overrides whose value is not None
    """
    conf = BenchConfig().with_mutations(**_environment_values())
    if config_file:
        conf = conf.with_mutations(**load_config_file(config_file))
    conf = conf.with_mutations(**{key: value for key, value in overrides.items() if value is not None})
    return conf.validate()


def format_exponent(p: float) -> str:
    return "inf" if math.isinf(p) else "{:g}".format(p)
