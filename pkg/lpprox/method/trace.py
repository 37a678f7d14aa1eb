""" Per-iteration records of a proximal point run and their versioned CSV form """
import csv
import enum
import io
import math
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from lpprox.errors import LpproxError
from lpprox.geometry import Geometry

SCHEMA_LINE = "# trace-schema v1"
COLUMNS = ["k", "a_k", "A_k", "lambda_k", "lambdahat_k", "gamma_k", "f_y", "move_norm", "drop", "E_k"]


class RunStatus(enum.Enum):
    COMPLETE = "complete"
    TRUNCATED = "truncated"
    OPTIMAL = "optimal"

    def __str__(self):
        return self.value


class IterationRecord(NamedTuple):
    """
    The state after iteration k. `x` is the oracle query, `y_tilde` its answer and `y` the reported
    iterate; `z` is the dual averaging point (None for the unaccelerated method). The adaptive fields
    keep their defaults for methods that do not guess lam
    """

    k: int
    a: float
    A: float
    lam: float
    x: np.ndarray
    y: np.ndarray
    z: Optional[np.ndarray]
    y_tilde: np.ndarray
    v: np.ndarray
    eps: float
    move_norm: float
    lam_hat: float = math.nan
    gamma: float = 1.0
    a_hat: float = math.nan
    A_hat: float = math.nan
    up: Optional[bool] = None
    f_y: Optional[float] = None


class RunTrace:
    """ The iterations of one run together with the constants its certificates need """

    def __init__(
        self,
        method: str,
        geometry: Geometry,
        r: float,
        x0,
        C: float = math.nan,
        sigma: float = 0.0,
        sigma_prime: float = 0.0,
        delta: float = 0.0,
        psi=None,
        alpha: Optional[float] = None,
        params: Optional[Dict[str, object]] = None,
    ):
        self.method = method
        self.geometry = geometry
        self.r = float(r)
        self.x0 = np.asarray(x0, dtype=float)
        self.C = C
        self.sigma = sigma
        self.sigma_prime = sigma_prime
        self.delta = delta
        self.psi = psi
        self.alpha = alpha
        self.params = dict(params or {})
        self.records: List[IterationRecord] = []
        self.status = RunStatus.COMPLETE
        self.diagnostic = ""

    @property
    def T(self) -> int:
        return len(self.records)

    @property
    def A(self) -> float:
        return self.records[-1].A if self.records else 0.0

    @property
    def final_y(self) -> np.ndarray:
        return self.records[-1].y if self.records else self.x0

    def append(self, record: IterationRecord):
        self.records.append(record)

    def truncate(self, error: LpproxError):
        """ Ends the run early, keeping the iterations completed so far """
        self.status = RunStatus.TRUNCATED
        self.diagnostic = str(error)

    def mark_optimal(self, message: str = "oracle reported a stationary point"):
        self.status = RunStatus.OPTIMAL
        self.diagnostic = message

    def lam_root_sum(self) -> float:
        """ sum_k lam_k^{1/r} over iterations with finite lam """
        return float(sum(rec.lam ** (1.0 / self.r) for rec in self.records if math.isfinite(rec.lam)))

    def values(self, problem) -> np.ndarray:
        """ f(y_k) for k = 1..T, evaluating f only where the method did not already record it """
        return np.array([rec.f_y if rec.f_y is not None else problem.value(rec.y) for rec in self.records])

    def best_values(self, problem) -> np.ndarray:
        """ min_{i <= k} f(y_i), which is non-increasing in k """
        values = self.values(problem)
        return np.minimum.accumulate(values) if values.size else values


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def trace_csv(
    trace: RunTrace,
    f_values: Sequence[float],
    drops: Optional[Sequence[float]] = None,
    bounds: Optional[Sequence[float]] = None,
    meta: Optional[Dict[str, object]] = None,
) -> str:
    """
    Renders a trace as CSV text: the schema line, one `# key=value` metadata line, the column header
    and one row per iteration. Floats are written with repr so equal runs give identical bytes
    """
    out = io.StringIO()
    out.write(SCHEMA_LINE + "\n")
    meta = {"method": trace.method, "p": trace.geometry.p, "r": trace.r, "status": trace.status, **(meta or {})}
    out.write("# " + " ".join("{}={}".format(key, _meta_value(value)) for key, value in meta.items()) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for i, rec in enumerate(trace.records):
        writer.writerow(
            [
                _format(rec.k),
                _format(rec.a),
                _format(rec.A),
                _format(rec.lam),
                _format(rec.lam_hat),
                _format(rec.gamma),
                _format(f_values[i]),
                _format(rec.move_norm),
                _format(drops[i] if drops is not None else None),
                _format(bounds[i] if bounds is not None else None),
            ]
        )
    return out.getvalue()


def _meta_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value).replace(" ", "_")


class TraceTable(NamedTuple):
    """ A parsed trace CSV: its metadata and one float array per column (nan for empty cells) """

    meta: Dict[str, str]
    columns: Dict[str, np.ndarray]

    def meta_float(self, key: str) -> Optional[float]:
        value = self.meta.get(key)
        if value in (None, "", "None"):
            return None
        return float(value)


def read_trace_csv(text: str) -> TraceTable:
    """ Parses the output of trace_csv """
    lines = text.splitlines()
    if not lines or lines[0].strip() != SCHEMA_LINE:
        raise ValueError("not a v1 trace: missing schema line")
    meta: Dict[str, str] = {}
    body_start = 1
    while body_start < len(lines) and lines[body_start].startswith("#"):
        for token in lines[body_start][1:].split():
            key, _, value = token.partition("=")
            meta[key] = value
        body_start += 1
    reader = csv.reader(lines[body_start:])
    header = next(reader)
    if header != COLUMNS:
        raise ValueError("unexpected trace columns: {}".format(",".join(header)))
    rows = [row for row in reader if row]
    columns = {
        name: np.array([float(row[j]) if row[j] != "" else math.nan for row in rows]) for j, name in enumerate(COLUMNS)
    }
    return TraceTable(meta, columns)
