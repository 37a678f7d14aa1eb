""" Plain-text record of a resisting-oracle run: one `t i_t xi_t` line per reveal plus a query-point CSV """
import csv
import io
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from lpprox.errors import DeterminismError

from .instance import HardInstance, Reveal

HEADER_PREFIX = "# hard-instance"


def format_transcript(inst: HardInstance) -> str:
    params = inst.params
    p = "inf" if math.isinf(params.p) else repr(params.p)
    lines = [
        "{} k={} p={} q={} d={} default_sign={}".format(HEADER_PREFIX, params.k, p, params.q, params.d, inst.default_sign)
    ]
    lines.extend("{} {} {}".format(rev.t, rev.index, rev.sign) for rev in inst.reveals)
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> Tuple[Dict[str, str], List[Reveal]]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith(HEADER_PREFIX):
        raise ValueError("not a hard-instance transcript")
    meta = dict(token.split("=", 1) for token in lines[0][len(HEADER_PREFIX) :].split())
    reveals = []
    for line in lines[1:]:
        t, index, sign = line.split()
        reveals.append(Reveal(int(t), int(index), int(sign)))
    return meta, reveals


def instance_from_meta(meta: Dict[str, str]) -> HardInstance:
    """ A fresh instance with the parameters a transcript was recorded under """
    return HardInstance(
        int(meta["k"]), float(meta["p"]), int(meta["q"]), d=int(meta["d"]), default_sign=int(meta["default_sign"])
    )


def query_points_csv(points: Sequence[np.ndarray]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    dim = len(points[0]) if len(points) else 0
    writer.writerow(["t"] + ["x{}".format(i + 1) for i in range(dim)])
    for t, point in enumerate(points):
        writer.writerow([t] + [repr(float(v)) for v in point])
    return out.getvalue()


def read_query_points_csv(text: str) -> List[np.ndarray]:
    reader = csv.reader(io.StringIO(text))
    next(reader)
    return [np.array([float(v) for v in row[1:]]) for row in reader if row]


def verify_transcript(text: str, points: Sequence[np.ndarray]) -> HardInstance:
    """
    Replays the query points against a fresh instance and checks every reveal is reproduced exactly

    :raises DeterminismError: on the first reveal that differs
    """
    meta, reveals = parse_transcript(text)
    inst = instance_from_meta(meta)
    if len(points) < len(reveals):
        raise DeterminismError("fewer query points than reveals", points=len(points), reveals=len(reveals))
    for expected, point in zip(reveals, points):
        got = inst.reveal(point)
        if got != expected:
            raise DeterminismError("replayed reveal differs", t=expected.t, expected=expected, got=got)
    return inst
