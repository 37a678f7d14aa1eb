"""
Deterministic algorithms driven by the resisting oracle. Every distinct point an algorithm evaluates is
one local-oracle query; the run stops once k points have been queried
"""
import abc
import math
from typing import Dict, List, NamedTuple, Optional

import numpy as np

from lpprox.errors import BudgetExhausted, DeterminismError
from lpprox.geometry import Geometry, dual_map_direction
from lpprox.logger import logger
from lpprox.method import highorder_solve
from lpprox.problem import HolderData, ProblemHandle

from .gap import LowerBoundReport, gap_experiment
from .instance import HardInstance, LocalAnswer
from .softmax import softmax_lq

log = logger.with_namespace("adapter")


class QueryRecorder:
    """ Caches answers per point so that a value and a gradient at the same point cost one query """

    def __init__(self, inst: HardInstance):
        self.inst = inst
        self.points: List[np.ndarray] = []
        self._answers: Dict[bytes, LocalAnswer] = {}

    def answer(self, x) -> LocalAnswer:
        x = np.array(x, dtype=float)
        key = x.tobytes()
        if key not in self._answers:
            if len(self.points) >= self.inst.k:
                raise BudgetExhausted("adapter used its query budget", k=self.inst.k)
            self._answers[key] = self.inst.query(x)
            self.points.append(x)
        return self._answers[key]

    def pad(self):
        """ Repeats the last point until k queries were made, so the instance ends fully revealed """
        last = self.points[-1] if self.points else np.zeros(self.inst.d)
        while len(self.points) < self.inst.k:
            self.inst.query(last)
            self.points.append(last.copy())

    def handle(self, geometry: Optional[Geometry] = None) -> ProblemHandle:
        """ The instance as a first-order problem with the softmax derivative bound as its Holder constant """
        return ProblemHandle(
            name="hard-instance",
            geometry=self.inst.geometry if geometry is None else geometry,
            holder=HolderData(L=softmax_lq(1, self.inst.params.mu), nu=1.0, q=1),
            x0=np.zeros(self.inst.d),
            value_fn=lambda x: self.answer(x).value,
            gradient_fn=lambda x: self.answer(x).gradient,
        )


class LowerBoundAdapter(abc.ABC):
    name = "abstract"

    @abc.abstractmethod
    def drive(self, recorder: QueryRecorder):
        """ Runs the algorithm, querying only through `recorder` """

    def run(self, inst: HardInstance) -> List[np.ndarray]:
        """ Drives the algorithm until it used k queries and returns the k query points """
        recorder = QueryRecorder(inst)
        try:
            self.drive(recorder)
        except BudgetExhausted:
            pass
        if len(recorder.points) < inst.k:
            log.debug("algorithm stopped early, padding queries", adapter=self.name, queries=len(recorder.points))
            recorder.pad()
        return recorder.points


class SubgradientAdapter(LowerBoundAdapter):
    """ Normalized subgradient descent x_{t+1} = x_t - (R/sqrt(t+1)) u_t with ||u_t||_p = 1, <g_t, u_t> = ||g_t||_* """

    name = "subgradient"

    def __init__(self, radius: float = 1.0):
        self.radius = radius

    def drive(self, recorder: QueryRecorder):
        x = np.zeros(recorder.inst.d)
        for t in range(recorder.inst.k):
            g = recorder.answer(x).gradient
            x = x - self.radius / math.sqrt(t + 1.0) * dual_map_direction(g, recorder.inst.geometry)


class AccelAdapter(LowerBoundAdapter):
    """
    The accelerated method with a first-order Taylor oracle, in the instance's geometry when 1 < p < inf
    and in l2 otherwise. Oracle answers are not audited since h is not globally smooth
    """

    name = "accel"

    def __init__(self, radius: float = 1.0):
        self.radius = radius

    def drive(self, recorder: QueryRecorder):
        geometry = recorder.inst.geometry
        if not geometry.is_smooth:
            geometry = Geometry.from_p(2)
        highorder_solve(recorder.handle(geometry), recorder.inst.k, R=self.radius, certify=False)


ADAPTERS = {adapter.name: adapter for adapter in (SubgradientAdapter, AccelAdapter)}


class LowerBoundRun(NamedTuple):
    instance: HardInstance
    points: List[np.ndarray]
    report: LowerBoundReport


def replay(adapter: LowerBoundAdapter, k: int, p: float, q: int = 1) -> LowerBoundRun:
    """
    Runs the adapter against two fresh instances whose unrevealed slots default to opposite signs. An
    algorithm that only uses the answers it was given produces bit-identical transcripts

    :raises DeterminismError: when the two runs differ
    """
    first = HardInstance(k, p, q, default_sign=1)
    second = HardInstance(k, p, q, default_sign=-1)
    points = adapter.run(first)
    other = adapter.run(second)
    if first.reveals != second.reveals:
        raise DeterminismError("reveals differ between replays", adapter=adapter.name)
    for t, (a, b) in enumerate(zip(points, other)):
        if a.tobytes() != b.tobytes():
            raise DeterminismError("query points differ between replays", adapter=adapter.name, t=t)
    return LowerBoundRun(first, points, gap_experiment(first, points))
