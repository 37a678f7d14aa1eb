"""
The hard function family behind the oracle lower bound. Slot j = 1..k holds a basis vector v_{i_j} and a
sign xi_j; f_i(x) = smax over the first i slots of (xi_j <v_{i_j}, x> + (k - j) gamma) plus
mu (k + 1 - i) d^{-alpha}, and h = max_i f_i. A resisting oracle fixes slot t + 1 while answering query t,
choosing the unused basis vector most correlated with the query. Slots not yet fixed are filled with the
lowest unused basis indices and the default sign, which the answers never depend on
"""
import math
from typing import List, NamedTuple, Optional

import numpy as np

from lpprox.errors import BudgetExhausted
from lpprox.geometry import Geometry
from lpprox.logger import logger

from .hadamard import hadamard_basis, hadamard_dimension
from .softmax import prefix_smax, smax_grad, softmax_lq

log = logger.with_namespace("hard")


class HardParameters(NamedTuple):
    """ Budget k, geometry exponents, dimension d and the scales gamma, alpha, beta, mu of one instance """

    k: int
    p: float
    q: int
    m: float
    d: int
    gamma: float
    alpha: float
    beta: float
    mu: float

    @property
    def separation_slack(self) -> float:
        """ gamma - mu (ln k + alpha ln d) - 2 beta, non-negative for a valid instance """
        return self.gamma - self.mu * (math.log(self.k) + self.alpha * math.log(self.d)) - 2.0 * self.beta

    @property
    def hadamard(self) -> bool:
        return self.p < 2.0

    @property
    def smoothing_radius(self) -> float:
        """ (1 - 2^{-q}) beta, the radius of the composed smoothing's support """
        return (1.0 - 2.0 ** -self.q) * self.beta


def hard_parameters(k: int, p: float, q: int = 1, d: Optional[int] = None) -> HardParameters:
    """
    Picks the smallest admissible dimension (or validates the given one) and the largest admissible gamma.
    For 1 <= p < 2 the dimension is fixed by the Hadamard construction

    :param k: the query budget, k >= 3 so that ln k >= 1
    """
    if k < 3:
        raise ValueError("the hard instance needs k >= 3")
    if q < 1:
        raise ValueError("derivative order must be at least 1")
    p = float(p)
    if p < 1.0:
        raise ValueError("exponent must lie in [1, inf]")
    if math.isinf(p):
        m = math.inf
        min_d = 8 * k
        gamma = 1.0 / (4.0 * k)
        alpha = q + 1.0
    else:
        m = max(2.0, p)
        min_d = math.ceil(8.0 * k ** (1.0 + 1.0 / m) - 1e-9)
        gamma = 1.0 / (4.0 * k ** (1.0 + 1.0 / m))
        alpha = q + m / (m + 1.0)
    if p < 2.0 and d is None:
        d = hadamard_dimension(k)
    if d is None:
        d = int(min_d)
    if d < min_d:
        raise ValueError("dimension {} is below the minimum {} for k={}".format(d, min_d, k))
    beta = gamma / math.log(d)
    mu = gamma / (4.0 * alpha * math.log(d))
    params = HardParameters(k, p, q, m, int(d), gamma, alpha, beta, mu)
    if params.separation_slack < 0.0:
        raise ValueError("instance violates the separation condition (slack {:.3g})".format(params.separation_slack))
    return params


class Reveal(NamedTuple):
    """ Query t fixed slot t + 1 to basis index `index` with sign `sign` """

    t: int
    index: int
    sign: int


class LocalAnswer(NamedTuple):
    """ h and a subgradient at the query point; `active` is the 1-based i with h = f_i """

    point: np.ndarray
    value: float
    gradient: np.ndarray
    active: int
    t: Optional[int]


class HardInstance:
    """ One hard function with its append-only reveal history """

    def __init__(self, k: int, p: float, q: int = 1, d: Optional[int] = None, strict: bool = False, default_sign: int = 1):
        self.params = hard_parameters(k, p, q, d)
        self.geometry = Geometry.from_p(p)
        if self.params.hadamard:
            _, self.basis = hadamard_basis(k, p)
            if self.basis.shape[0] != self.params.d:
                raise ValueError("the Hadamard branch fixes d = {}".format(self.basis.shape[0]))
        else:
            self.basis = np.eye(self.params.d)
        self.strict = strict
        if default_sign not in (-1, 1):
            raise ValueError("default sign must be +1 or -1")
        self.default_sign = default_sign
        self.reveals: List[Reveal] = []

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def queries(self) -> int:
        return len(self.reveals)

    @property
    def frozen(self) -> bool:
        return self.queries >= self.k

    def slot_indices(self) -> np.ndarray:
        """ Basis indices of slots 1..k: the revealed ones, then the lowest unused indices """
        used = [rev.index for rev in self.reveals]
        taken = set(used)
        fill = [i for i in range(self.d) if i not in taken][: self.k - len(used)]
        return np.array(used + fill, dtype=int)

    def slot_signs(self) -> np.ndarray:
        signs = [rev.sign for rev in self.reveals]
        return np.array(signs + [self.default_sign] * (self.k - len(signs)), dtype=float)

    def _slot_vectors(self) -> np.ndarray:
        """ The d x k matrix whose column j is xi_j v_{i_j} """
        return self.basis[:, self.slot_indices()] * self.slot_signs()

    def slot_values(self, x) -> np.ndarray:
        """ (xi_j <v_{i_j}, x> + (k - j) gamma)_{j=1..k} """
        x = np.asarray(x, dtype=float)
        offsets = (self.k - np.arange(1, self.k + 1)) * self.params.gamma
        return self._slot_vectors().T @ x + offsets

    def f_values(self, x) -> np.ndarray:
        """ (f_i(x))_{i=1..k} """
        params = self.params
        levels = np.arange(1, self.k + 1)
        return prefix_smax(self.slot_values(x), params.mu) + params.mu * (self.k + 1 - levels) * params.d ** -params.alpha

    def h(self, x) -> float:
        return float(np.max(self.f_values(x)))

    def evaluate(self, x) -> LocalAnswer:
        """ h(x) and the gradient of the lowest active f_i, without revealing anything """
        x = np.asarray(x, dtype=float)
        values = self.f_values(x)
        i = int(np.argmax(values)) + 1
        weights = smax_grad(self.slot_values(x)[:i], self.params.mu)
        gradient = self._slot_vectors()[:, :i] @ weights
        return LocalAnswer(x, float(values[i - 1]), gradient, i, None)

    def reveal(self, x) -> Reveal:
        """ Fixes the next slot from the query x: the unused index maximizing |<v_i, x>|, lowest on ties """
        x = np.asarray(x, dtype=float)
        correlations = self.basis.T @ x
        used = np.zeros(self.d, dtype=bool)
        used[np.array([rev.index for rev in self.reveals], dtype=int)] = True
        magnitude = np.where(used, -np.inf, np.abs(correlations))
        index = int(np.argmax(magnitude))
        sign = -1 if correlations[index] < 0.0 else 1
        rev = Reveal(self.queries, index, sign)
        self.reveals.append(rev)
        log.verbose("revealed slot", t=rev.t, index=index, sign=sign)
        return rev

    def query(self, x) -> LocalAnswer:
        """
        The resisting local oracle. Before the budget is spent each query fixes one slot; afterwards the
        instance is frozen and queries are answered with every slot fixed, or refused in strict mode
        """
        if self.frozen:
            if self.strict:
                raise BudgetExhausted("hard instance queried past its budget", k=self.k)
            return self.evaluate(x)
        rev = self.reveal(x)
        return self.evaluate(x)._replace(t=rev.t)

    def x_star(self) -> np.ndarray:
        """
        A point of the unit l_p ball where every f_i is small: -k^{-1/p} sum_j xi_j e_{i_j} for p >= 2 (all
        ones for p = inf) and, for the Hadamard branch, -u/||u||_p with u = sum_j xi_j v_{i_j}
        """
        p = self.params.p
        u = self._slot_vectors().sum(axis=1)
        if self.params.hadamard:
            return -u / self.geometry.norm(u)
        if math.isinf(p):
            return -u
        return -(self.k ** (-1.0 / p)) * u

    def lq_estimate(self) -> float:
        """ The softmax bound on the Lipschitz constant of the q-th derivative of each f_i """
        return softmax_lq(self.params.q, self.params.mu)


def hard_f_i(inst: HardInstance, i: int, x) -> float:
    if not 1 <= i <= inst.k:
        raise ValueError("f_i is defined for 1 <= i <= k")
    return float(inst.f_values(x)[i - 1])


def hard_h(inst: HardInstance, x) -> float:
    return inst.h(x)


def resisting_oracle(inst: HardInstance, x) -> LocalAnswer:
    return inst.query(x)
