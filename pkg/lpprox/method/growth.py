""" Lower bounds on A_T for adaptive runs, reconstructed from the up/down pattern of the guesses """
from typing import List, NamedTuple

from .trace import RunTrace

GROWTH_TOL = 1e-9


class GrowthCertificate(NamedTuple):
    """
    `up` lists the up iterates (gamma_k = 1). The iterates split into S subsequences: d_i is the first
    index whose guess is charged to subsequence i and the r_i count half the iterations between the
    ends of consecutive runs of up iterates, so that sum r_i = (T - 1)/2
    """

    T: int
    A_root: float
    up: List[int]
    up_run_ends: List[int]
    d: List[int]
    r_split: List[float]
    up_bound: float
    theorem_bound: float

    @property
    def split_total_ok(self) -> bool:
        if self.T == 0:
            return True
        return abs(sum(self.r_split) - (self.T - 1) / 2.0) <= 1e-12 * max(1, self.T)

    @property
    def up_bound_holds(self) -> bool:
        """ A_T^{1/r} >= (C^{1/r}/r) sum_{k up} lam_hat_k^{1/r} """
        return self.A_root >= self.up_bound * (1.0 - GROWTH_TOL)

    @property
    def theorem_bound_holds(self) -> bool:
        """ A_T^{1/r} >= (C^{1/r}/(2r)) sum_i (alpha^{r_i - 2} lam_hat_{d_i})^{1/r} """
        return self.A_root >= self.theorem_bound * (1.0 - GROWTH_TOL)

    @property
    def passed(self) -> bool:
        return self.split_total_ok and self.up_bound_holds


def _run_ends(flags: List[bool]) -> List[int]:
    """ 1-based last indices of the maximal runs of True """
    return [k + 1 for k, flag in enumerate(flags) if flag and (k + 1 == len(flags) or not flags[k + 1])]


def certify_growth(trace: RunTrace) -> GrowthCertificate:
    """
    Reconstructs the up set, the subsequence boundaries and the split numbers of an adaptive run.
    With u_1 < ... < u_{S-1} the ends of the up runs, u_0 = 1 and u_S = T
    (an up run ending at T is the last one and adds no boundary): r_i = (u_i - u_{i-1})/2;
    d_1 = 1, d_{i+1} is the end of the down run following up run i, and d_S = T
    """
    records = [rec for rec in trace.records if rec.a > 0.0]
    T = len(records)
    r = trace.r
    alpha = trace.alpha if trace.alpha is not None else 1.0
    flags = [bool(rec.up) for rec in records]
    ends = _run_ends(flags)

    # an up run ending at T closes the last subsequence itself
    inner_ends = ends[:-1] if ends and ends[-1] == T else ends
    d = [1]
    for end in inner_ends:
        last = end
        while last < T and not flags[last]:
            last += 1
        d.append(last if last > end else T)

    boundaries = [1] + inner_ends + [T]
    r_split = [(boundaries[i + 1] - boundaries[i]) / 2.0 for i in range(len(boundaries) - 1)] if T else []

    A_root = trace.A ** (1.0 / r)
    c_root = trace.C ** (1.0 / r) if T else 0.0
    up = [rec.k for rec, flag in zip(records, flags) if flag]
    up_bound = c_root / r * sum(rec.lam_hat ** (1.0 / r) for rec, flag in zip(records, flags) if flag)
    theorem_bound = (
        c_root
        / (2.0 * r)
        * sum((alpha ** (ri - 2.0) * records[di - 1].lam_hat) ** (1.0 / r) for ri, di in zip(r_split, d))
    )
    return GrowthCertificate(T, A_root, up, ends, d, r_split, up_bound, theorem_bound)
