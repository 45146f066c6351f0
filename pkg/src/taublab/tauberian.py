"""Partial sums, normalized growth, and the log-order bound chain.

The chain sigma_N <= e f_N(1 + 1/ln N) and s_N <= N sigma_N is a theorem
for nonnegative coefficients; ``log_bound_check`` evaluates both sides and
must report holds=True for every valid input (a 1e-12 relative slack
absorbs float rounding at the equality cases).  ``sharpness_check``
verifies the matching lower bound s_N >= N ln N / ln 2 at N = 2^(2^k) in
exact integer arithmetic through k = 6, and in the log2 domain beyond.

"log" means the natural logarithm throughout, with the explicit 1/log 2
conversion where the doubly-exponential witness requires it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .errors import DomainError
from .extnum import ExtendedNonnegative
from .sequences import CoefficientSequence, MAX_COUNTEREXAMPLE_K
from .series import eval_f

# multiplicative slack absorbing float rounding in theorem checks
_ROUND_SLACK = 1.0 + 1e-12


@dataclass(frozen=True)
class PartialSumTable:
    """Checkpointed s(N), s(N)/N, and the running sup of the ratio."""

    checkpoints: tuple
    sums: tuple          # ExtendedNonnegative per checkpoint
    ratios: tuple        # float s(N)/N
    running_sup: tuple   # prefix max of ratios

    @property
    def final_sup(self) -> float:
        return self.running_sup[-1] if self.running_sup else 0.0

    def __len__(self) -> int:
        return len(self.checkpoints)


def partial_sums(seq: CoefficientSequence, checkpoints) -> PartialSumTable:
    """Exact prefix sums at each checkpoint (log2-domain once too large)."""
    cps = [int(c) for c in checkpoints]
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    if not cps:
        return PartialSumTable((), (), (), ())
    if cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if seq.horizon is not None and cps[-1] > seq.horizon:
        raise ValueError(f"checkpoint {cps[-1]} beyond horizon {seq.horizon}")
    if seq.horizon is None and math.log2(cps[-1]) > seq.log2_horizon:
        raise ValueError("checkpoint beyond horizon")

    sums = []
    if seq.dense is not None:
        for c in cps:
            # fsum per checkpoint: correctly rounded, no drift across checkpoints
            sums.append(ExtendedNonnegative(fsum(seq.dense[:c])))
    else:
        for c in cps:
            acc = ExtendedNonnegative(0)
            for e in seq.sparse:
                if e.index_le(c):
                    acc = acc + e.value
                else:
                    break
            sums.append(acc)
    ratios = [s.divide_by(c) for s, c in zip(sums, cps)]
    sup = []
    best = -math.inf
    for r in ratios:
        best = max(best, r)
        sup.append(best)
    return PartialSumTable(tuple(cps), tuple(sums), tuple(ratios), tuple(sup))


def default_checkpoints(horizon: int, ratio: float = 1.25) -> list:
    """Geometric grid floor(ratio^j) plus the doubly-exponential indices.

    Log-spaced sampling for log-scale phenomena; the witness sequence acts
    only at n = 2^(2^k), so those indices are always included.
    """
    horizon = int(horizon)
    cap = min(horizon, 10 ** 8)
    grid = set()
    v = 1.0
    while v <= cap:
        grid.add(int(v))
        v *= ratio
    k = 1
    while k <= 25 and (1 << (1 << k)) <= horizon:
        grid.add(1 << (1 << k))
        k += 1
    return sorted(grid)


@dataclass(frozen=True)
class StepValue:
    """Value of the normalized partial-sum step function at one t."""

    value: float
    tail: bool   # True when e^t runs past the horizon and s is frozen


def S_of_t(seq: CoefficientSequence, t: float) -> StepValue:
    """e^(-t) s(floor(e^t)); zero for t < 0 (s vanishes below 1)."""
    t = float(t)
    if t < 0.0:
        return StepValue(0.0, False)
    past_horizon = t >= seq.log_horizon()
    if past_horizon:
        # every coefficient counts; s stays frozen from here on
        tail = t > (math.log(seq.horizon + 1) if seq.horizon is not None else t)
        if seq.dense is not None:
            s = fsum(seq.dense)
        else:
            acc = ExtendedNonnegative(0)
            for e in seq.sparse:
                acc = acc + e.value
            s = acc
    else:
        tail = False
        v = math.exp(t)
        n = int(v)
        # snap up when v sits a few ulps below an integer (t = ln N exactly)
        if (n + 1) - v <= 4 * math.ulp(v):
            n += 1
        if seq.dense is not None:
            s = fsum(seq.dense[: min(n, seq.horizon)])
        else:
            acc = ExtendedNonnegative(0)
            for e in seq.sparse:
                if e.index_le(n):
                    acc = acc + e.value
                else:
                    break
            s = acc
    if isinstance(s, ExtendedNonnegative):
        exponent = s.log2 - t / math.log(2.0)
        return StepValue(2.0 ** exponent if exponent > -1070.0 else 0.0, tail)
    return StepValue(s * math.exp(-t), tail)


@dataclass(frozen=True)
class LogBoundReport:
    """Both sides of the order-log(N) chain at one N."""

    n: int
    x_n: float
    sigma_n: float
    f_at_xn: float
    s_n: float
    holds: bool

    def to_json_obj(self):
        return {
            "N": self.n,
            "x_N": self.x_n,
            "sigma_N": self.sigma_n,
            "f_at_xN": self.f_at_xn,
            "s_N": self.s_n,
            "holds": self.holds,
        }


def log_bound_check(seq: CoefficientSequence, n: int) -> LogBoundReport:
    """Check sigma_N <= e f_N(1 + 1/ln N) and s_N <= N sigma_N.

    Both inequalities are theorems for a_n >= 0, so holds must come back
    True; the slack only covers rounding at exact-equality inputs.
    """
    n = int(n)
    if n < 3:
        raise DomainError(f"N must be >= 3 so that ln N > 1, got {n}")
    if seq.horizon is not None and n > seq.horizon:
        raise DomainError(f"N={n} beyond horizon {seq.horizon}")
    trunc = seq.truncated(n)
    x_n = 1.0 + 1.0 / math.log(n)
    if trunc.dense is not None:
        support = np.nonzero(trunc.dense)[0]
        enn = np.arange(1, trunc.horizon + 1, dtype=np.float64)[support]
        sigma = fsum(trunc.dense[support] / enn)
        s_n = fsum(trunc.dense[support])
    else:
        sigma = fsum(2.0 ** (e.value.log2 - e.log2_index) for e in trunc.sparse)
        acc = ExtendedNonnegative(0)
        for e in trunc.sparse:
            acc = acc + e.value
        s_n = float(acc)
    f_val = eval_f(trunc, complex(x_n, 0.0)).value.real
    holds = (sigma <= math.e * f_val * _ROUND_SLACK + 1e-300) and \
            (s_n <= n * sigma * _ROUND_SLACK + 1e-300)
    return LogBoundReport(n, x_n, sigma, f_val, s_n, holds)


@dataclass(frozen=True)
class SharpnessReport:
    """Lower-bound witness at N = 2^(2^k)."""

    k: int
    n: int | None            # None once N exceeds 2^63
    log2_n: float
    s_n: ExtendedNonnegative
    lower_bound: ExtendedNonnegative
    ratio: float
    exact: bool
    holds: bool

    def to_json_obj(self):
        return {
            "k": self.k,
            "N": self.n if self.n is not None else f"2^{self.log2_n:g}",
            "s_N": self.s_n.to_json_obj(),
            "bound": self.lower_bound.to_json_obj(),
            "ratio": self.ratio,
            "exact": self.exact,
            "holds": self.holds,
        }


def sharpness_check(k: int) -> SharpnessReport:
    """s_N >= N ln N / ln 2 at N = 2^(2^k); exact integers through k = 6.

    The bound equals N * 2^k there, and the top coefficient alone attains
    it, so holds is True by construction; the report carries the measured
    ratio s_N / bound.
    """
    k = int(k)
    if not 1 <= k <= MAX_COUNTEREXAMPLE_K:
        raise DomainError(f"k must be within [1, {MAX_COUNTEREXAMPLE_K}], got {k}")
    exact = k <= 6
    if exact:
        n_exact = 1 << (1 << k)
        s = sum(1 << ((1 << j) + j) for j in range(1, k + 1))
        bound = n_exact * (1 << k)   # N * 2^k = N ln N / ln 2 exactly
        s_enn = ExtendedNonnegative(s)
        bound_enn = ExtendedNonnegative(bound)
        ratio = s_enn.divide_by(bound)
        holds = s >= bound
        n_field = n_exact if n_exact <= (1 << 63) else None
        return SharpnessReport(k, n_field, float(1 << k), s_enn, bound_enn, ratio, True, holds)
    s_enn = ExtendedNonnegative(0)
    for j in range(1, k + 1):
        e = (1 << j) + j
        s_enn = s_enn + (ExtendedNonnegative(1 << e) if e <= 120
                         else ExtendedNonnegative.from_log2(float(e)))
    bound_enn = ExtendedNonnegative.from_log2(float((1 << k) + k))
    ratio = 2.0 ** (s_enn.log2 - bound_enn.log2)
    holds = s_enn.log2 >= bound_enn.log2
    return SharpnessReport(k, None, float(1 << k), s_enn, bound_enn, ratio, False, holds)
