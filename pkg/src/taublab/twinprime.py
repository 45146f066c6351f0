"""Twin-prime counts, the prime-pair constant, and comparison ratios.

pi2 counts pairs (p, p+2) with p <= N.  psi2 is the weighted count
sum_{n<=N} Lambda(n) Lambda(n+2); prime-power contributions (n = p^alpha,
alpha >= 2) are included exactly as the weights dictate.  The pair
constant is the Euler product over odd primes of 1 - 1/(p-1)^2,
accumulated in log space, with a rigorous reported tail bound
sum_{p>P} -ln(1 - 1/(p-1)^2) <= 2/(P-1).  The comparison integral
li2(N) = int_2^N dt / ln^2 t uses natural logs, matching the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .errors import DomainError, ResourceLimitError
from .quad import adaptive_simpson
from .sequences import twin_weights
from .series import EvalResult, eval_f, eval_q, require_x_gt_1
from .sieve import MAX_SIEVE_N, prime_mask

# below this N, asymptotic comparisons are vacuous and reports say so
SMALL_N = 100


def pi2(n: int) -> int:
    """Number of primes p <= N with p + 2 also prime."""
    n = int(n)
    if not 2 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"N must be within [2, {MAX_SIEVE_N}], got {n}")
    mask = prime_mask(n + 2)
    return int(np.count_nonzero(mask[: n + 1] & mask[2: n + 3]))


def psi2(n: int) -> float:
    """sum_{k <= N} Lambda(k) Lambda(k+2), compensated summation."""
    n = int(n)
    if not 1 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"N must be within [1, {MAX_SIEVE_N}], got {n}")
    return fsum(twin_weights(n).dense)


@dataclass(frozen=True)
class PairConstant:
    """Truncated Euler product with its tail bound."""

    value: float
    truncation_prime: int
    tail_bound: float   # bound on -ln of the missing factors; value can
                        # drop by at most this fraction as P grows


def twin_prime_constant(p_limit: int) -> PairConstant:
    """prod_{2 < p <= P} (1 - 1/(p-1)^2), in log space, with tail bound."""
    p_limit = int(p_limit)
    if p_limit < 3:
        raise DomainError(f"P must be >= 3, got {p_limit}")
    if p_limit > MAX_SIEVE_N:
        raise ResourceLimitError(f"P must be <= {MAX_SIEVE_N}, got {p_limit}")
    ps = np.nonzero(prime_mask(p_limit))[0]
    ps = ps[ps > 2].astype(np.float64)
    log_product = fsum(np.log1p(-1.0 / (ps - 1.0) ** 2)) if len(ps) else 0.0
    tail = 2.0 / (p_limit - 1.0)
    return PairConstant(math.exp(log_product), p_limit, tail)


def li2(n: int, tol: float = 1e-9) -> float:
    """int_2^N dt / ln^2 t by adaptive Simpson at absolute tolerance tol."""
    n = int(n)
    if n == 2:
        return 0.0
    if n < 3:
        raise DomainError(f"N must be >= 3 (or exactly 2), got {n}")
    return adaptive_simpson(lambda t: 1.0 / math.log(t) ** 2, 2.0, float(n), tol)


def d2_eval(z: complex, n: int) -> EvalResult:
    """The weighted pair Dirichlet sum sum Lambda(k)Lambda(k+2) k^(-z)."""
    z = require_x_gt_1(z)
    return eval_f(twin_weights(n), z)


def d2_quotient(z: complex, n: int) -> EvalResult:
    """d2 divided by z, the form scanned by the boundary diagnostics."""
    z = require_x_gt_1(z)
    return eval_q(twin_weights(n), z)


@dataclass(frozen=True)
class TwinPrimeReport:
    """Counts, constant, integral, and the two comparison ratios at one N."""

    n: int
    pi2: int
    psi2: float
    c2: float
    c2_truncation_prime: int
    c2_tail_bound: float
    li2: float
    ratio_pi: float    # pi2 / (2 C2 li2)
    ratio_psi: float   # psi2 / (2 C2 N)
    small_n: bool

    def to_json_obj(self):
        return {
            "N": self.n,
            "pi2": self.pi2,
            "psi2": self.psi2,
            "C2": self.c2,
            "C2_truncation_prime": self.c2_truncation_prime,
            "C2_tail_bound": self.c2_tail_bound,
            "li2": self.li2,
            "ratio_pi": self.ratio_pi,
            "ratio_psi": self.ratio_psi,
            "small_N": self.small_n,
        }


def report(n: int, p_limit: int) -> TwinPrimeReport:
    """Assemble all pair-count quantities and their comparison ratios.

    Reports at N < 100 carry a small-N flag instead of failing tolerance:
    asymptotic statements say nothing at that scale.
    """
    n = int(n)
    count = pi2(n)
    weighted = psi2(n)
    constant = twin_prime_constant(p_limit)
    integral = li2(n) if n >= 3 else 0.0
    denom_pi = 2.0 * constant.value * integral
    ratio_pi = count / denom_pi if denom_pi > 0 else math.inf
    ratio_psi = weighted / (2.0 * constant.value * n)
    return TwinPrimeReport(n, count, weighted, constant.value, constant.truncation_prime,
                           constant.tail_bound, integral, ratio_pi, ratio_psi, n < SMALL_N)
