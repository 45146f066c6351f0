"""Prime sieving and the von Mangoldt weight table.

The weight table marks log p at every prime power p^alpha <= N: primes get
their logs in one vectorized store, higher powers in a short explicit loop
over p <= sqrt(N).  Total work is O(N log log N) and the natural log is
taken once per prime, never per multiple.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ResourceLimitError

# Memory guard: a 10^8 table is ~900 MB of float64 plus the sieve itself.
MAX_SIEVE_N = 10 ** 8


def _check_range(n: int, what: str) -> None:
    if not 1 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"{what} must be within [1, {MAX_SIEVE_N}], got {n}")


def prime_mask(n: int) -> np.ndarray:
    """Boolean array of length n+1; mask[k] is True iff k is prime."""
    _check_range(n, "sieve limit")
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return mask


def primes_up_to(n: int) -> np.ndarray:
    return np.nonzero(prime_mask(n))[0]


def von_mangoldt_table(n: int) -> np.ndarray:
    """Array lam of length n+1 with lam[k] = log p if k = p^alpha, else 0."""
    _check_range(n, "table limit")
    mask = prime_mask(n)
    lam = np.zeros(n + 1, dtype=np.float64)
    primes = np.nonzero(mask)[0]
    lam[primes] = np.log(primes)
    for p in primes[primes <= math.isqrt(n)]:
        logp = math.log(p)
        q = int(p) * int(p)
        while q <= n:
            lam[q] = logp
            q *= int(p)
    return lam
