"""Nonnegative coefficient sequences and their generators.

A sequence is either dense (a float64 array indexed by n = 1..horizon) or
sparse (a sorted list of entries with ``ExtendedNonnegative`` values).
Sparse entries whose index exceeds 2^63 keep only log2(n), with the exact
integer dropped; consumers that need n itself must reject such entries.
For the doubly-exponential counterexample indices this log2 is exact,
since n is always a power of two.

Every consumer treats coefficients beyond the horizon as zero.  All
sequences are immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoefficientFileError, DomainError, ResourceLimitError
from .extnum import ExtendedNonnegative
from .sieve import MAX_SIEVE_N, von_mangoldt_table

# Indices above this are stored in log2 form only.
INDEX_EXACT_LIMIT = 1 << 63

MAX_COUNTEREXAMPLE_K = 40

# Largest power-of-two horizon materialized as a Python int (2^(2^25)
# is a 4 MB integer; 2^(2^26) and beyond stay in log2 form).
_MAX_INT_HORIZON_LOG2 = 1 << 25


@dataclass(frozen=True)
class SparseEntry:
    """One (n, a_n) pair; ``index`` is None when n > 2^63."""

    log2_index: float
    index: int | None
    value: ExtendedNonnegative

    def index_le(self, bound) -> bool:
        """Whether n <= bound, exact even when only log2(n) is stored."""
        bound = int(bound)
        if self.index is not None:
            return self.index <= bound
        if float(self.log2_index).is_integer():
            # n = 2^e with integer e: n <= bound iff e < bit_length(bound)
            return int(self.log2_index) <= bound.bit_length() - 1
        return self.log2_index <= math.log2(bound)


def _make_entry(index, value) -> SparseEntry:
    value = value if isinstance(value, ExtendedNonnegative) else ExtendedNonnegative(value)
    if isinstance(index, (int, np.integer)):
        index = int(index)
        if index < 1:
            raise ValueError(f"index must be >= 1, got {index}")
        if index > INDEX_EXACT_LIMIT:
            return SparseEntry(math.log2(index), None, value)
        return SparseEntry(math.log2(index), index, value)
    # log2-only index (beyond the exact range)
    return SparseEntry(float(index), None, value)


class CoefficientSequence:
    """Coefficients a_n >= 0 for n = 1..horizon, dense or sparse.

    ``horizon`` is an exact integer whenever it is representable in memory;
    for astronomically large sparse horizons it is None and only
    ``log2_horizon`` is kept.
    """

    __slots__ = ("horizon", "log2_horizon", "dense", "sparse", "rule")

    def __init__(self, *, horizon=None, log2_horizon=None, dense=None, sparse=None, rule=None):
        if (dense is None) == (sparse is None):
            raise ValueError("exactly one of dense/sparse must be given")
        if horizon is not None:
            horizon = int(horizon)
            if horizon < 1:
                raise ValueError("horizon must be >= 1")
            log2_horizon = math.log2(horizon)
        elif log2_horizon is None:
            raise ValueError("horizon or log2_horizon required")
        self.horizon = horizon
        self.log2_horizon = float(log2_horizon)
        self.rule = rule
        if dense is not None:
            if horizon is None:
                raise ValueError("dense sequences need an integer horizon")
            dense = np.ascontiguousarray(dense, dtype=np.float64)
            if dense.ndim != 1 or len(dense) != horizon:
                raise ValueError("dense array must have length == horizon")
            if len(dense) and float(dense.min()) < 0.0:
                bad = int(np.argmin(dense)) + 1
                raise ValueError(f"negative coefficient at n={bad}")
            dense.setflags(write=False)
            self.dense = dense
            self.sparse = None
        else:
            entries = list(sparse)
            prev = -math.inf
            for e in entries:
                if e.log2_index <= prev:
                    raise ValueError("sparse indices must be strictly increasing")
                prev = e.log2_index
            if entries and entries[-1].log2_index > self.log2_horizon:
                raise ValueError("sparse index beyond horizon")
            self.dense = None
            self.sparse = tuple(entries)

    # ------------------------------------------------------------------

    @property
    def is_dense(self) -> bool:
        return self.dense is not None

    def require_int_horizon(self) -> int:
        if self.horizon is None:
            raise ResourceLimitError("horizon exceeds integer representation")
        return self.horizon

    def log_horizon(self) -> float:
        """Natural log of the horizon."""
        return self.log2_horizon * math.log(2.0)

    def nonzero_count(self) -> int:
        if self.dense is not None:
            return int(np.count_nonzero(self.dense))
        return sum(1 for e in self.sparse if e.value > 0)

    def truncated(self, n_max: int) -> "CoefficientSequence":
        """The same sequence cut at horizon n_max."""
        n_max = int(n_max)
        if n_max < 1:
            raise ValueError("truncation horizon must be >= 1")
        if self.dense is not None:
            if n_max >= self.horizon:
                return self
            return CoefficientSequence(horizon=n_max, dense=self.dense[:n_max], rule=self.rule)
        if self.horizon is not None and n_max >= self.horizon:
            return self
        kept = [e for e in self.sparse if e.index_le(n_max)]
        return CoefficientSequence(horizon=n_max, sparse=kept, rule=self.rule)

    def to_dense_values(self) -> np.ndarray:
        """Materialize a_1..a_horizon as floats (sparse must fit memory)."""
        if self.dense is not None:
            return self.dense
        n = self.require_int_horizon()
        if n > MAX_SIEVE_N:
            raise ResourceLimitError("horizon too large to materialize densely")
        out = np.zeros(n, dtype=np.float64)
        for e in self.sparse:
            if e.index is None:
                raise ValueError("entry with log2-only index cannot be densified")
            out[e.index - 1] = float(e.value)
        return out

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else f"sparse[{len(self.sparse)}]"
        rule = f", rule={self.rule!r}" if self.rule else ""
        h = self.horizon if self.horizon is not None and self.log2_horizon < 64 \
            else f"2^{self.log2_horizon:g}"
        return f"CoefficientSequence({kind}, horizon={h}{rule})"


# -- generators ---------------------------------------------------------


def ones(n: int) -> CoefficientSequence:
    """a_n = 1 for n <= N."""
    if not 1 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"N must be within [1, {MAX_SIEVE_N}], got {n}")
    return CoefficientSequence(horizon=n, dense=np.ones(n), rule="ones")


def von_mangoldt(n: int) -> CoefficientSequence:
    """a_k = log p when k = p^alpha, else 0, for k <= N."""
    if not 1 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"N must be within [1, {MAX_SIEVE_N}], got {n}")
    return CoefficientSequence(horizon=n, dense=von_mangoldt_table(n)[1:], rule="von_mangoldt")


def twin_weights(n: int) -> CoefficientSequence:
    """a_k = Lambda(k) * Lambda(k+2) for k <= N (needs the table up to N+2)."""
    if not 1 <= n <= MAX_SIEVE_N:
        raise ResourceLimitError(f"N must be within [1, {MAX_SIEVE_N}], got {n}")
    lam = von_mangoldt_table(n + 2)
    return CoefficientSequence(horizon=n, dense=lam[1: n + 1] * lam[3: n + 3], rule="twin_weights")


def counterexample(k_max: int) -> CoefficientSequence:
    """The sharpness witness: a_n = 2^(2^k + k) at n = 2^(2^k), k = 1..k_max.

    Values stay exact integers through k = 6 (2^70) and promote to the
    log2 domain from k = 7 on (2^135 exceeds the exact range).  Indices
    beyond 2^63 keep only log2(n), which is exact here (n is a power of
    two).  k_max is explicit and recorded in the rule label.
    """
    if not 1 <= k_max <= MAX_COUNTEREXAMPLE_K:
        raise DomainError(f"k_max must be within [1, {MAX_COUNTEREXAMPLE_K}], got {k_max}")
    entries = []
    for k in range(1, k_max + 1):
        e_index = 1 << k          # log2 n = 2^k
        e_value = (1 << k) + k    # log2 a = 2^k + k
        index = (1 << e_index) if e_index <= 63 else float(e_index)
        if e_value <= 120:
            value = ExtendedNonnegative(1 << e_value)
        else:
            value = ExtendedNonnegative.from_log2(float(e_value))
        entries.append(_make_entry(index, value))
    top = 1 << k_max
    rule = f"counterexample(k_max={k_max})"
    if top <= _MAX_INT_HORIZON_LOG2:
        return CoefficientSequence(horizon=1 << top, sparse=entries, rule=rule)
    return CoefficientSequence(log2_horizon=float(top), sparse=entries, rule=rule)


def counterexample_delta_f(delta: float, rel_tail: float = 1e-18):
    """delta * f(1 + delta) for the counterexample rule, adaptively truncated.

    Sums h(k) = 2^(k - delta*2^k) for k = 1, 2, ... until past the peak and
    the next term falls below rel_tail of the running sum.  Returns
    (delta * f, k_used, last_term).
    """
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)")
    total = 0.0
    k = 0
    while True:
        k += 1
        exponent = k - delta * math.ldexp(1.0, k)
        term = 2.0 ** exponent if exponent > -1070.0 else 0.0
        total += term
        past_peak = delta * math.ldexp(1.0, k) * math.log(2.0) > 1.0
        if past_peak and term < rel_tail * total:
            break
        if k > 200:
            raise RuntimeError("counterexample tail failed to converge")
    return delta * total, k, term


# -- file format ---------------------------------------------------------


def load_coefficients(path) -> CoefficientSequence:
    """Parse the sparse 'index value' text format.

    One pair per line, whitespace-separated; indices strictly increasing;
    values nonnegative decimals or '2^E' tokens; '#' starts a comment line.
    """
    entries = []
    prev_log2 = -math.inf
    last_index = 0
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise CoefficientFileError("expected 'index value'", line_number)
            try:
                index = int(parts[0])
            except ValueError:
                raise CoefficientFileError(f"bad index {parts[0]!r}", line_number) from None
            if index < 1:
                raise CoefficientFileError(f"index must be >= 1, got {index}", line_number)
            try:
                value = ExtendedNonnegative.from_text(parts[1])
            except (ValueError, OverflowError):
                raise CoefficientFileError(f"bad value {parts[1]!r}", line_number) from None
            entry = _make_entry(index, value)
            if entry.log2_index <= prev_log2:
                raise CoefficientFileError(f"index {index} not increasing", line_number)
            prev_log2 = entry.log2_index
            last_index = index
            entries.append(entry)
    if not entries:
        raise CoefficientFileError("no coefficient lines found")
    return CoefficientSequence(horizon=last_index, sparse=entries, rule=f"file:{path}")


def save_coefficients(seq: CoefficientSequence, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        if seq.dense is not None:
            for i, v in enumerate(seq.dense, 1):
                if v != 0.0:
                    handle.write(f"{i} {format(v, '.17g')}\n")
        else:
            for e in seq.sparse:
                if e.index is not None:
                    idx = e.index
                elif float(e.log2_index).is_integer() and e.log2_index <= _MAX_INT_HORIZON_LOG2:
                    idx = 1 << int(e.log2_index)
                else:
                    raise ResourceLimitError("index too large to write in decimal")
                handle.write(f"{idx} {e.value.to_text()}\n")
