"""Overflow-safe nonnegative magnitudes.

Values such as 2^(2^k + k) quickly leave the range of both 64-bit integers
and doubles.  ``ExtendedNonnegative`` keeps a value exactly (as a Python
integer, or a nonnegative float for sieve-weight sums) while it is small
enough, and promotes to a base-2 log-domain representation once an integer
result would exceed ``EXACT_LIMIT``.  Promotion at 2^120 leaves headroom so
that partial-sum accumulation cannot overflow an exact value silently.

Log-domain addition uses log-sum-exp in base 2 and is accurate to well
under 1e-12 relative per operation.  Comparisons are total across both
representations.
"""

from __future__ import annotations

import math
from functools import total_ordering

# Integer results above this are stored as log2 magnitudes.
EXACT_LIMIT = 1 << 120


def _log2_of(value) -> float:
    if value == 0:
        return float("-inf")
    if isinstance(value, int):
        return math.log2(value)
    return math.log2(value)


@total_ordering
class ExtendedNonnegative:
    """A nonnegative magnitude, exact while it fits and log2-domain after."""

    __slots__ = ("_lin", "_log2")

    def __init__(self, value):
        if isinstance(value, ExtendedNonnegative):
            self._lin = value._lin
            self._log2 = value._log2
            return
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TypeError(f"cannot build ExtendedNonnegative from {type(value).__name__}")
        if value < 0:
            raise ValueError("value must be nonnegative")
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError("value must be finite")
        if isinstance(value, int) and value > EXACT_LIMIT:
            self._lin = None
            self._log2 = math.log2(value)
        else:
            self._lin = value
            self._log2 = None

    @classmethod
    def from_log2(cls, log2_magnitude: float) -> "ExtendedNonnegative":
        obj = cls(0)
        obj._lin = None
        obj._log2 = float(log2_magnitude)
        return obj

    @property
    def is_exact(self) -> bool:
        return self._lin is not None

    @property
    def tag(self) -> str:
        return "exact" if self.is_exact else "logdomain"

    @property
    def log2(self) -> float:
        """log2 of the magnitude (-inf for zero)."""
        if self._lin is not None:
            return _log2_of(self._lin)
        return self._log2

    @property
    def exact_value(self):
        """The stored exact value; raises if the magnitude is log-domain."""
        if self._lin is None:
            raise ValueError("magnitude is log-domain; no exact value available")
        return self._lin

    def __float__(self) -> float:
        if self._lin is not None:
            return float(self._lin)
        if self._log2 == float("-inf"):
            return 0.0
        if self._log2 > 1023.9:
            raise OverflowError(f"2^{self._log2:g} exceeds the double range")
        return 2.0 ** self._log2

    def __add__(self, other) -> "ExtendedNonnegative":
        other = other if isinstance(other, ExtendedNonnegative) else ExtendedNonnegative(other)
        if self._lin is not None and other._lin is not None:
            return ExtendedNonnegative(self._lin + other._lin)
        a, b = self.log2, other.log2
        if a < b:
            a, b = b, a
        if a == float("-inf"):
            return ExtendedNonnegative(0)
        # log-sum-exp in base 2; the 2^(b-a) term is in [0, 1]
        return ExtendedNonnegative.from_log2(a + math.log2(1.0 + 2.0 ** (b - a)))

    __radd__ = __add__

    def divide_by(self, denominator) -> float:
        """self / denominator as a float, via log space when needed."""
        if isinstance(denominator, ExtendedNonnegative):
            d_log2 = denominator.log2
        else:
            if denominator <= 0:
                raise ValueError("denominator must be positive")
            d_log2 = _log2_of(denominator)
        if self._lin is not None and isinstance(self._lin, int) and isinstance(denominator, int):
            if self._lin.bit_length() < 1000 and denominator.bit_length() < 1000:
                return self._lin / denominator
        r = self.log2 - d_log2
        if r == float("-inf"):
            return 0.0
        return 2.0 ** r

    def _key(self) -> float:
        return self.log2

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExtendedNonnegative, int, float)):
            return NotImplemented
        other = other if isinstance(other, ExtendedNonnegative) else ExtendedNonnegative(other)
        if self._lin is not None and other._lin is not None:
            return self._lin == other._lin
        return self.log2 == other.log2

    def __lt__(self, other) -> bool:
        other = other if isinstance(other, ExtendedNonnegative) else ExtendedNonnegative(other)
        if self._lin is not None and other._lin is not None:
            return self._lin < other._lin
        return self.log2 < other.log2

    def __hash__(self):
        return hash(self.log2)

    def __repr__(self) -> str:
        if self._lin is not None:
            return f"ExtendedNonnegative({self._lin!r})"
        return f"ExtendedNonnegative.from_log2({self._log2!r})"

    # serialization ------------------------------------------------------

    def to_text(self) -> str:
        """Lossless text form: decimal digits when exact, '2^L' when log-domain."""
        if self._lin is not None:
            if isinstance(self._lin, int):
                return str(self._lin)
            return format(self._lin, ".17g")
        return f"2^{self._log2!r}"

    def to_json_obj(self):
        """JSON-ready form; log-domain magnitudes become decimal strings."""
        if self._lin is not None:
            if isinstance(self._lin, int) and abs(self._lin) >= (1 << 53):
                return {"exact": True, "value": str(self._lin)}
            return {"exact": True, "value": self._lin}
        return {"exact": False, "log2": repr(self._log2)}

    @classmethod
    def from_text(cls, text: str) -> "ExtendedNonnegative":
        text = text.strip()
        if text.startswith("2^"):
            exponent = text[2:]
            try:
                e_int = int(exponent)
            except ValueError:
                return cls.from_log2(float(exponent))
            if e_int <= 120:
                return cls(1 << e_int) if e_int >= 0 else cls(2.0 ** e_int)
            return cls.from_log2(float(e_int))
        try:
            as_int = int(text)
        except ValueError:
            return cls(float(text))
        return cls(as_int)
