"""Sign + log-magnitude arithmetic for quantities that overflow floats.

Needed because the bound prefactors contain Gamma((2n^2+5n+3)/2) and
products of factorials that exceed double range well before n = 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN10 = math.log(10.0)


@dataclass(frozen=True)
class LogValue:
    """A real number as (sign, ln |value|); zero has sign 0, ln -inf."""

    sign: int
    ln_magnitude: float

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0.0:
            return cls(0, float("-inf"))
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_ln(cls, ln_mag: float, sign: int = 1) -> "LogValue":
        if sign == 0 or ln_mag == float("-inf"):
            return cls(0, float("-inf"))
        return cls(1 if sign > 0 else -1, float(ln_mag))

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(0, float("-inf"))

    @classmethod
    def one(cls) -> "LogValue":
        return cls(1, 0.0)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign,
                        self.ln_magnitude + other.ln_magnitude)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.sign == 0:
            raise ZeroDivisionError("LogValue division by zero")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign,
                        self.ln_magnitude - other.ln_magnitude)

    def __add__(self, other: "LogValue") -> "LogValue":
        """Sum; same-sign values combine by log-sum-exp."""
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        hi, lo = ((self, other) if self.ln_magnitude >= other.ln_magnitude
                  else (other, self))
        delta = lo.ln_magnitude - hi.ln_magnitude  # <= 0
        if self.sign == other.sign:
            return LogValue(self.sign, hi.ln_magnitude + math.log1p(math.exp(delta)))
        diff = math.exp(delta)
        if diff == 1.0:
            return LogValue.zero()
        return LogValue(hi.sign, hi.ln_magnitude + math.log1p(-diff))

    def __neg__(self) -> "LogValue":
        return LogValue(-self.sign, self.ln_magnitude)

    def power(self, exponent: float) -> "LogValue":
        if self.sign == 0:
            return LogValue.zero()
        if self.sign < 0:
            raise ValueError("power of a negative LogValue")
        return LogValue(1, self.ln_magnitude * exponent)

    # -- conversions ----------------------------------------------------

    @property
    def log10(self) -> float:
        if self.sign == 0:
            return float("-inf")
        return self.ln_magnitude / LN10

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.ln_magnitude)

    def to_decimal(self) -> tuple[float, int]:
        """(mantissa in [1, 10), base-10 exponent); sign on the mantissa."""
        if self.sign == 0:
            return 0.0, 0
        exp10 = math.floor(self.log10)
        mantissa = 10.0 ** (self.log10 - exp10)
        # guard the half-open bracket against rounding at the edge
        if mantissa >= 10.0:
            mantissa /= 10.0
            exp10 += 1
        return self.sign * mantissa, int(exp10)

    def format_scientific(self, digits: int = 5) -> str:
        if self.sign == 0:
            return "0"
        mantissa, exp10 = self.to_decimal()
        return f"{mantissa:.{digits - 1}f}e{exp10:+03d}"

    def relative_difference(self, value: float) -> float:
        """|self - value| / |value| computed stably in log space."""
        if value == 0.0:
            return float("inf") if self.sign != 0 else 0.0
        other = LogValue.from_float(value)
        if self.sign == 0:
            return 1.0
        delta = self.ln_magnitude - other.ln_magnitude
        if delta > 700.0:
            return float("inf")
        if self.sign == other.sign:
            return abs(math.expm1(delta))
        return math.exp(delta) + 1.0
