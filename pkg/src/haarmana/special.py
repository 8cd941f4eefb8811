"""Special functions for the closed-form Wigner-norm predictions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "LogSigned",
    "log_gamma",
    "erf",
    "log_double_factorial_ratio",
    "double_factorial",
    "hyp2f1_terminating",
]

# above this many terms the linear-space sum is replaced by exact rationals
_FLOAT_TERMS_MAX = 30


@dataclass(frozen=True)
class LogSigned:
    """A real number stored as ``sign * exp(log_abs)``; sign 0 means exactly zero."""

    log_abs: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")

    @classmethod
    def from_float(cls, x: float) -> "LogSigned":
        if x == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "LogSigned":
        if x == 0:
            return cls(-math.inf, 0)
        num, den = abs(x.numerator), x.denominator
        # math.log accepts arbitrarily large ints
        return cls(math.log(num) - math.log(den), 1 if x > 0 else -1)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "LogSigned") -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_float(float(other))
        if self.sign == 0 or other.sign == 0:
            return LogSigned(-math.inf, 0)
        return LogSigned(self.log_abs + other.log_abs, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other: "LogSigned") -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_float(float(other))
        if other.sign == 0:
            raise ZeroDivisionError("division by LogSigned zero")
        if self.sign == 0:
            return self
        return LogSigned(self.log_abs - other.log_abs, self.sign * other.sign)

    def __add__(self, other: "LogSigned") -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_float(float(other))
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log_abs >= other.log_abs else (other, self)
        ratio = math.exp(small.log_abs - big.log_abs)
        if big.sign == small.sign:
            return LogSigned(big.log_abs + math.log1p(ratio), big.sign)
        if ratio == 1.0:
            return LogSigned(-math.inf, 0)
        return LogSigned(big.log_abs + math.log1p(-ratio), big.sign)

    __radd__ = __add__

    def __neg__(self) -> "LogSigned":
        return LogSigned(self.log_abs, -self.sign)

    def __sub__(self, other: "LogSigned") -> "LogSigned":
        if not isinstance(other, LogSigned):
            other = LogSigned.from_float(float(other))
        return self + (-other)


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def erf(x: float) -> float:
    return math.erf(x)


def double_factorial(n: int) -> int:
    if n < 0:
        raise ValueError("double factorial of a negative number")
    return math.prod(range(n, 0, -2))


def log_double_factorial_ratio(d: int) -> float:
    """``ln[d!! / (d-1)!!]`` for odd ``d``.

    Uses ``d!!/(d-1)!! = 2 Gamma(d/2 + 1) / (sqrt(pi) Gamma((d+1)/2))``.
    """
    if int(d) != d or d < 1 or d % 2 == 0:
        raise ValueError(f"d must be a positive odd integer, got {d}")
    return math.log(2.0) + math.lgamma(d / 2 + 1) - 0.5 * math.log(math.pi) - math.lgamma((d + 1) / 2)


def _is_nonpositive_int(x) -> bool:
    return float(x) == math.floor(float(x)) and x <= 0


def hyp2f1_terminating(a, b, c, z) -> LogSigned:
    """Terminating Gauss series ``2F1(a, b; c; z)`` with ``a = -m``, ``m >= 0``.

    The sum has ``m + 1`` terms. Up to 30 terms it is accumulated in floating
    point with Neumaier compensation; longer sums are done in exact rational
    arithmetic (floats are converted exactly) and only the final value is
    rounded.
    """
    if not _is_nonpositive_int(a):
        raise ValueError(f"first parameter must be a nonpositive integer, got {a}")
    m = -int(a)
    if _is_nonpositive_int(c) and -int(c) < m:
        raise ValueError(f"c={c} hits a pole before the series terminates")

    if m <= _FLOAT_TERMS_MAX:
        b, c, z = float(b), float(c), float(z)
        total, comp, term = 1.0, 0.0, 1.0
        for k in range(m):
            term *= (k - m) * (b + k) / ((c + k) * (k + 1)) * z
            t = total + term
            if abs(total) >= abs(term):
                comp += (total - t) + term
            else:
                comp += (term - t) + total
            total = t
        return LogSigned.from_float(total + comp)

    fb, fc, fz = (x if isinstance(x, Fraction) else Fraction(x) for x in (b, c, z))
    total = term = Fraction(1)
    for k in range(m):
        term *= Fraction((k - m)) * (fb + k) / ((fc + k) * (k + 1)) * fz
        total += term
    return LogSigned.from_fraction(total)

