"""Closed-form predictions for the Wigner norm and mana of random states.

Two families:

* the Gaussian approximation, where each W(p, q) is treated as an independent
  normal variable with mean ``1/D^2`` and variance fixed by the purity, so the
  mean Wigner norm depends only on the entropy deficit ``delta = ln D - S2``;
* exact results for reduced states of Haar states on ``d_A x d_B`` (pure states
  are ``d_B = 1``), from the moments of ``|W| = |x| / d_A`` where ``x`` has density
  proportional to ``(1+x)^{a-1} (1-x)^{b-1}`` on ``[-1, 1]`` with
  ``a = d_B (d_A + 1)/2`` and ``b = d_B (d_A - 1)/2``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .special import LogSigned, erf, hyp2f1_terminating, log_double_factorial_ratio, log_gamma

__all__ = [
    "GaussianParams",
    "ExactMixedParams",
    "GaussianLimits",
    "gaussian_wigner_norm",
    "gaussian_limits",
    "gaussian_variance",
    "exact_pure_norm",
    "pure_abs_moment",
    "char_fn_moment",
    "exact_mixed_norm",
    "exact_mixed_norm_bracket",
    "saddle_params",
    "avg_purity",
    "reduced_deficit",
    "mana_quick_estimate",
    "prediction_rows",
    "write_prediction_csv",
    "PREDICTION_COLUMNS",
]

SQRT_2_OVER_PI = math.sqrt(2 / math.pi)
MOMENT_CAP = 20
PREDICTION_COLUMNS = ["d_a", "d_b", "delta", "pred_gaussian", "pred_exact", "pred_variance"]


@dataclass(frozen=True)
class GaussianParams:
    """Mean and variance of a single Wigner component W(p, q).

    Built from a deficit these are ``mu = 1/D^2`` and
    ``sigma2 = mu^2 (e^delta - 1)``. The saddle-point version carries
    finite-size corrections and exact rational values instead.
    """

    mu: float
    sigma2: float
    delta: float
    big_d: int

    @classmethod
    def from_delta(cls, big_d: int, delta: float) -> "GaussianParams":
        if delta < 0:
            raise ValueError(f"entropy deficit must be >= 0, got {delta}")
        mu = 1.0 / big_d ** 2
        return cls(mu, mu * mu * math.expm1(delta), delta, big_d)

    @property
    def ratio(self) -> float:
        """sigma / mu"""
        return math.sqrt(self.sigma2) / self.mu


@dataclass(frozen=True)
class ExactMixedParams:
    d_a: int
    d_b: int

    def __post_init__(self):
        if int(self.d_a) != self.d_a or self.d_a < 3 or self.d_a % 2 == 0:
            raise ValueError(f"d_a must be odd and >= 3, got {self.d_a}")
        if int(self.d_b) != self.d_b or self.d_b < 1:
            raise ValueError(f"d_b must be a positive integer, got {self.d_b}")

    @property
    def big_d(self) -> int:
        return self.d_a * self.d_b

    @property
    def a(self) -> int:
        return self.d_b * (self.d_a + 1) // 2

    @property
    def b(self) -> int:
        return self.d_b * (self.d_a - 1) // 2


class GaussianLimits(NamedTuple):
    large_delta: float
    small_delta: float


def _check_delta(delta: float) -> None:
    if not delta >= 0:
        raise ValueError(f"entropy deficit must be >= 0, got {delta}")


def gaussian_wigner_norm(delta: float) -> float:
    """Mean Wigner norm ``sqrt(2/pi) r e^{-1/(2 r^2)} + erf(1/(r sqrt 2))``, ``r^2 = e^delta - 1``."""
    _check_delta(delta)
    if delta == 0:
        return 1.0
    r = math.sqrt(math.expm1(delta))
    return SQRT_2_OVER_PI * r * math.exp(-0.5 / (r * r)) + erf(1.0 / (r * math.sqrt(2.0)))


def gaussian_limits(delta: float) -> GaussianLimits:
    """Leading behaviour for nearly pure (large delta) and nearly mixed (small delta) states."""
    if not delta > 0:
        raise ValueError(f"limits need delta > 0, got {delta}")
    large = SQRT_2_OVER_PI * math.exp(delta / 2)
    small = 1.0 + SQRT_2_OVER_PI * delta ** 1.5 * math.exp(-0.5 / delta)
    return GaussianLimits(large, small)


def gaussian_variance(big_d: int, delta: float, *, include_mean_square: bool = True) -> float:
    """Gaussian estimate of the Wigner-norm variance, clamped at zero.

    Summing ``D^2`` independent ``|W|`` terms gives ``D^{-2}[e^delta - <W>^2]``.
    With ``include_mean_square=False`` the ``mu^2`` part of ``E[W^2]`` is dropped,
    giving ``D^{-2}[e^delta - 1 - <W>^2]``; that form undershoots the pure-state
    value ``D^{-1}(1 - 2/pi)`` by a relative ``O(1/D)`` and goes negative near
    delta = 0.
    """
    _check_delta(delta)
    if delta > math.log(big_d) + 1e-12:
        raise ValueError(f"delta={delta} exceeds ln D = {math.log(big_d)}")
    w = gaussian_wigner_norm(delta)
    excess = math.expm1(delta) - (w - 1) * (w + 1) if include_mean_square else math.expm1(delta) - w * w
    return max(excess, 0.0) / big_d ** 2


def _check_odd(d: int) -> None:
    if int(d) != d or d < 3 or d % 2 == 0:
        raise ValueError(f"d must be odd and >= 3, got {d}")


def exact_pure_norm(d: int) -> float:
    """Haar-averaged Wigner norm of a pure state, ``d!! / (d-1)!!``."""
    _check_odd(d)
    return math.exp(log_double_factorial_ratio(d))


def pure_abs_moment(d: int, n: int, *, cap: int = MOMENT_CAP) -> float:
    """``<|W(p,q)|^n>`` over Haar pure states on an odd dimension d.

    For pure states ``a = b + 1`` and the moment integral collapses to a Beta
    function:
    ``Gamma(d) Gamma((n+1)/2) / (2^{d-1} Gamma((d+1)/2) Gamma((n+d)/2) d^n)``.
    """
    _check_odd(d)
    if int(n) != n or n < 0:
        raise ValueError(f"moment order must be a nonnegative integer, got {n}")
    if n > cap:
        raise ValueError(f"moment order {n} exceeds cap {cap}")
    log_m = (log_gamma(d) + log_gamma((n + 1) / 2) - (d - 1) * math.log(2)
             - log_gamma((d + 1) / 2) - log_gamma((n + d) / 2) - n * math.log(d))
    return math.exp(log_m)


def _log_normalization(params: ExactMixedParams) -> float:
    a, b, big_d = params.a, params.b, params.big_d
    return log_gamma(big_d) - (big_d - 1) * math.log(2) - log_gamma(a) - log_gamma(b)


def _half_moment(first: int, second: int, n: int) -> LogSigned:
    # int_0^1 x^n (1+x)^{first-1} (1-x)^{second-1} dx = B(n+1, second) 2F1(1-first, n+1; n+1+second; -1)
    beta = LogSigned(log_gamma(n + 1) + log_gamma(second) - log_gamma(n + 1 + second), 1)
    return beta * hyp2f1_terminating(1 - first, n + 1, n + 1 + second, -1)


def char_fn_log_moment(params: ExactMixedParams, n: int) -> LogSigned:
    if int(n) != n or n < 0:
        raise ValueError(f"moment order must be a nonnegative integer, got {n}")
    a, b = params.a, params.b
    # x > 0 half has weights (1+x)^{a-1}(1-x)^{b-1}; x < 0 half swaps a and b
    halves = _half_moment(a, b, n) + _half_moment(b, a, n)
    scale = LogSigned(_log_normalization(params) - n * math.log(params.d_a), 1)
    return scale * halves


def char_fn_moment(params: ExactMixedParams, n: int, *, cap: int = MOMENT_CAP) -> float:
    """``<|W(p,q)|^n>`` for reduced states: the ``z^n/n!`` coefficient of ``<e^{z|W|}>``."""
    if n > cap:
        raise ValueError(f"moment order {n} exceeds cap {cap}")
    return float(char_fn_log_moment(params, n))


def exact_mixed_norm(params: ExactMixedParams) -> float:
    """Mean Wigner norm of reduced states, ``d_A^2 <|W(p,q)|>``."""
    lm = char_fn_log_moment(params, 1)
    return math.exp(lm.log_abs + 2 * math.log(params.d_a))


def exact_mixed_norm_bracket(params: ExactMixedParams) -> float:
    """Same quantity from the bracket form

    ``d_A Gamma(D) / (2^{D-1} Gamma(a) Gamma(b)) [F1 / (b(b+1)) + F2 / (a(a+1))]``
    with ``F1 = 2F1(1-a, 2; 2+b; -1)`` and ``F2 = 2F1(1-b, 2; 2+a; -1)``.
    """
    a, b = params.a, params.b
    f1 = hyp2f1_terminating(1 - a, 2, 2 + b, -1) / LogSigned.from_float(b * (b + 1.0))
    f2 = hyp2f1_terminating(1 - b, 2, 2 + a, -1) / LogSigned.from_float(a * (a + 1.0))
    total = LogSigned(_log_normalization(params) + math.log(params.d_a), 1) * (f1 + f2)
    return float(total)


def avg_purity(d_a: int, d_b: int) -> Fraction:
    """Haar average of ``Tr rho_A^2``: ``(d_A + d_B) / (d_A d_B + 1)``."""
    if d_a < 1 or d_b < 1:
        raise ValueError("dimensions must be >= 1")
    return Fraction(d_a + d_b, d_a * d_b + 1)


def reduced_deficit(d_a: int, d_b: int) -> float:
    """Entropy deficit at the average purity, ``ln d_A + ln <Tr rho_A^2>``."""
    return math.log(d_a) + math.log(avg_purity(d_a, d_b))


def saddle_params(d_a: int, d_b: int) -> GaussianParams:
    """Saddle-point mean and variance of W(p, q) for reduced states (exact rationals)."""
    big_d = d_a * d_b
    if big_d < 3:
        raise ValueError(f"saddle point needs d_a * d_b >= 3, got {big_d}")
    mu = Fraction(d_b, d_a * (big_d - 2))
    sigma2 = Fraction(1, d_a * d_a * (big_d - 2))
    return GaussianParams(mu, sigma2, reduced_deficit(d_a, d_b), d_a)


def mana_quick_estimate(ell: int, d: int, s2: float) -> float:
    """``max(0, (l ln d - S2 - ln(pi/2)) / 2)``."""
    top = ell * math.log(d)
    if not -1e-12 <= s2 <= top + 1e-12:
        raise ValueError(f"S2={s2} outside [0, {top}]")
    return max(0.0, 0.5 * (top - s2 - math.log(math.pi / 2)))


def prediction_rows(d_a: int, d_bs: Iterable[int]) -> list[dict]:
    rows = []
    for d_b in d_bs:
        delta = reduced_deficit(d_a, d_b)
        rows.append({
            "d_a": d_a,
            "d_b": d_b,
            "delta": delta,
            "pred_gaussian": gaussian_wigner_norm(max(delta, 0.0)),
            "pred_exact": exact_mixed_norm(ExactMixedParams(d_a, d_b)),
            "pred_variance": gaussian_variance(d_a, min(max(delta, 0.0), math.log(d_a))),
        })
    return rows


def write_prediction_csv(path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PREDICTION_COLUMNS)
        for row in rows:
            writer.writerow([row["d_a"], row["d_b"]] + [f"{row[k]:.17g}" for k in PREDICTION_COLUMNS[2:]])
