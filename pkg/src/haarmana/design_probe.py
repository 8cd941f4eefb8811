"""Why mana separates Haar states from near-Clifford t-designs.

The Wigner norm is a sum of ``|W(p, q)|``. Expanding ``|x|`` in Chebyshev
polynomials, ``|x| = sum_n tau_n T_n(x)``, puts weight ``~ n^-2`` on every even
order, so no finite set of moments pins the norm down. The coefficients are
the Fourier coefficients of ``|cos theta|``; here they are computed by
quadrature, not taken from a closed form.

Separately, Chebyshev's inequality with the Gaussian variance estimate
``D^{-1}(1 - 2/pi)`` (assumed, not proven, to bound the true variance) gives
``P[W < <W> - delta] <= 1 / (D delta^2)`` for Haar states, which leads to the
confusion probability with a t-design whose norm is at most
``eps^{-c t^4 lg t}``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev

from .ensembles import EnsembleSpec, batch_statistics
from .predictions import exact_pure_norm
from .wigner import WignerFunction

__all__ = [
    "ChebyshevSeries",
    "chebyshev_coeffs",
    "reconstruct_wigner_norm",
    "haar_tail_bound",
    "OutOfRegimeError",
    "t_design_norm",
    "confusion_probability",
    "DistinguishResult",
    "empirical_distinguish",
    "write_distinguish_csv",
    "DISTINGUISH_COLUMNS",
]

DISTINGUISH_COLUMNS = ["d", "threshold", "n_samples", "empirical_rate", "analytic_bound"]
VARIANCE_ASSUMPTION = "Gaussian variance D^-1(1-2/pi) taken as an upper bound on Var[W]"


class OutOfRegimeError(ValueError):
    """The asymptotic bound was requested outside its stated validity range."""


@dataclass(frozen=True)
class ChebyshevSeries:
    coeffs: np.ndarray

    @property
    def max_order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return chebyshev.chebval(x, self.coeffs)


def _fourier_cos_quadrature(n_max: int, nodes: int) -> np.ndarray:
    # |cos| is smooth on each quarter period; Gauss-Legendre per piece
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = np.pi / 4
    pieces = [(k * np.pi / 2, (k + 1) * np.pi / 2) for k in range(4)]
    theta = np.concatenate([lo + half * (x + 1) for lo, _ in pieces])
    weights = np.tile(w * half, 4)
    f = np.abs(np.cos(theta)) * weights
    n = np.arange(n_max + 1)
    integrals = np.cos(np.outer(n, theta)) @ f  # int_0^{2 pi} |cos t| cos(n t) dt
    out = integrals / np.pi
    out[0] /= 2
    return out


def chebyshev_coeffs(max_order: int) -> ChebyshevSeries:
    """Chebyshev coefficients of ``|x|`` up to order ``max_order``."""
    if max_order < 2:
        raise ValueError(f"need max_order >= 2, got {max_order}")
    nodes = max(64, 2 * max_order + 16)
    return ChebyshevSeries(_fourier_cos_quadrature(max_order, nodes))


def reconstruct_wigner_norm(w: WignerFunction, max_order: int, *, rescale: bool = True) -> float:
    """Truncated Chebyshev reconstruction of ``sum |W(p, q)|``.

    With ``rescale`` the arguments are divided by the purity bound
    ``sqrt(exp(-S2) / D) >= |W|`` first, which maps them onto [-1, 1]
    and leaves the target unchanged because ``|c x| = c |x|``. Without it the
    raw values are expanded, which converges more slowly.
    """
    series = chebyshev_coeffs(max_order)
    if not rescale:
        return float(series(w.values).sum())
    bound = math.sqrt(math.exp(-w.s2) / w.dim)
    # the bound is exact up to rounding; keep arguments inside the domain
    x = np.clip(w.values / bound, -1.0, 1.0)
    return float(bound * series(x).sum())


def haar_tail_bound(big_d: int, delta: float) -> float:
    """Chebyshev bound ``min(1, 1 / (D delta^2))`` on ``P[W < <W> - delta]``."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return min(1.0, 1.0 / (big_d * delta * delta))


def t_design_norm(t: float, eps: float, c: float = 1.0) -> float:
    """Largest Wigner norm of a t-design output, ``eps^{-c t^4 lg t}``."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return eps ** (-c * t ** 4 * math.log2(t))


def confusion_probability(big_d: float, t: float, eps: float, c: float = 1.0) -> float:
    """Upper bound on mistaking a Haar state for a t-design output.

    ``(D [sqrt(2/pi) sqrt(D) - eps^{-c t^4 lg t}])^{-1}``, valid only for
    ``D > eps^{-2 c t^4 lg t}``.
    """
    norm_t = t_design_norm(t, eps, c)
    if not big_d > norm_t ** 2:
        raise OutOfRegimeError(
            f"D={big_d} is not above the validity threshold eps^(-2 c t^4 lg t) = {norm_t ** 2:g}"
        )
    gap = math.sqrt(2 / math.pi) * math.sqrt(big_d) - norm_t
    return 1.0 / (big_d * gap)


@dataclass(frozen=True)
class DistinguishResult:
    d: int
    threshold: float
    n_samples: int
    empirical_rate: float
    analytic_bound: float
    assumption: str = VARIANCE_ASSUMPTION

    @property
    def stderr(self) -> float:
        p = min(max(self.analytic_bound, 0.0), 1.0)
        return math.sqrt(p * (1 - p) / self.n_samples)


def empirical_distinguish(d: int, n_samples: int, threshold: float, master_seed: int,
                          *, threads: int = 1) -> DistinguishResult:
    """Fraction of Haar states with Wigner norm below ``threshold`` and its bound."""
    stats = batch_statistics(EnsembleSpec("pure", d), n_samples, master_seed, threads=threads)
    rate = float(np.mean(stats["wigner_norm"] < threshold))
    gap = exact_pure_norm(d) - threshold
    bound = haar_tail_bound(d, gap) if gap > 0 else 1.0
    return DistinguishResult(d, threshold, n_samples, rate, bound)


def write_distinguish_csv(path, results: list[DistinguishResult]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DISTINGUISH_COLUMNS)
        for r in results:
            writer.writerow([r.d, f"{r.threshold:.17g}", r.n_samples,
                             f"{r.empirical_rate:.17g}", f"{r.analytic_bound:.17g}"])
