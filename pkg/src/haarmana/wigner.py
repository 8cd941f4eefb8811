"""Discrete Wigner functions, Wigner norm and mana.

For a state on an odd-dimensional register the Wigner function is

    W(p, q) = D^{-1} sum_x w^{-p x} rho[q + x/2, q - x/2]

with all indices mod D and ``x/2`` meaning multiplication by the inverse of
two. For fixed ``q`` the sum over ``x`` is a length-D DFT, which is what the
FFT path exploits. Three evaluation paths are provided and agree to rounding:

* ``"trace"``  -- ``Tr[rho A(p, q)] / D`` with dense point operators, O(D^4)
* ``"direct"`` -- the explicit sum above, O(D^3)
* ``"fft"``    -- one FFT per ``q``, O(D^2 log D)

An l-qudit register of dimension ``d**l`` is handled as a single register.
All kernels broadcast over leading batch axes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numba import njit

from .algebra import InvalidDimensionError, check_dim, inv2, phase_point_ops

__all__ = [
    "StateError",
    "WignerFunction",
    "validate_state",
    "validate_density",
    "wigner_pure",
    "wigner_rho",
    "wigner_fft",
    "wigner_values",
    "wigner_norm",
    "mana",
    "renyi2",
    "entropy_deficit",
    "jensen_bound",
]

PATHS = ("fft", "direct", "trace")
NORM_TOL = 1e-12
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
NEG_EIG_TOL = -1e-10


class StateError(ValueError):
    """Input is not a valid normalized state or density matrix."""


def validate_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise StateError(f"pure state must be a vector, got shape {psi.shape}")
    check_dim(psi.shape[0])
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > NORM_TOL:
        raise StateError(f"state is not normalized: <psi|psi> = {norm!r}")
    return psi


def validate_density(rho, *, check_psd: bool = True) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise StateError(f"density matrix must be square, got shape {rho.shape}")
    check_dim(rho.shape[0])
    herm = np.abs(rho - rho.conj().T).max()
    if herm > HERM_TOL:
        raise StateError(f"density matrix is not Hermitian (residual {herm:.2e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise StateError(f"density matrix trace is {tr!r}, not 1")
    if check_psd:
        lo = np.linalg.eigvalsh(rho)[0]
        if lo < NEG_EIG_TOL:
            raise StateError(f"density matrix has negative eigenvalue {lo:.3e}")
    return rho


def _index_grids(dim: int) -> tuple[np.ndarray, np.ndarray]:
    h = inv2(dim)
    q = np.arange(dim)[:, None]
    x = np.arange(dim)[None, :]
    return (q + h * x) % dim, (q - h * x) % dim


def _correlation(arr: np.ndarray, pure: bool) -> np.ndarray:
    """``F[..., q, x] = rho[q + x/2, q - x/2]`` (or the pure-state product)."""
    dim = arr.shape[-1]
    plus, minus = _index_grids(dim)
    if pure:
        return arr[..., plus] * arr[..., minus].conj()
    return arr[..., plus, minus]


@njit(cache=True)
def _direct_sum(rho, h):  # pragma: no cover - compiled
    """Literal triple loop over (p, q, x); ``rho`` is a dense matrix."""
    d = rho.shape[0]
    out = np.empty((d, d))
    cos_t = np.cos(-2.0 * np.pi * np.arange(d) / d)
    sin_t = np.sin(-2.0 * np.pi * np.arange(d) / d)
    for p in range(d):
        for q in range(d):
            acc = 0.0
            for x in range(d):
                v = rho[(q + h * x) % d, (q - h * x) % d]
                k = (p * x) % d
                acc += cos_t[k] * v.real - sin_t[k] * v.imag
            out[p, q] = acc / d
    return out


@njit(cache=True)
def _direct_sum_pure(psi, h):  # pragma: no cover - compiled
    d = psi.shape[0]
    out = np.empty((d, d))
    cos_t = np.cos(-2.0 * np.pi * np.arange(d) / d)
    sin_t = np.sin(-2.0 * np.pi * np.arange(d) / d)
    for p in range(d):
        for q in range(d):
            acc = 0.0
            for x in range(d):
                v = psi[(q + h * x) % d] * np.conj(psi[(q - h * x) % d])
                k = (p * x) % d
                acc += cos_t[k] * v.real - sin_t[k] * v.imag
            out[p, q] = acc / d
    return out


def _direct(arr: np.ndarray, pure: bool) -> np.ndarray:
    dim = arr.shape[-1]
    h = inv2(dim)
    kernel = _direct_sum_pure if pure else _direct_sum
    lead = arr.shape[:-1] if pure else arr.shape[:-2]
    flat = arr.reshape((-1,) + arr.shape[len(lead):])
    out = np.stack([kernel(np.ascontiguousarray(a), h) for a in flat])
    return out.reshape(lead + (dim, dim))


def wigner_values(arr, *, pure: bool | None = None, path: str = "fft") -> np.ndarray:
    """Raw Wigner arrays ``W[..., p, q]`` for a (batch of) states, no validation.

    ``pure`` defaults to ``arr.ndim == 1`` for single inputs; batches must say
    which kind they are.
    """
    arr = np.asarray(arr, dtype=complex)
    if pure is None:
        if arr.ndim not in (1, 2):
            raise ValueError("pass pure=True/False for batched input")
        pure = arr.ndim == 1
    dim = arr.shape[-1]
    if not pure and arr.shape[-2] != dim:
        raise StateError(f"density matrices must be square, got {arr.shape[-2:]}")
    check_dim(dim)

    if path == "trace":
        rho = np.einsum("...j,...k->...jk", arr, arr.conj()) if pure else arr
        w = np.empty(rho.shape[:-2] + (dim, dim))
        for p in range(dim):
            ops = phase_point_ops(dim, p)  # A(p, q) for all q
            # Tr[rho A] = sum_jk rho[j,k] A[k,j]
            w[..., p, :] = np.einsum("...jk,qkj->...q", rho, ops).real
        return w / dim

    if path == "direct":
        return _direct(arr, pure)
    if path != "fft":
        raise ValueError(f"unknown path {path!r}; choose from {PATHS}")
    f = _correlation(arr, pure)
    w = np.fft.fft(f, axis=-1)  # [..., q, p]
    return np.swapaxes(w.real, -1, -2) / dim


def renyi2(rho) -> float:
    """Second Renyi entropy ``-ln Tr rho^2`` in nats."""
    rho = np.asarray(rho)
    if rho.ndim == 1:
        return 0.0
    purity = float(np.sum(np.abs(rho) ** 2))
    return -math.log(purity)


def entropy_deficit(obj) -> float:
    """``ln D - S_2`` for a density matrix, a pure state, or a WignerFunction."""
    if isinstance(obj, WignerFunction):
        return math.log(obj.dim) - obj.s2
    obj = np.asarray(obj)
    return math.log(obj.shape[-1]) - renyi2(obj)


def jensen_bound(dim: int, s2: float) -> float:
    return 0.5 * (math.log(dim) - s2)


@dataclass(frozen=True)
class WignerFunction:
    """Wigner function ``values[p, q]`` of a state on a D-dimensional register."""

    values: np.ndarray
    s2: float = 0.0

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @property
    def norm(self) -> float:
        return float(np.abs(self.values).sum())

    @property
    def mana(self) -> float:
        return math.log(self.norm)

    @property
    def delta(self) -> float:
        return math.log(self.dim) - self.s2

    def residuals(self) -> dict[str, float]:
        """Deviations from ``sum W = 1`` and ``sum W^2 = exp(-S2) / D``."""
        w = self.values
        return {
            "normalization": abs(float(w.sum()) - 1.0),
            "purity": abs(float((w ** 2).sum()) - math.exp(-self.s2) / self.dim),
        }

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "q", "w"])
        dim = self.dim
        for p in range(dim):
            for q in range(dim):
                writer.writerow([p, q, f"{self.values[p, q]:.17g}"])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_csv(cls, text: str, s2: float = 0.0) -> "WignerFunction":
        rows = list(csv.DictReader(io.StringIO(text)))
        dim = math.isqrt(len(rows))
        values = np.zeros((dim, dim))
        for row in rows:
            values[int(row["p"]), int(row["q"])] = float(row["w"])
        return cls(values, s2)


def wigner_pure(psi, *, path: str = "fft") -> WignerFunction:
    psi = validate_state(psi)
    return WignerFunction(wigner_values(psi, pure=True, path=path), 0.0)


def wigner_rho(rho, *, path: str = "fft") -> WignerFunction:
    rho = validate_density(rho)
    return WignerFunction(wigner_values(rho, pure=False, path=path), renyi2(rho))


StateLike = Union[np.ndarray, list]


def wigner_fft(state: StateLike) -> WignerFunction:
    """FFT-path Wigner function of a state vector or density matrix."""
    arr = np.asarray(state)
    if arr.ndim == 1:
        return wigner_pure(arr, path="fft")
    if arr.ndim == 2:
        return wigner_rho(arr, path="fft")
    raise InvalidDimensionError(f"expected a vector or a matrix, got shape {arr.shape}")


def wigner_norm(w: WignerFunction) -> float:
    return w.norm


def mana(w: WignerFunction) -> float:
    return w.mana
