"""Weyl-Heisenberg operators and phase-space point operators for odd qudits.

Conventions: ``X|j> = |j+1>``, ``Z|j> = w^j |j>`` with ``w = exp(2 pi i / d)``.
A Pauli label ``(a1, a2)`` carries the clock exponent first and the shift
exponent second, and a phase-space point ``(p, q)`` is the label whose Weyl
operator displaces the parity operator ``A(0, 0)`` to ``A(p, q)``.

Point operators are normalized to eigenvalues +1/-1 (trace one), so the
Wigner function is ``W(p, q) = Tr[rho A(p, q)] / d``.

Everything here is dense and meant for verification and small cross-checks;
the fast transforms live in :mod:`haarmana.wigner`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "InvalidDimensionError",
    "check_dim",
    "inv2",
    "omega",
    "shift_op",
    "clock_op",
    "pauli_op",
    "phase_point_op",
    "phase_point_ops",
    "phase_point_op_multi",
    "AlgebraReport",
    "verify_algebra",
]

VERIFY_CAP = 31


class InvalidDimensionError(ValueError):
    """Raised for even, too small, or otherwise unusable qudit dimensions."""


def check_dim(d) -> int:
    if isinstance(d, bool) or int(d) != d:
        raise InvalidDimensionError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 3 or d % 2 == 0:
        raise InvalidDimensionError(f"dimension must be odd and >= 3, got {d}")
    return d


def inv2(d: int) -> int:
    """Multiplicative inverse of 2 in Z_d, i.e. ``(d + 1) // 2``."""
    d = check_dim(d)
    return (d + 1) // 2


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def _roots(d: int) -> np.ndarray:
    # exact integer exponents reduced mod d before exponentiation
    return np.exp(2j * np.pi * np.arange(d) / d)


def shift_op(d: int) -> np.ndarray:
    d = check_dim(d)
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_op(d: int) -> np.ndarray:
    d = check_dim(d)
    return np.diag(_roots(d))


def pauli_op(d: int, a1: int, a2: int) -> np.ndarray:
    """Weyl operator ``T_{a1,a2} = w^{-a1 a2 / 2} Z^a1 X^a2``.

    The phase exponent is evaluated mod d, so the result is exactly periodic
    in both labels.
    """
    d = check_dim(d)
    a1 %= d
    a2 %= d
    phase_exp = (-inv2(d) * a1 * a2) % d
    roots = _roots(d)
    # (Z^a1 X^a2)[k, j] = w^{a1 k} delta_{k, j + a2}
    out = np.zeros((d, d), dtype=complex)
    j = np.arange(d)
    k = (j + a2) % d
    out[k, j] = roots[(a1 * k + phase_exp) % d]
    return out


def _point_matrix(d: int, p: int, q: int) -> np.ndarray:
    # A(p,q)[k, j] = w^{p (k - j)} if j + k = 2q (mod d)
    roots = _roots(d)
    j = np.arange(d)
    k = (2 * q - j) % d
    out = np.zeros((d, d), dtype=complex)
    out[k, j] = roots[(p * (k - j)) % d]
    return out


def phase_point_op(d: int, p: int, q: int, *, construction: str = "direct") -> np.ndarray:
    """Phase-space point operator ``A(p, q)`` with spectrum +-1.

    ``construction="weyl"`` builds it literally as ``T_u A_0 T_u^dagger`` with
    ``A_0 = d^{-1} sum_a T_a``; the default writes the resulting matrix
    elements down directly. Both give the same operator.
    """
    d = check_dim(d)
    p %= d
    q %= d
    if construction == "direct":
        return _point_matrix(d, p, q)
    if construction == "weyl":
        a0 = sum(pauli_op(d, a1, a2) for a1 in range(d) for a2 in range(d)) / d
        t = pauli_op(d, p, q)
        return t @ a0 @ t.conj().T
    raise ValueError(f"unknown construction {construction!r}")


def phase_point_ops(d: int, p: int | None = None) -> np.ndarray:
    """All point operators stacked as ``ops[p, q]`` (shape d, d, d, d).

    With ``p`` given, only the slice ``ops[p]`` (shape d, d, d) is built.
    """
    d = check_dim(d)
    roots = _roots(d)
    ps = np.arange(d) if p is None else np.array([p % d])
    pp = ps[:, None, None, None]
    q = np.arange(d)[None, :, None, None]
    k = np.arange(d)[None, None, :, None]
    j = np.arange(d)[None, None, None, :]
    mask = (j + k - 2 * q) % d == 0
    ops = np.where(mask, roots[(pp * (k - j)) % d], 0.0).astype(complex)
    return ops if p is None else ops[0]


def phase_point_op_multi(dims: Sequence[int], points: Sequence[tuple[int, int]]) -> np.ndarray:
    """Tensor product ``A(p1,q1) x ... x A(pl,ql)`` over the listed qudits."""
    dims = [check_dim(d) for d in dims]
    if len(dims) != len(points) or not dims:
        raise InvalidDimensionError(
            f"need one phase-space point per qudit: {len(dims)} dims, {len(points)} points"
        )
    ops = [phase_point_op(d, p, q) for d, (p, q) in zip(dims, points)]
    return reduce(np.kron, ops)


@dataclass
class AlgebraReport:
    d: int
    residuals: dict[str, float]
    tolerances: dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.residuals.items() if not v <= self.tolerances[k]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for name, value in self.residuals.items():
            status = "PASS" if value <= self.tolerances[name] else "FAIL"
            out.append(f"{status}  d={self.d:<3d} {name:<14s} {value:.3e} (tol {self.tolerances[name]:.0e})")
        return out


def verify_algebra(d: int, *, cap: int = VERIFY_CAP, tol: float = 1e-9,
                   perturb: bool = False) -> AlgebraReport:
    """Check Hermiticity, spectrum, trace and trace-orthogonality of all A(p, q).

    ``perturb`` corrupts one operator before checking; it exists so the
    verification harness can be shown to fail.
    """
    d = check_dim(d)
    if d > cap:
        raise InvalidDimensionError(f"d={d} exceeds the verification cap {cap}")
    ops = phase_point_ops(d).reshape(d * d, d, d)
    if perturb:
        ops = ops.copy()
        ops[d + 1, 0, 0] += 1e-3

    herm = np.abs(ops - ops.conj().transpose(0, 2, 1)).max()
    eig = np.linalg.eigvalsh(ops)
    plus, minus = (d + 1) // 2, (d - 1) // 2
    want = np.concatenate([-np.ones(minus), np.ones(plus)])
    spectrum = np.abs(eig - want).max()
    trace = np.abs(np.trace(ops, axis1=1, axis2=2) - 1).max()
    flat = ops.reshape(d * d, d * d)
    # Tr[A A'] = sum_kj A[k,j] A'[j,k]; Hermiticity turns this into a Gram matrix
    gram = flat.conj() @ flat.T
    ortho = np.abs(gram - d * np.eye(d * d)).max()
    # covariance: T_u A(p,q) T_u^dagger = A(p + u1, q + u2)
    cov = 0.0
    if d <= 9:
        stacked = ops.reshape(d, d, d, d)
        for u1 in range(d):
            for u2 in range(d):
                t = pauli_op(d, u1, u2)
                moved = t @ stacked[0, 0] @ t.conj().T
                cov = max(cov, np.abs(moved - stacked[u1, u2]).max())

    residuals = {
        "hermiticity": float(herm),
        "spectrum": float(spectrum),
        "trace": float(trace),
        "orthogonality": float(ortho),
        "covariance": float(cov),
    }
    return AlgebraReport(d, residuals, {k: tol for k in residuals})
