"""Seeded samplers for Haar-random pure states and unitarily invariant mixed states.

Every sample is drawn from its own generator, keyed by ``(master_seed, index)``,
so a batch is the same whether it is produced serially, in chunks, or on
several threads.

Mixed-state ensembles:

``simple``   ``(1 - alpha) I / D + alpha |psi><psi|``, alpha fixed by a target
             entropy deficit
``average``  ``N^{-1} sum_j |psi_j><psi_j|`` over N independent Haar states
``reduced``  ``Tr_B |psi><psi|`` for a Haar state on ``d_A * d_B`` dimensions
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import InvalidDimensionError, check_dim
from .wigner import wigner_values

__all__ = [
    "SeededStream",
    "EnsembleSpec",
    "sample_haar_pure",
    "alpha_for_deficit",
    "sample_simple_mixture",
    "sample_average_mixture",
    "sample_reduced",
    "sample",
    "sample_batch",
    "map_indexed",
    "batch_statistics",
    "write_batch_csv",
    "BATCH_COLUMNS",
]

KINDS = ("simple", "average", "reduced")
BATCH_COLUMNS = ["sample_index", "d_a", "d_b_or_knob", "s2", "delta", "wigner_norm", "mana"]


@dataclass(frozen=True)
class SeededStream:
    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(seq))


def _rng(stream) -> np.random.Generator:
    if isinstance(stream, SeededStream):
        return stream.generator()
    if isinstance(stream, np.random.Generator):
        return stream
    raise TypeError(f"expected a SeededStream or numpy Generator, got {type(stream).__name__}")


def _gaussian_vectors(rng: np.random.Generator, shape) -> np.ndarray:
    z = rng.standard_normal((*shape, 2))
    return z[..., 0] + 1j * z[..., 1]


def sample_haar_pure(dim: int, stream) -> np.ndarray:
    """Haar-random unit vector: normalized i.i.d. complex Gaussians."""
    if dim < 2:
        raise InvalidDimensionError(f"Haar sampling needs D >= 2, got {dim}")
    v = _gaussian_vectors(_rng(stream), (dim,))
    return v / np.linalg.norm(v)


def alpha_for_deficit(dim: int, s2: float) -> float:
    """Mixing weight alpha giving ``(1-alpha) I/D + alpha |psi><psi|`` entropy ``s2``.

    Purity of that state is ``(1 - alpha^2) / D + alpha^2``.
    """
    purity = math.exp(-s2)
    lo = 1.0 / dim
    if purity < lo * (1 - 1e-12) or purity > 1 + 1e-12:
        raise ValueError(f"purity exp(-S2) = {purity} outside [1/D, 1] for D={dim}")
    frac = (purity - lo) / (1.0 - lo)
    return math.sqrt(min(max(frac, 0.0), 1.0))


def sample_simple_mixture(dim: int, target_delta: float, stream) -> np.ndarray:
    if not 0.0 <= target_delta <= math.log(dim) + 1e-12:
        raise ValueError(f"target deficit {target_delta} outside [0, ln {dim}]")
    alpha = alpha_for_deficit(dim, math.log(dim) - target_delta)
    psi = sample_haar_pure(dim, stream)
    return (1 - alpha) / dim * np.eye(dim) + alpha * np.outer(psi, psi.conj())


def sample_average_mixture(dim: int, n_states: int, stream) -> np.ndarray:
    if n_states < 1:
        raise ValueError(f"need at least one state in the mixture, got N={n_states}")
    if dim < 2:
        raise InvalidDimensionError(f"D must be >= 2, got {dim}")
    v = _gaussian_vectors(_rng(stream), (n_states, dim))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v.T @ v.conj() / n_states


def sample_reduced(d_a: int, d_b: int, stream) -> np.ndarray:
    check_dim(d_a)
    if d_b < 1:
        raise InvalidDimensionError(f"ancilla dimension must be >= 1, got {d_b}")
    m = sample_haar_pure(d_a * d_b, stream).reshape(d_a, d_b)
    return m @ m.conj().T


@dataclass(frozen=True)
class EnsembleSpec:
    """Which mixed-state ensemble to draw from and its control knob.

    ``knob`` is the target entropy deficit for ``simple``, the number of mixed
    states N for ``average`` and the ancilla dimension d_B for ``reduced``.
    ``kind="pure"`` draws Haar pure states (no knob).
    """

    kind: str
    dim: int
    knob: float | int | None = None

    def __post_init__(self):
        if self.kind not in KINDS + ("pure",):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.kind == "pure":
            if self.knob is not None:
                raise ValueError("pure ensemble takes no knob")
        elif self.knob is None:
            raise ValueError(f"ensemble {self.kind!r} needs a knob")
        if self.kind in ("average", "reduced") and (int(self.knob) != self.knob or self.knob < 1):
            raise ValueError(f"{self.kind} knob must be a positive integer, got {self.knob}")

    @property
    def is_pure(self) -> bool:
        return self.kind == "pure" or (self.kind == "reduced" and self.knob == 1)


def sample(spec: EnsembleSpec, stream) -> np.ndarray:
    """One draw from ``spec``; pure ensembles return a vector, the rest a matrix."""
    if spec.kind == "pure":
        return sample_haar_pure(spec.dim, stream)
    if spec.kind == "simple":
        return sample_simple_mixture(spec.dim, float(spec.knob), stream)
    if spec.kind == "average":
        return sample_average_mixture(spec.dim, int(spec.knob), stream)
    return sample_reduced(spec.dim, int(spec.knob), stream)


def map_indexed(fn: Callable[[int], object], indices, threads: int = 1) -> list:
    """``[fn(i) for i in indices]`` with optional threading; order is preserved."""
    indices = list(indices)
    if threads <= 1 or len(indices) < 2:
        return [fn(i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, indices))


def sample_batch(spec: EnsembleSpec, n: int, master_seed: int, *, start: int = 0,
                 threads: int = 1) -> np.ndarray:
    """Stack of ``n`` draws with streams ``start .. start + n - 1``."""
    draws = map_indexed(lambda i: sample(spec, SeededStream(master_seed, i)),
                        range(start, start + n), threads)
    return np.stack(draws)


def batch_statistics(spec: EnsembleSpec, n: int, master_seed: int, *, start: int = 0,
                     threads: int = 1, chunk: int = 2000) -> dict[str, np.ndarray]:
    """Per-sample S2, deficit, Wigner norm and mana for ``n`` draws."""
    s2, norm = [], []
    for lo in range(start, start + n, chunk):
        m = min(chunk, start + n - lo)
        states = sample_batch(spec, m, master_seed, start=lo, threads=threads)
        pure = states.ndim == 2
        w = wigner_values(states, pure=pure)
        norm.append(np.abs(w).sum(axis=(-1, -2)))
        if pure:
            s2.append(np.zeros(m))
        else:
            s2.append(-np.log(np.sum(np.abs(states) ** 2, axis=(-1, -2))))
    s2 = np.concatenate(s2)
    norm = np.concatenate(norm)
    return {
        "sample_index": np.arange(start, start + n),
        "s2": s2,
        "delta": math.log(spec.dim) - s2,
        "wigner_norm": norm,
        "mana": np.log(norm),
    }


def write_batch_csv(path, spec: EnsembleSpec, stats: dict[str, np.ndarray]) -> None:
    knob = "" if spec.knob is None else spec.knob
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BATCH_COLUMNS)
        for i in range(len(stats["sample_index"])):
            writer.writerow([
                int(stats["sample_index"][i]), spec.dim, knob,
                f"{stats['s2'][i]:.17g}", f"{stats['delta'][i]:.17g}",
                f"{stats['wigner_norm'][i]:.17g}", f"{stats['mana'][i]:.17g}",
            ])
