"""Monte Carlo realization of per-slab weather states.

Each slab independently picks one state per sample with probability ``eta``.
The uniform deviate for ``(seed, slab j, sample i)`` is output ``i`` of a
Philox stream keyed by ``(seed, j)``. Philox is counter-based, so any chunk
of samples can be regenerated in isolation and results do not depend on how
the sample range is split or scheduled.

The closed-form effective transmittance equals ``exp(E[ln h])``; the mean
transmittance ``E[h]`` is always at least as large (Jensen).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..atmosphere import AtmosphereProfile, require_valid, secant
from ..errors import DomainError

__all__ = [
    "MonteCarloStats",
    "Realization",
    "slab_uniforms",
    "draw_state_indices",
    "sample_realization",
    "monte_carlo",
]

_U64 = 2**64
_BLOCK = 4  # Philox4x64 emits four 64-bit words per counter step


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not (0 <= seed < _U64):
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _slab_key(seed: int, slab_index: int) -> np.ndarray:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(slab_index,))
    return ss.generate_state(2, dtype=np.uint64)


def slab_uniforms(seed: int, slab_index: int, start: int, count: int) -> np.ndarray:
    """Uniform deviates in [0, 1) for samples ``start .. start+count-1`` of one slab."""
    seed = _check_seed(seed)
    if start < 0 or count < 0:
        raise DomainError("start and count must be non-negative")
    block, offset = divmod(start, _BLOCK)
    bitgen = np.random.Philox(key=_slab_key(seed, slab_index), counter=block)
    raw = bitgen.random_raw(count + offset)[offset:]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 2**53)


def _cumulative(profile: AtmosphereProfile) -> list[np.ndarray]:
    cums = []
    for slab in profile.slabs:
        c = np.cumsum([s.probability for s in slab.states])
        cums.append(c / c[-1])
    return cums


def draw_state_indices(
    profile: AtmosphereProfile, seed: int, start: int, count: int
) -> np.ndarray:
    """State index chosen in each slab for each sample, shape ``(count, N)``."""
    out = np.empty((count, len(profile.slabs)), dtype=np.intp)
    for j, cum in enumerate(_cumulative(profile)):
        u = slab_uniforms(seed, j, start, count)
        idx = np.searchsorted(cum, u, side="right")
        out[:, j] = np.minimum(idx, len(cum) - 1)
    return out


def _slab_optical_depths(profile: AtmosphereProfile) -> list[np.ndarray]:
    # omega * dL per state, same operation order as the closed form uses
    mode = profile.mode
    return [
        np.array([s.attenuation.in_mode(mode) * slab.delta_km for s in slab.states])
        for slab in profile.slabs
    ]


def _log_transmittance(
    profile: AtmosphereProfile, sec: float, indices: np.ndarray
) -> np.ndarray:
    total = np.zeros(indices.shape[0])
    for j, depths in enumerate(_slab_optical_depths(profile)):
        total += depths[indices[:, j]]
    return -(sec * total)


@dataclass(frozen=True)
class Realization:
    labels: tuple[str, ...]
    transmittance: float


def sample_realization(
    profile: AtmosphereProfile, zenith_deg: float, seed: int, sample_index: int = 0
) -> Realization:
    """Draw one joint state assignment and its transmittance."""
    sec = secant(zenith_deg)
    require_valid(profile)
    idx = draw_state_indices(profile, seed, sample_index, 1)
    labels = tuple(slab.states[k].label for slab, k in zip(profile.slabs, idx[0]))
    log_h = _log_transmittance(profile, sec, idx)[0]
    return Realization(labels, math.exp(log_h))


@dataclass(frozen=True)
class MonteCarloStats:
    samples: int
    mean_transmittance: float
    geometric_mean_transmittance: float
    quantiles: dict[str, float]
    seed: int
    log_mean: float
    log_std: float

    @property
    def log_standard_error(self) -> float:
        return self.log_std / math.sqrt(self.samples)


def monte_carlo(
    profile: AtmosphereProfile,
    zenith_deg: float,
    n: int,
    seed: int,
    *,
    chunk_size: int = 1 << 16,
) -> MonteCarloStats:
    """Sample ``n`` state realizations and summarise their transmittance.

    ``chunk_size`` bounds memory only; it has no effect on the result.
    """
    n = int(n)
    if n < 1:
        raise DomainError("sample count must be >= 1")
    if chunk_size < 1:
        raise DomainError("chunk_size must be >= 1")
    seed = _check_seed(seed)
    sec = secant(zenith_deg)
    require_valid(profile)

    parts = []
    for start in range(0, n, chunk_size):
        count = min(chunk_size, n - start)
        idx = draw_state_indices(profile, seed, start, count)
        parts.append(_log_transmittance(profile, sec, idx))
    log_h = np.concatenate(parts)
    h = np.exp(log_h)

    # shifted means: exact when every sample is identical
    l0 = log_h[0]
    log_mean = float(l0 + np.mean(log_h - l0))
    h0 = h[0]
    mean = float(h0 + np.mean(h - h0))
    log_std = float(np.std(log_h, ddof=1)) if n > 1 else 0.0
    q05, q50, q95 = np.quantile(h, [0.05, 0.5, 0.95])
    return MonteCarloStats(
        samples=n,
        mean_transmittance=mean,
        geometric_mean_transmittance=math.exp(log_mean),
        quantiles={"p05": float(q05), "p50": float(q50), "p95": float(q95)},
        seed=seed,
        log_mean=log_mean,
        log_std=log_std,
    )
