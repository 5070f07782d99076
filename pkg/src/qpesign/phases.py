"""Closed-form phase-estimation readout distributions on the ancilla register."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_INT_TOL = 1e-12


def single_phase_distribution(theta: float, n: int) -> np.ndarray:
    """Probability of reading x in 0..2^n-1 from an n-bit register that
    phase-estimates a single eigenphase theta.

    p(x) = |sin(pi (2^n t - x)) / sin(pi (2^n t - x) / 2^n)|^2 / 2^(2n) with
    t = theta mod 1, collapsing to a Kronecker delta when 2^n t is an
    integer. Periodic in theta with period 1 by construction.
    """
    if n < 1:
        raise ValueError("register needs at least one bit")
    size = 1 << n
    t = theta % 1.0
    scaled = size * t
    nearest = round(scaled)
    if abs(scaled - nearest) < _INT_TOL:
        out = np.zeros(size)
        out[int(nearest) % size] = 1.0
        return out
    x = np.arange(size, dtype=np.float64)
    d = scaled - x
    num = np.sin(math.pi * d)
    den = np.sin(math.pi * d / size)
    out = (num / den) ** 2 / (size * size)
    return out


@dataclass(frozen=True)
class PhaseEnsemble:
    """Eigenphases theta_i in [-1/2, 1/2] with weights summing to 1."""

    phases: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        p = np.array(self.phases, dtype=np.float64, copy=True)
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if p.ndim != 1 or w.shape != p.shape:
            raise ValueError("phases and weights must be 1-d and the same length")
        if p.size == 0:
            raise ValueError("empty ensemble")
        if np.any(np.abs(p) > 0.5 + _INT_TOL):
            raise ValueError("phases must lie in [-1/2, 1/2]")
        if np.any(w < -1e-15):
            raise ValueError("weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        p.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "phases", p)
        object.__setattr__(self, "weights", w)


def ensemble_distribution(ensemble: PhaseEnsemble, n: int) -> np.ndarray:
    """Weighted mixture of single-phase readout distributions."""
    size = 1 << n
    out = np.zeros(size)
    for theta, w in zip(ensemble.phases, ensemble.weights):
        if w == 0.0:
            continue
        out += w * single_phase_distribution(float(theta), n)
    return out


def sigma_z_expectation(dist: np.ndarray) -> float:
    """<sigma_z> of the register's top bit: mass below 2^(n-1) minus mass at
    or above it. Nonnegative phases concentrate in the low half, negative
    phases (as their mod-1 aliases >= 1/2) in the high half."""
    size = dist.shape[0]
    if size < 2 or size & (size - 1):
        raise ValueError("distribution length must be a power of two, >= 2")
    half = size // 2
    return float(np.sum(dist[:half]) - np.sum(dist[half:]))


def sample_sigma_z(p_negative: float, shots: int, rng: np.random.Generator) -> float:
    """Shot-sampled sigma_z estimate given the probability of reading the
    top bit as 1. Always a multiple of 2/shots away from 1."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    ones = int(np.count_nonzero(rng.random(shots) < p_negative))
    return (shots - 2 * ones) / shots
