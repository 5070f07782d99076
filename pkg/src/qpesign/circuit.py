"""Statevector simulation of the sign-reading phase estimation circuit.

Qubit convention: the flat amplitude index is x * 2^m + j, where j indexes
the 2^m-dimensional system register and x the n ancilla bits. Global bit 0
is the least significant; ancilla bit k lives at global bit m + k, so the
ancilla MSB (the sign bit after the inverse QFT) is the top global bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .hermitian import HermitianMatrix, eigen_decompose


class DimensionMismatchError(ValueError):
    pass


@dataclass
class Statevector:
    n_ancilla: int
    n_system: int
    amps: np.ndarray  # complex128, length 2^(n_ancilla + n_system)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def run_qpe_statevector(m: HermitianMatrix, scale: float, n: int, b: np.ndarray) -> Statevector:
    """Phase-estimate U = exp(i 2 pi M / scale) on state b with n ancillas.

    The controlled powers U^(2^k) are applied exactly: M is diagonalized
    once and each power gets its phases e^(i lambda t0 2^k) directly, so no
    product-formula error enters. Returns the post-inverse-QFT state.
    """
    if n < 1:
        raise ValueError("need at least one ancilla qubit")
    d = m.dim
    n_sys = d.bit_length() - 1
    if d != 1 << n_sys:
        raise DimensionMismatchError(f"system dimension {d} is not a power of two")
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if b.shape[0] != d:
        raise DimensionMismatchError(f"b has length {b.shape[0]}, matrix is {d}x{d}")
    if abs(float(np.linalg.norm(b)) - 1.0) > 1e-10:
        raise ValueError("b must be normalized")

    spec = eigen_decompose(m)
    v = spec.eigenvectors
    t0 = 2.0 * math.pi / scale

    amps = np.zeros((1 << n) * d, dtype=np.complex128)
    amps[:d] = b
    k = backend.kernels()
    for q in range(n):
        k.hadamard(amps, n_sys + q)
    for j in range(n):
        phases = np.exp(1j * (t0 * (1 << j)) * spec.eigenvalues)
        u = (v * phases) @ v.conj().T
        k.controlled_unitary(amps, n_sys + j, u)
    state = Statevector(n, n_sys, amps)
    return inverse_qft(state)


def inverse_qft(state: Statevector) -> Statevector:
    """In-place inverse quantum Fourier transform on the ancilla register."""
    k = backend.kernels()
    m, n, amps = state.n_system, state.n_ancilla, state.amps
    for t in range(n - 1, -1, -1):
        for c in range(t + 1, n):
            k.controlled_phase(amps, m + c, m + t, -math.pi / (1 << (c - t)))
        k.hadamard(amps, m + t)
    for q in range(n // 2):
        k.swap_bits(amps, m + q, m + n - 1 - q)
    return state


def ancilla_distribution(state: Statevector) -> np.ndarray:
    """Readout distribution over the 2^n ancilla outcomes (system traced out)."""
    prob = np.abs(state.amps) ** 2
    return prob.reshape(1 << state.n_ancilla, 1 << state.n_system).sum(axis=1)


def marginal_msb(state: Statevector) -> tuple[float, float]:
    """(p0, p1) for the ancilla's most significant bit."""
    prob = np.abs(state.amps) ** 2
    half = prob.shape[0] // 2
    p1 = float(prob[half:].sum())
    p0 = float(prob[:half].sum())
    return p0, p1
