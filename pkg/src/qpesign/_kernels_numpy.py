"""Pure-numpy reference kernels.

Every function here has a numba twin in _kernels_numba.py with the same
signature and in-place semantics; backend.py picks which module is active.
Statevectors are flat complex128 arrays, qubit ``bit`` 0 is the least
significant bit of the flat index.
"""
from __future__ import annotations

import math

import numpy as np

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def hadamard(amps: np.ndarray, bit: int) -> None:
    view = amps.reshape(-1, 2, 1 << bit)
    a = view[:, 0, :]
    b = view[:, 1, :]
    s = (a + b) * _INV_SQRT2
    d = (a - b) * _INV_SQRT2
    view[:, 0, :] = s
    view[:, 1, :] = d


def controlled_phase(amps: np.ndarray, bit_a: int, bit_b: int, angle: float) -> None:
    """Multiply amplitudes with both bits set by exp(i*angle)."""
    hi, lo = (bit_a, bit_b) if bit_a > bit_b else (bit_b, bit_a)
    view = amps.reshape(-1, 2, (1 << hi) >> (lo + 1), 2, 1 << lo)
    view[:, 1, :, 1, :] *= complex(math.cos(angle), math.sin(angle))


def swap_bits(amps: np.ndarray, bit_a: int, bit_b: int) -> None:
    hi, lo = (bit_a, bit_b) if bit_a > bit_b else (bit_b, bit_a)
    view = amps.reshape(-1, 2, (1 << hi) >> (lo + 1), 2, 1 << lo)
    tmp = view[:, 0, :, 1, :].copy()
    view[:, 0, :, 1, :] = view[:, 1, :, 0, :]
    view[:, 1, :, 0, :] = tmp


def controlled_unitary(amps: np.ndarray, control_bit: int, u: np.ndarray) -> None:
    """Apply u to the low register wherever the control bit is set.

    u acts on the lowest m bits (u is 2^m x 2^m); control_bit must be >= m.
    """
    ds = u.shape[0]
    rbit = control_bit - ds.bit_length() + 1  # control_bit - m
    view = amps.reshape(-1, 2, 1 << rbit, ds)
    view[:, 1, :, :] = view[:, 1, :, :] @ u.T


def jacobi_rotations(a: np.ndarray, v: np.ndarray, max_sweeps: int, rel_tol: float):
    """Cyclic complex Jacobi diagonalization, in place.

    a is overwritten with a (numerically) diagonal matrix, v accumulates the
    unitary so that original = v @ a @ v^H. Returns (sweeps, off, target)
    where off is the final off-diagonal Frobenius norm and target the
    convergence threshold; the caller decides whether off <= target is good
    enough.
    """
    n = a.shape[0]
    fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    target = rel_tol * fro
    if fro == 0.0 or n < 2:
        return 0, 0.0, target
    skip = target / (2.0 * n * n)
    sweeps = 0
    while sweeps < max_sweeps:
        off = math.sqrt(2.0 * float(np.sum(np.abs(np.triu(a, 1)) ** 2)))
        if off <= target:
            return sweeps, off, target
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                h = abs(apq)
                if h <= skip:
                    continue
                u_ph = apq / h
                tau = (a[q, q].real - a[p, p].real) / (2.0 * h)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                su = s * u_ph
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - su * rq
                a[q, :] = s * rp + c * u_ph * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - np.conj(su) * cq
                a[:, q] = s * cp + c * np.conj(u_ph) * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - np.conj(su) * vq
                v[:, q] = s * vp + c * np.conj(u_ph) * vq
        sweeps += 1
    off = math.sqrt(2.0 * float(np.sum(np.abs(np.triu(a, 1)) ** 2)))
    return sweeps, off, target
