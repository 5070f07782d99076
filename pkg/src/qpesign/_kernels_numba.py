"""numba-jitted kernels, signature-compatible with _kernels_numpy."""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def hadamard(amps, bit):
    inv = 1.0 / math.sqrt(2.0)
    half = 1 << bit
    step = half << 1
    for base in range(0, amps.size, step):
        for off in range(half):
            i0 = base + off
            i1 = i0 + half
            a = amps[i0]
            b = amps[i1]
            amps[i0] = (a + b) * inv
            amps[i1] = (a - b) * inv


@njit(cache=True)
def controlled_phase(amps, bit_a, bit_b, angle):
    ph = complex(math.cos(angle), math.sin(angle))
    mask = (1 << bit_a) | (1 << bit_b)
    for i in range(amps.size):
        if i & mask == mask:
            amps[i] = amps[i] * ph


@njit(cache=True)
def swap_bits(amps, bit_a, bit_b):
    ma = 1 << bit_a
    mb = 1 << bit_b
    for i in range(amps.size):
        if (i & ma) and not (i & mb):
            j = (i ^ ma) | mb
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@njit(cache=True)
def controlled_unitary(amps, control_bit, u):
    ds = u.shape[0]
    m = 0
    while (1 << m) < ds:
        m += 1
    rbit = control_bit - m
    nrows = amps.size // ds
    tmp = np.empty(ds, np.complex128)
    for r in range(nrows):
        if (r >> rbit) & 1:
            base = r * ds
            for i in range(ds):
                acc = complex(0.0, 0.0)
                for j in range(ds):
                    acc += u[i, j] * amps[base + j]
                tmp[i] = acc
            for i in range(ds):
                amps[base + i] = tmp[i]


@njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            x = a[p, q]
            acc += x.real * x.real + x.imag * x.imag
    return math.sqrt(2.0 * acc)


@njit(cache=True)
def jacobi_rotations(a, v, max_sweeps, rel_tol):
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            x = a[i, j]
            fro += x.real * x.real + x.imag * x.imag
    fro = math.sqrt(fro)
    target = rel_tol * fro
    if fro == 0.0 or n < 2:
        return 0, 0.0, target
    skip = target / (2.0 * n * n)
    rp = np.empty(n, np.complex128)
    rq = np.empty(n, np.complex128)
    sweeps = 0
    while sweeps < max_sweeps:
        off = _off_norm(a)
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
                cu = c * u_ph
                for j in range(n):
                    rp[j] = a[p, j]
                    rq[j] = a[q, j]
                for j in range(n):
                    a[p, j] = c * rp[j] - su * rq[j]
                    a[q, j] = s * rp[j] + cu * rq[j]
                for j in range(n):
                    rp[j] = a[j, p]
                    rq[j] = a[j, q]
                suc = np.conj(su)
                cuc = np.conj(cu)
                for j in range(n):
                    a[j, p] = c * rp[j] - suc * rq[j]
                    a[j, q] = s * rp[j] + cuc * rq[j]
                a[p, q] = complex(0.0, 0.0)
                a[q, p] = complex(0.0, 0.0)
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
                for j in range(n):
                    rp[j] = v[j, p]
                    rq[j] = v[j, q]
                for j in range(n):
                    v[j, p] = c * rp[j] - suc * rq[j]
                    v[j, q] = s * rp[j] + cuc * rq[j]
        sweeps += 1
    return sweeps, _off_norm(a), target
