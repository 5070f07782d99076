"""Selects the hot-kernel implementation (numba jit vs pure numpy).

The QPESIGN_BACKEND environment variable picks the backend at import time
("numba" or "numpy"); without it, numba is used when importable. Tests and
benchmarks can switch at runtime via select_backend().
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_numpy

ENV_FLAG = "QPESIGN_BACKEND"

_modules = {"numpy": _kernels_numpy}
try:
    from . import _kernels_numba

    _modules["numba"] = _kernels_numba
except ImportError:  # pragma: no cover - numba is an install dependency
    pass


def _default_name() -> str:
    return "numba" if "numba" in _modules else "numpy"


def select_backend(name: str | None = None):
    """Switch the active kernel set; None restores the env/default choice."""
    global _active_name
    if name is None:
        name = os.environ.get(ENV_FLAG, "").strip().lower() or _default_name()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}, expected 'numba' or 'numpy'")
    if name not in _modules:
        raise RuntimeError(f"backend {name!r} is not importable here")
    _active_name = name
    return _modules[name]


def kernels():
    return _modules[_active_name]


def backend_name() -> str:
    return _active_name


def get_module(name: str):
    """Direct access to one backend's kernels (for cross-checking them)."""
    if name not in _modules:
        raise RuntimeError(f"backend {name!r} is not importable here")
    return _modules[name]


def available_backends() -> tuple:
    return tuple(sorted(_modules))


def warmup() -> None:
    """Run every kernel once on tiny inputs so jit compilation cost is paid
    up front instead of inside timed sections."""
    k = kernels()
    amps = np.zeros(8, np.complex128)
    amps[0] = 1.0
    k.hadamard(amps, 2)
    k.controlled_phase(amps, 2, 1, -0.5)
    k.swap_bits(amps, 2, 1)
    u = np.eye(2, dtype=np.complex128)
    k.controlled_unitary(amps, 1, u)
    a = np.array([[1.0, 0.5j], [-0.5j, -1.0]], dtype=np.complex128)
    v = np.eye(2, dtype=np.complex128)
    k.jacobi_rotations(a, v, 100, 1e-13)


select_backend()
