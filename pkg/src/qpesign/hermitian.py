"""Matrix core: validation, the Jacobi eigen-oracle, padding, exponentials,
and class-labeled random sample generation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .labels import CanonicalClass, DefinitenessClass, canonical

DEFAULT_ATOL = 1e-10
DEFAULT_ZTOL = 1e-10

_MAX_SWEEPS = 100
_JACOBI_RTOL = 1e-13


class NonSquareError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class NoConvergenceError(RuntimeError):
    pass


def _frozen_copy(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense Hermitian matrix plus its pre-padding dimension.

    original_dim < dim means rows/columns past original_dim are zero padding
    added to reach a power-of-two size; they carry no information about the
    matrix being classified.
    """

    entries: np.ndarray
    original_dim: int

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_copy(self.entries))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def original_block(self) -> "HermitianMatrix":
        d = self.original_dim
        if d == self.dim:
            return self
        return HermitianMatrix(self.entries[:d, :d], d)

    def negated(self) -> "HermitianMatrix":
        return HermitianMatrix(-self.entries, self.original_dim)


def validate_hermitian(entries, atol: float = DEFAULT_ATOL) -> HermitianMatrix:
    """Certify a square complex matrix as Hermitian within atol (relative to
    the largest entry magnitude)."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NonSquareError(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > atol * scale:
        raise NotHermitianError(
            f"max |M - M^H| = {dev:.3e} exceeds {atol:.1e} * max|entry| = {atol * scale:.3e}"
        )
    return HermitianMatrix(m, m.shape[0])


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray   # ascending, real
    eigenvectors: np.ndarray  # orthonormal columns, eigenvectors[:, i] <-> eigenvalues[i]

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=np.float64, copy=True)
        w.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", _frozen_copy(self.eigenvectors))


def eigen_decompose(m: HermitianMatrix) -> Spectrum:
    """Full eigendecomposition by cyclic complex Jacobi rotations.

    Deterministic for a given matrix: fixed row-major sweep order, stable
    sort of the eigenvalues. This is the ground-truth oracle the rest of the
    package leans on, so it stays dependency-free.
    """
    a = np.array(m.entries, dtype=np.complex128, copy=True)
    v = np.eye(m.dim, dtype=np.complex128)
    sweeps, off, target = backend.kernels().jacobi_rotations(a, v, _MAX_SWEEPS, _JACOBI_RTOL)
    if off > target:
        raise NoConvergenceError(
            f"Jacobi sweep cap ({_MAX_SWEEPS}) hit with off-diagonal norm {off:.3e}"
        )
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order])


def ground_truth_class(m: HermitianMatrix, ztol: float = DEFAULT_ZTOL) -> DefinitenessClass:
    """Brute-force definiteness from the eigen-oracle.

    Padding rows are excluded: only the original_dim x original_dim block is
    decomposed. Eigenvalues within ztol of zero count as zero; a matrix that
    is entirely zero lands in PositiveSemiDefinite by convention (matching
    the quantum stage's zero-matrix short circuit).
    """
    lam = eigen_decompose(m.original_block()).eigenvalues
    has_pos = bool(np.any(lam > ztol))
    has_neg = bool(np.any(lam < -ztol))
    if has_pos and has_neg:
        return DefinitenessClass.INDEFINITE
    if has_pos:
        if np.all(lam > ztol):
            return DefinitenessClass.POSITIVE_DEFINITE
        return DefinitenessClass.POSITIVE_SEMIDEFINITE
    if has_neg:
        if np.all(lam < -ztol):
            return DefinitenessClass.NEGATIVE_DEFINITE
        return DefinitenessClass.NEGATIVE_SEMIDEFINITE
    return DefinitenessClass.POSITIVE_SEMIDEFINITE


def pad_to_power_of_two(m: HermitianMatrix) -> HermitianMatrix:
    """Embed into the next 2^k dimension with zero rows/columns."""
    d = m.dim
    n = 1 << max(d - 1, 0).bit_length() if d > 1 else 1
    if n == d:
        return m
    out = np.zeros((n, n), dtype=np.complex128)
    out[:d, :d] = m.entries
    return HermitianMatrix(out, m.original_dim)


def matrix_exponential_unitary(m: HermitianMatrix, t: float) -> np.ndarray:
    """U = exp(i t M) via the eigen-oracle; exactly unitary up to rounding."""
    spec = eigen_decompose(m)
    phases = np.exp(1j * t * spec.eigenvalues)
    v = spec.eigenvectors
    return (v * phases) @ v.conj().T


def _gram_schmidt_unitary(g: np.ndarray) -> np.ndarray:
    """Orthonormalize columns by modified Gram-Schmidt.

    The R diagonal of the implied QR factorization is real positive, which
    pins the column phases and makes the unitary a deterministic function of
    the Gaussian draw.
    """
    n = g.shape[0]
    q = np.zeros_like(g)
    for j in range(n):
        v = g[:, j].copy()
        for i in range(j):
            v -= (np.vdot(q[:, i], v)) * q[:, i]
        nrm = float(np.linalg.norm(v))
        if nrm < 1e-12:
            raise RuntimeError("degenerate Gaussian draw in unitary construction")
        q[:, j] = v / nrm
    return q


@dataclass(frozen=True)
class LabeledMatrix:
    matrix: HermitianMatrix
    label: CanonicalClass


def _draw_eigenvalues(label: CanonicalClass, dim: int, rng, ztol: float) -> np.ndarray:
    if label is CanonicalClass.POSITIVE:
        return rng.uniform(0.0, 1.0, dim)
    if label is CanonicalClass.NEGATIVE:
        return rng.uniform(-1.0, 0.0, dim)
    # indefinite: rejection-sample until both signs are clearly present
    while True:
        lam = rng.uniform(-1.0, 1.0, dim)
        if np.any(lam > ztol) and np.any(lam < -ztol):
            return lam


def generate_sample(
    label: CanonicalClass,
    dim: int,
    count: int,
    seed,
    zero_fraction: float = 0.05,
    zero_placement: str = "random",
    ztol: float = DEFAULT_ZTOL,
) -> list[LabeledMatrix]:
    """Random Hermitian matrices with a known canonical class.

    Built as V diag(lam) V^H with V an orthonormalized complex Gaussian
    matrix. Positive class draws lam from [0,1) and forces one eigenvalue to
    exactly 0 on a zero_fraction subset (zero_placement picks which one:
    a uniformly random index, or the smallest). Negative draws from [-1,0),
    indefinite from [-1,1) rejection-sampled until both signs appear.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0.0 <= zero_fraction <= 1.0:
        raise ValueError("zero_fraction must lie in [0,1]")
    if zero_placement not in ("random", "smallest"):
        raise ValueError(f"unknown zero_placement {zero_placement!r}")
    if label is CanonicalClass.INDEFINITE and dim < 2:
        raise ValueError("indefinite class needs dim >= 2")

    rng = np.random.default_rng([seed, _CLASS_STREAM[label]])
    forced = set()
    if label is CanonicalClass.POSITIVE and zero_fraction > 0.0:
        k = int(round(count * zero_fraction))
        if k:
            forced = set(rng.choice(count, size=min(k, count), replace=False).tolist())

    out = []
    for i in range(count):
        lam = _draw_eigenvalues(label, dim, rng, ztol)
        if i in forced:
            j = int(rng.integers(dim)) if zero_placement == "random" else int(np.argmin(lam))
            lam[j] = 0.0
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        v = _gram_schmidt_unitary(g)
        entries = (v * lam) @ v.conj().T
        entries = (entries + entries.conj().T) / 2.0  # scrub rounding asymmetry
        m = HermitianMatrix(entries, dim)
        got = canonical(ground_truth_class(m, ztol))
        if got is not label:
            raise RuntimeError(f"generator produced a {got} matrix for class {label}")
        out.append(LabeledMatrix(m, label))
    return out


_CLASS_STREAM = {
    CanonicalClass.POSITIVE: 0,
    CanonicalClass.NEGATIVE: 1,
    CanonicalClass.INDEFINITE: 2,
}
