"""Trace-moment eigenvalue bounds and the classical definiteness cascade."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermitian import DEFAULT_ZTOL, HermitianMatrix
from .labels import DefinitenessClass


class ZeroMatrixError(ValueError):
    """Raised where a spectral scale is required but every eigenvalue is 0."""


def trace_moments(m: HermitianMatrix) -> tuple[float, float]:
    """(mean, spread) of the spectrum from the first two trace moments.

    r = tr(M)/N and s = sqrt(tr(M^2)/N - r^2), both O(N^2): tr(M^2) is the
    entrywise sum of M * M^T, no matrix product needed. s^2 is clamped at 0
    against rounding for near-scalar matrices.
    """
    a = m.entries
    n = a.shape[0]
    r = float(np.trace(a).real) / n
    tr2 = float(np.sum(a * a.T).real)
    s2 = tr2 / n - r * r
    s = math.sqrt(s2) if s2 > 0.0 else 0.0
    return r, s


@dataclass(frozen=True)
class SpectralBounds:
    """Wolkowicz-Styan style brackets for the extreme eigenvalues.

    low_min <= lambda_min <= low_max and high_min <= lambda_max <= high_max,
    derived only from the trace moments, so they depend on the spectrum
    alone and not on the eigenbasis.
    """

    low_min: float
    low_max: float
    high_min: float
    high_max: float
    mean: float
    spread: float

    def as_dict(self) -> dict:
        return {
            "low_min": self.low_min,
            "low_max": self.low_max,
            "high_min": self.high_min,
            "high_max": self.high_max,
            "mean": self.mean,
            "spread": self.spread,
        }


def eigenvalue_bounds(m: HermitianMatrix) -> SpectralBounds:
    """Bracket lambda_min and lambda_max from the first two trace moments.

    For N = 1 the brackets degenerate: all four limits equal the single
    eigenvalue r exactly.
    """
    r, s = trace_moments(m)
    n = m.dim
    if n == 1:
        return SpectralBounds(r, r, r, r, r, 0.0)
    root = math.sqrt(n - 1.0)
    return SpectralBounds(
        low_min=r - s * root,
        low_max=r - s / root,
        high_min=r + s / root,
        high_max=r + s * root,
        mean=r,
        spread=s,
    )


@dataclass(frozen=True)
class ClassicalVerdict:
    klass: DefinitenessClass
    bounds: SpectralBounds


def classify_classical(m: HermitianMatrix, ztol: float = DEFAULT_ZTOL) -> ClassicalVerdict:
    """Definiteness from the trace-moment brackets alone, where they decide.

    Operates on the original (pre-padding) block: padding injects a zero
    eigenvalue that says nothing about the input. The cascade checks the
    sure-thing cases in order; anything the brackets cannot settle is
    Unclassified and falls through to the quantum stage.
    """
    block = m.original_block()
    b = eigenvalue_bounds(block)
    if b.high_max < -ztol:
        klass = DefinitenessClass.NEGATIVE_DEFINITE
    elif b.high_max <= ztol:
        klass = DefinitenessClass.NEGATIVE_SEMIDEFINITE
    elif b.low_min > ztol:
        klass = DefinitenessClass.POSITIVE_DEFINITE
    elif b.low_min >= -ztol:
        klass = DefinitenessClass.POSITIVE_SEMIDEFINITE
    elif b.low_max < -ztol and b.high_min > ztol:
        klass = DefinitenessClass.INDEFINITE
    else:
        klass = DefinitenessClass.UNCLASSIFIED
    return ClassicalVerdict(klass, b)


def scale_constant(bounds: SpectralBounds, guard: float = 1.0) -> float:
    """Normalization constant C with |lambda|/C <= 1/(2*guard) guaranteed.

    C = guard * 2 * max(|low_min|, |high_max|). Symmetric in the spectrum's
    sign, so C(-M) == C(M) bit for bit. A zero matrix has no scale; callers
    that reach this with one should have short-circuited already.
    """
    if guard < 1.0:
        raise ValueError("guard must be >= 1 to keep phases inside [-1/2, 1/2]")
    hi = max(abs(bounds.low_min), abs(bounds.high_max))
    if hi == 0.0:
        raise ZeroMatrixError("zero matrix has no spectral scale")
    return guard * 2.0 * hi
