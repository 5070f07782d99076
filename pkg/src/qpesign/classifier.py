"""Sign classification from the phase-estimation ancilla MSB."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bounds import SpectralBounds, ZeroMatrixError, scale_constant
from .circuit import DimensionMismatchError, marginal_msb, run_qpe_statevector
from .hermitian import HermitianMatrix, eigen_decompose
from .labels import DefinitenessClass
from .phases import PhaseEnsemble, ensemble_distribution, sample_sigma_z, sigma_z_expectation


class InitStrategy(enum.Enum):
    RANDOM_COMPLEX = "random"
    FIXED_TRIPLE = "triple"


class PaddedUnsupportedError(ValueError):
    pass


@dataclass(frozen=True)
class QuantumConfig:
    n: int = 14            # ancilla qubits
    trials: int = 5        # independent initial vectors averaged
    shots: int = 100       # MSB measurements per trial
    delta: float = 0.98    # decision threshold on |mean sigma_z|
    guard: float = 1.0     # safety factor on the scale constant
    init: InitStrategy = InitStrategy.RANDOM_COMPLEX
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must lie in (0, 1]")
        if self.guard < 1.0:
            raise ValueError("guard must be >= 1")


def substream_seed(*parts) -> int:
    """Deterministic child seed from integer parts, via SeedSequence."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1, np.uint64)[0])


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent per-trial stream; trial t is the same stream no matter
    how many trials run or in what order."""
    return np.random.default_rng([seed, trial])


def random_b(padded_dim: int, original_dim: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex Gaussian vector on the original coordinates,
    zero on padding coordinates."""
    if not 1 <= original_dim <= padded_dim:
        raise ValueError("original_dim must lie in 1..padded_dim")
    while True:
        z = rng.standard_normal(original_dim) + 1j * rng.standard_normal(original_dim)
        nrm = float(np.linalg.norm(z))
        if nrm > 1e-12:
            break
    b = np.zeros(padded_dim, dtype=np.complex128)
    b[:original_dim] = z / nrm
    return b


def fixed_b_triple(n_system: int, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three deterministic initial vectors: first basis state, last
    basis state, uniform superposition. Defined only for unpadded
    power-of-two inputs; a padded matrix has no natural 'last' coordinate."""
    if d != 1 << n_system:
        raise PaddedUnsupportedError(
            f"fixed triple undefined for original dim {d} inside a {1 << n_system}-dim register"
        )
    e0 = np.zeros(d, dtype=np.complex128)
    e0[0] = 1.0
    e_last = np.zeros(d, dtype=np.complex128)
    e_last[-1] = 1.0
    uniform = np.full(d, 1.0 / math.sqrt(d), dtype=np.complex128)
    return e0, e_last, uniform


def verdict_from_sigma(mean_sigma: float, delta: float) -> DefinitenessClass:
    """mean sigma_z >= delta: every eigenvalue read as nonnegative;
    <= -delta: every eigenvalue negative; otherwise mixed signs."""
    if mean_sigma >= delta:
        return DefinitenessClass.POSITIVE_SEMIDEFINITE
    if mean_sigma <= -delta:
        return DefinitenessClass.NEGATIVE_DEFINITE
    return DefinitenessClass.INDEFINITE


@dataclass(frozen=True)
class QuantumVerdict:
    klass: DefinitenessClass
    mean_sigma: float
    per_trial_sigma: tuple[float, ...]


def classify_quantum(m: HermitianMatrix, bounds: SpectralBounds, cfg: QuantumConfig) -> QuantumVerdict:
    """Average shot-sampled sigma_z over cfg.trials initial vectors and
    threshold at cfg.delta.

    The matrix must already be padded to a power of two. A zero matrix has
    no phases to estimate and short-circuits to PositiveSemiDefinite with
    mean sigma_z = 1 (every readout is the zero phase).
    """
    d = m.dim
    n_sys = d.bit_length() - 1
    if d != 1 << n_sys:
        raise DimensionMismatchError(f"matrix dim {d} is not a power of two; pad first")

    try:
        scale = scale_constant(bounds, cfg.guard)
    except ZeroMatrixError:
        sig = tuple([1.0] * cfg.trials)
        return QuantumVerdict(DefinitenessClass.POSITIVE_SEMIDEFINITE, 1.0, sig)

    use_triple = cfg.init is InitStrategy.FIXED_TRIPLE and m.original_dim == d
    triple = fixed_b_triple(n_sys, d) if use_triple else None

    sigmas = []
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        b = triple[t % 3] if triple is not None else random_b(d, m.original_dim, rng)
        state = run_qpe_statevector(m, scale, cfg.n, b)
        _, p1 = marginal_msb(state)
        sigmas.append(sample_sigma_z(p1, cfg.shots, rng))
    mean = float(np.mean(sigmas))
    return QuantumVerdict(verdict_from_sigma(mean, cfg.delta), mean, tuple(sigmas))


def expected_sigma_exact(m: HermitianMatrix, scale: float, n: int, b: np.ndarray) -> float:
    """Analytic mean sigma_z for one initial vector: no circuit, no shots.

    Decompose M, turn eigenvalues into phases lambda/scale, weight each by
    |<v_i|b>|^2, and read sigma_z off the closed-form mixture. Matches the
    statevector marginal to rounding; used as an oracle and for fast sweeps.
    """
    spec = eigen_decompose(m)
    theta = spec.eigenvalues / scale
    w = np.abs(spec.eigenvectors.conj().T @ np.asarray(b, dtype=np.complex128)) ** 2
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError("b must be normalized")
    ens = PhaseEnsemble(theta, w / total)
    return sigma_z_expectation(ensemble_distribution(ens, n))
