"""Two-stage hybrid pipeline: trace-bound cascade, then quantum sign readout."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .bounds import ClassicalVerdict, classify_classical, eigenvalue_bounds
from .classifier import QuantumConfig, QuantumVerdict, classify_quantum, substream_seed
from .hermitian import (
    DEFAULT_ATOL,
    DEFAULT_ZTOL,
    HermitianMatrix,
    pad_to_power_of_two,
    validate_hermitian,
)
from .labels import CanonicalClass, DefinitenessClass, canonical


class Stage(enum.Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class InconsistentRefinementError(RuntimeError):
    """Refinement of a nonnegative verdict saw -M as nonnegative too, which
    no spectrum satisfies away from zero; statistical contradiction."""


@dataclass(frozen=True)
class HybridVerdict:
    klass: DefinitenessClass
    stage: Stage
    classical: ClassicalVerdict
    quantum: Optional[QuantumVerdict] = None
    refined: bool = False

    @property
    def canonical(self) -> Optional[CanonicalClass]:
        return canonical(self.klass)


_REFINE_STREAM = 1


def refine_positive(m: HermitianMatrix, cfg: QuantumConfig) -> DefinitenessClass:
    """Split a nonnegative quantum verdict into definite vs semidefinite by
    classifying -M on a fresh trial stream.

    -M all-negative means M had no zero eigenvalue: PositiveDefinite.
    -M mixed means M has zeros alongside positives: PositiveSemiDefinite.
    -M nonnegative contradicts the verdict being refined.
    """
    neg = m.negated()
    neg_cfg = replace(cfg, seed=substream_seed(cfg.seed, _REFINE_STREAM))
    qv = classify_quantum(neg, eigenvalue_bounds(neg), neg_cfg)
    if qv.klass is DefinitenessClass.NEGATIVE_DEFINITE:
        return DefinitenessClass.POSITIVE_DEFINITE
    if qv.klass is DefinitenessClass.INDEFINITE:
        return DefinitenessClass.POSITIVE_SEMIDEFINITE
    raise InconsistentRefinementError(
        f"-M also read nonnegative (mean sigma_z {qv.mean_sigma:+.4f}); retry with larger n"
    )


def _as_matrix(m, atol: float) -> HermitianMatrix:
    if isinstance(m, HermitianMatrix):
        return m
    return validate_hermitian(m, atol)


def classify_hybrid(
    m,
    cfg: QuantumConfig,
    atol: float = DEFAULT_ATOL,
    ztol: float = DEFAULT_ZTOL,
    refine: bool = False,
) -> HybridVerdict:
    """Classical cascade first; quantum sign readout only if it abstains.

    Accepts raw entries or an already validated (possibly padded)
    HermitianMatrix. The classical verdict is computed on the original
    block; when the quantum stage runs on a larger padded matrix its scale
    constant is rebuilt from the padded spectrum, whose extra zero
    eigenvalue is genuine for the circuit.

    With refine=True a nonnegative quantum verdict is split into definite
    vs semidefinite via -M; if that second readout contradicts the first,
    the unrefined nonnegative verdict stands.
    """
    mat = _as_matrix(m, atol)
    cv = classify_classical(mat, ztol)
    if cv.klass is not DefinitenessClass.UNCLASSIFIED:
        return HybridVerdict(cv.klass, Stage.CLASSICAL, cv)

    padded = pad_to_power_of_two(mat)
    if padded.dim != mat.original_dim:
        bounds = eigenvalue_bounds(padded)
    else:
        bounds = cv.bounds
    qv = classify_quantum(padded, bounds, cfg)

    klass = qv.klass
    refined = False
    if refine and klass is DefinitenessClass.POSITIVE_SEMIDEFINITE:
        try:
            klass = refine_positive(padded, cfg)
            refined = True
        except InconsistentRefinementError:
            pass
    return HybridVerdict(klass, Stage.QUANTUM, cv, qv, refined)


def classify_quantum_only(
    m,
    cfg: QuantumConfig,
    atol: float = DEFAULT_ATOL,
    ztol: float = DEFAULT_ZTOL,
) -> HybridVerdict:
    """Force the quantum stage for every matrix; the classical verdict is
    still computed for diagnostics but never decides."""
    mat = _as_matrix(m, atol)
    cv = classify_classical(mat, ztol)
    padded = pad_to_power_of_two(mat)
    if padded.dim != mat.original_dim:
        bounds = eigenvalue_bounds(padded)
    else:
        bounds = cv.bounds
    qv = classify_quantum(padded, bounds, cfg)
    return HybridVerdict(qv.klass, Stage.QUANTUM, cv, qv)


@dataclass(frozen=True)
class Metrics:
    recall: dict          # CanonicalClass -> fraction of that class predicted correctly
    accuracy: float
    coverage: dict        # CanonicalClass -> fraction settled at the classical stage
    confusion: dict       # (true CanonicalClass, predicted CanonicalClass | None) -> count
    total: int


def score_labels(
    records: Iterable[tuple[CanonicalClass, DefinitenessClass, Stage]],
) -> Metrics:
    """Aggregate (truth, prediction, stage) triples into recall, accuracy,
    and per-class classical coverage. Unclassified predictions count as
    wrong and appear in the confusion table under None."""
    per_class: dict = {c: [0, 0, 0] for c in CanonicalClass}  # hits, total, classical
    confusion: dict = {}
    correct = 0
    total = 0
    for truth, predicted, stage in records:
        pred = canonical(predicted)
        row = per_class[truth]
        row[1] += 1
        if pred is truth:
            row[0] += 1
            correct += 1
        if stage is Stage.CLASSICAL and predicted is not DefinitenessClass.UNCLASSIFIED:
            row[2] += 1
        confusion[(truth, pred)] = confusion.get((truth, pred), 0) + 1
        total += 1
    if total == 0:
        raise ValueError("no records to score")
    recall = {c: (v[0] / v[1] if v[1] else 0.0) for c, v in per_class.items()}
    coverage = {c: (v[2] / v[1] if v[1] else 0.0) for c, v in per_class.items()}
    return Metrics(recall, correct / total, coverage, confusion, total)


def score(pairs: Iterable[tuple[CanonicalClass, HybridVerdict]]) -> Metrics:
    """Score labeled verdicts; see score_labels for the conventions."""
    return score_labels((truth, v.klass, v.stage) for truth, v in pairs)
