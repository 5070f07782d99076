"""Hybrid pipeline routing, refinement, and metric aggregation."""
import numpy as np
import pytest

import qpesign.pipeline as pipeline
from qpesign import (
    CanonicalClass,
    DefinitenessClass,
    HybridVerdict,
    InconsistentRefinementError,
    QuantumConfig,
    Stage,
    classify_classical,
    classify_hybrid,
    classify_quantum_only,
    ground_truth_class,
    pad_to_power_of_two,
    refine_positive,
    score,
    score_labels,
    validate_hermitian,
)

PD = DefinitenessClass.POSITIVE_DEFINITE
PSD = DefinitenessClass.POSITIVE_SEMIDEFINITE
ND = DefinitenessClass.NEGATIVE_DEFINITE
NSD = DefinitenessClass.NEGATIVE_SEMIDEFINITE
IND = DefinitenessClass.INDEFINITE
UNC = DefinitenessClass.UNCLASSIFIED


def random_hermitian(rng, d=4):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return validate_hermitian((g + g.conj().T) / 2)


class TestRouting:
    def test_classically_conclusive_skips_quantum(self):
        v = classify_hybrid(np.diag([0.3, -0.2]), QuantumConfig(n=6, seed=0))
        assert v.klass is IND
        assert v.stage is Stage.CLASSICAL
        assert v.quantum is None
        assert not v.refined
        assert v.canonical is CanonicalClass.INDEFINITE

    def test_classically_ambiguous_reaches_quantum(self):
        m = np.diag([1.0, 0.5, 0.02])
        assert classify_classical(validate_hermitian(m)).klass is UNC
        v = classify_hybrid(m, QuantumConfig(n=12, trials=5, shots=100, seed=0))
        assert v.stage is Stage.QUANTUM
        assert v.quantum is not None
        assert v.klass is PSD
        assert v.classical.klass is UNC

    def test_accepts_raw_entries_and_validated_matrices(self):
        m = np.diag([0.3, -0.2])
        cfg = QuantumConfig(n=6, seed=0)
        assert classify_hybrid(m, cfg) == classify_hybrid(validate_hermitian(m), cfg)

    def test_rejects_non_hermitian_raw_entries(self):
        from qpesign import NotHermitianError

        with pytest.raises(NotHermitianError):
            classify_hybrid(np.array([[0.0, 1.0], [0.0, 0.0]]), QuantumConfig())

    def test_padding_is_transparent(self):
        m = validate_hermitian(np.diag([1.0, 0.5, 0.02]))
        cfg = QuantumConfig(n=10, trials=4, shots=60, seed=17)
        direct = classify_hybrid(m, cfg)
        pre_padded = classify_hybrid(pad_to_power_of_two(m), cfg)
        assert direct.klass is pre_padded.klass
        assert direct.stage is pre_padded.stage
        assert direct.quantum.mean_sigma == pre_padded.quantum.mean_sigma
        assert direct.quantum.per_trial_sigma == pre_padded.quantum.per_trial_sigma

    def test_stage_is_mirror_symmetric(self):
        rng = np.random.default_rng(8)
        cfg = QuantumConfig(n=6, trials=2, shots=20, seed=4)
        for _ in range(20):
            m = random_hermitian(rng)
            v = classify_hybrid(m, cfg)
            w = classify_hybrid(m.negated(), cfg)
            assert v.stage is w.stage
            if v.stage is Stage.CLASSICAL:
                flip = {PD: ND, ND: PD, PSD: NSD, NSD: PSD, IND: IND}
                assert w.klass is flip[v.klass]


class TestRefinement:
    def test_strictly_positive_refines_to_definite(self):
        v = classify_hybrid(
            np.diag([1.0, 0.5, 0.02]),
            QuantumConfig(n=12, trials=5, shots=100, seed=0),
            refine=True,
        )
        assert v.klass is PD
        assert v.refined
        assert v.stage is Stage.QUANTUM

    def test_zero_eigenvalue_stays_semidefinite(self):
        v = classify_hybrid(
            np.diag([1.0, 0.5, 0.0]),
            QuantumConfig(n=12, trials=5, shots=100, seed=2),
            refine=True,
        )
        assert v.klass is PSD
        assert v.refined

    def test_refine_off_by_default(self):
        v = classify_hybrid(
            np.diag([1.0, 0.5, 0.02]),
            QuantumConfig(n=12, trials=5, shots=100, seed=0),
        )
        assert v.klass is PSD
        assert not v.refined

    def test_refine_positive_rejects_negative_input(self):
        m = validate_hermitian(np.diag([-0.1, -0.2, -0.3, -0.4]))
        with pytest.raises(InconsistentRefinementError):
            refine_positive(m, QuantumConfig(n=10, trials=3, shots=100, seed=1))

    def test_contradictory_refinement_keeps_unrefined_verdict(self, monkeypatch):
        def boom(m, cfg):
            raise InconsistentRefinementError("forced")

        monkeypatch.setattr(pipeline, "refine_positive", boom)
        v = classify_hybrid(
            np.diag([1.0, 0.5, 0.02]),
            QuantumConfig(n=12, trials=5, shots=100, seed=0),
            refine=True,
        )
        assert v.klass is PSD
        assert not v.refined

    def test_refinement_uses_a_distinct_trial_stream(self):
        # the -M readout must not replay the +M shot stream, otherwise
        # correlated noise would cancel in the contradiction check
        m = validate_hermitian(np.diag([1.0, 0.5, 0.02]))
        cfg = QuantumConfig(n=12, trials=5, shots=100, seed=0)
        from qpesign.classifier import substream_seed

        assert substream_seed(cfg.seed, 1) != cfg.seed


class TestQuantumOnly:
    def test_forces_quantum_stage(self):
        m = np.diag([1.0, 2.0, 3.0, 4.0])
        assert classify_classical(validate_hermitian(m)).klass is PD
        v = classify_quantum_only(m, QuantumConfig(n=10, trials=5, shots=100, seed=3))
        assert v.stage is Stage.QUANTUM
        assert v.quantum is not None
        assert v.klass is PSD  # sign readout alone cannot separate definite from semi
        assert v.classical.klass is PD  # kept as a diagnostic

    def test_agrees_with_hybrid_when_classical_abstains(self):
        m = np.diag([1.0, 0.5, 0.02])
        cfg = QuantumConfig(n=10, trials=3, shots=50, seed=6)
        assert classify_quantum_only(m, cfg).quantum == classify_hybrid(m, cfg).quantum


class TestScoring:
    def test_hand_worked_metrics(self):
        """3 positives (2 right, 1 classically covered), 3 negatives
        (2 right, 2 covered), 4 indefinites (3 right, none covered)."""
        POSC, NEGC, INDC = (
            CanonicalClass.POSITIVE,
            CanonicalClass.NEGATIVE,
            CanonicalClass.INDEFINITE,
        )
        records = [
            (POSC, PSD, Stage.CLASSICAL),
            (POSC, PD, Stage.QUANTUM),
            (POSC, IND, Stage.QUANTUM),
            (NEGC, ND, Stage.CLASSICAL),
            (NEGC, ND, Stage.CLASSICAL),
            (NEGC, IND, Stage.QUANTUM),
            (INDC, IND, Stage.QUANTUM),
            (INDC, IND, Stage.QUANTUM),
            (INDC, IND, Stage.QUANTUM),
            (INDC, UNC, Stage.CLASSICAL),
        ]
        met = score_labels(records)
        assert met.total == 10
        assert met.accuracy == pytest.approx(0.7)
        assert met.recall[POSC] == pytest.approx(2 / 3)
        assert met.recall[NEGC] == pytest.approx(2 / 3)
        assert met.recall[INDC] == pytest.approx(3 / 4)
        assert met.coverage[POSC] == pytest.approx(1 / 3)
        assert met.coverage[NEGC] == pytest.approx(2 / 3)
        assert met.coverage[INDC] == 0.0  # UNCLASSIFIED at the classical stage is not coverage
        assert met.confusion[(POSC, CanonicalClass.POSITIVE)] == 2
        assert met.confusion[(POSC, CanonicalClass.INDEFINITE)] == 1
        assert met.confusion[(INDC, None)] == 1
        assert met.confusion[(INDC, CanonicalClass.INDEFINITE)] == 3

    def test_zero_support_classes_report_zero(self):
        met = score_labels([(CanonicalClass.POSITIVE, PD, Stage.QUANTUM)])
        assert met.recall[CanonicalClass.NEGATIVE] == 0.0
        assert met.coverage[CanonicalClass.NEGATIVE] == 0.0
        assert met.accuracy == 1.0

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            score_labels([])

    def test_score_wraps_verdicts(self):
        from qpesign import canonical

        rng = np.random.default_rng(12)
        cfg = QuantumConfig(n=8, trials=2, shots=40, seed=9)
        pairs = []
        for _ in range(12):
            m = random_hermitian(rng)
            truth = canonical(ground_truth_class(m))
            assert truth is not None
            pairs.append((truth, classify_hybrid(m, cfg)))
        scored = score(pairs)
        assert scored.total == 12
        assert 0.0 <= scored.accuracy <= 1.0
        assert sum(scored.confusion.values()) == 12
        assert scored == score_labels(
            [(t, v.klass, v.stage) for t, v in pairs]
        )
