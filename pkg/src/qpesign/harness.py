"""Experiment harness: labeled samples, shared per-matrix evaluations, and
result tables for the recall/accuracy study."""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import classify_classical, eigenvalue_bounds
from .classifier import InitStrategy, QuantumConfig, classify_quantum, substream_seed, verdict_from_sigma
from .hermitian import LabeledMatrix, generate_sample, pad_to_power_of_two
from .labels import CanonicalClass, DefinitenessClass
from .pipeline import Stage, score_labels

MODES = ("hybrid", "quantum", "classical")

RESULT_COLUMNS = (
    "mode", "n", "delta",
    "recall_pos", "recall_neg", "recall_indef", "accuracy",
    "coverage_pos", "coverage_neg", "coverage_indef", "seconds",
)

SWEEP_COLUMNS = (
    "init", "mode", "n", "delta", "trials",
    "recall_pos", "recall_neg", "recall_indef", "accuracy", "seconds",
)


@dataclass(frozen=True)
class ExperimentPlan:
    count_per_class: int = 100
    dim: int = 4
    zero_fraction: float = 0.05
    zero_placement: str = "random"
    seed: int = 0
    n_grid: tuple = (4, 6, 8, 10, 12, 14)
    delta_grid: tuple = (0.98,)
    trials: int = 5
    shots: int = 100
    guard: float = 1.0
    init: InitStrategy = InitStrategy.RANDOM_COMPLEX
    modes: tuple = ("hybrid", "quantum")
    workers: int = 1

    def __post_init__(self):
        for m in self.modes:
            if m not in MODES:
                raise ValueError(f"unknown mode {m!r}")
        if not self.n_grid or not self.delta_grid:
            raise ValueError("n_grid and delta_grid must be nonempty")


def generate_plan_sample(plan: ExperimentPlan) -> list[LabeledMatrix]:
    """count_per_class matrices for each canonical class, positive first,
    then negative, then indefinite. Byte-identical for a given plan seed."""
    out = []
    for label in (CanonicalClass.POSITIVE, CanonicalClass.NEGATIVE, CanonicalClass.INDEFINITE):
        out.extend(
            generate_sample(
                label,
                plan.dim,
                plan.count_per_class,
                plan.seed,
                zero_fraction=plan.zero_fraction,
                zero_placement=plan.zero_placement,
            )
        )
    return out


@dataclass(frozen=True)
class MatrixEvaluation:
    """Everything later scoring needs about one matrix: the classical
    verdict plus the per-n quantum trial record. Thresholds are applied
    afterwards, so one evaluation serves every (mode, delta) combination."""

    index: int
    true_class: CanonicalClass
    classical_class: DefinitenessClass
    sigma: dict = field(default_factory=dict)            # n -> (mean, per-trial tuple)
    quantum_seconds: dict = field(default_factory=dict)  # n -> wall seconds
    classical_seconds: float = 0.0


def _evaluate_one(args) -> MatrixEvaluation:
    index, lm, mseed, n_grid, trials, shots, guard, init_value, delta0, quantum_always = args
    t0 = time.perf_counter()
    cv = classify_classical(lm.matrix)
    t_classical = time.perf_counter() - t0

    sigma: dict = {}
    secs: dict = {}
    if quantum_always or cv.klass is DefinitenessClass.UNCLASSIFIED:
        padded = pad_to_power_of_two(lm.matrix)
        bounds = eigenvalue_bounds(padded) if padded.dim != lm.matrix.original_dim else cv.bounds
        for n in n_grid:
            cfg = QuantumConfig(
                n=n, trials=trials, shots=shots, delta=delta0, guard=guard,
                init=InitStrategy(init_value), seed=mseed,
            )
            t0 = time.perf_counter()
            qv = classify_quantum(padded, bounds, cfg)
            secs[n] = time.perf_counter() - t0
            sigma[n] = (qv.mean_sigma, qv.per_trial_sigma)
    return MatrixEvaluation(index, lm.label, cv.klass, sigma, secs, t_classical)


def evaluate_sample(sample: list[LabeledMatrix], plan: ExperimentPlan) -> list[MatrixEvaluation]:
    """Per-matrix evaluations, identical no matter how many workers run.

    Each matrix gets its own seed substream derived from (plan.seed, index),
    so splitting the sample across processes cannot change any draw. The
    quantum stage is skipped for classically settled matrices unless a
    quantum-only table needs it everywhere.
    """
    quantum_always = "quantum" in plan.modes
    payloads = [
        (
            i, lm, substream_seed(plan.seed, i), tuple(plan.n_grid),
            plan.trials, plan.shots, plan.guard, plan.init.value,
            plan.delta_grid[0], quantum_always,
        )
        for i, lm in enumerate(sample)
    ]
    if plan.workers <= 1:
        return [_evaluate_one(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=plan.workers) as pool:
        chunk = max(1, len(payloads) // (plan.workers * 4))
        return list(pool.map(_evaluate_one, payloads, chunksize=chunk))


def _predict(ev: MatrixEvaluation, mode: str, n: int, delta: float):
    if mode == "classical":
        return ev.classical_class, Stage.CLASSICAL
    if mode == "hybrid" and ev.classical_class is not DefinitenessClass.UNCLASSIFIED:
        return ev.classical_class, Stage.CLASSICAL
    mean, _ = ev.sigma[n]
    return verdict_from_sigma(mean, delta), Stage.QUANTUM


@dataclass(frozen=True)
class ResultRow:
    mode: str
    n: int
    delta: float
    recall_pos: float
    recall_neg: float
    recall_indef: float
    accuracy: float
    coverage_pos: float
    coverage_neg: float
    coverage_indef: float
    seconds: float


def _metrics_row(records) -> tuple:
    met = score_labels(records)
    return (
        met.recall[CanonicalClass.POSITIVE],
        met.recall[CanonicalClass.NEGATIVE],
        met.recall[CanonicalClass.INDEFINITE],
        met.accuracy,
        met.coverage[CanonicalClass.POSITIVE],
        met.coverage[CanonicalClass.NEGATIVE],
        met.coverage[CanonicalClass.INDEFINITE],
    )


def _row_seconds(evals, mode: str, n: int) -> float:
    t = sum(ev.classical_seconds for ev in evals)
    if mode == "classical":
        return t
    if mode == "quantum":
        return t + sum(ev.quantum_seconds.get(n, 0.0) for ev in evals)
    return t + sum(
        ev.quantum_seconds.get(n, 0.0)
        for ev in evals
        if ev.classical_class is DefinitenessClass.UNCLASSIFIED
    )


def rows_from_evaluations(evals: list[MatrixEvaluation], plan: ExperimentPlan) -> list[ResultRow]:
    """One row per (mode, n, delta) grid point, re-thresholding the shared
    evaluations; no quantum work is repeated across grid points."""
    rows = []
    for mode in plan.modes:
        for n in plan.n_grid:
            for delta in plan.delta_grid:
                recs = [(ev.true_class,) + _predict(ev, mode, n, delta) for ev in evals]
                rows.append(ResultRow(mode, n, delta, *_metrics_row(recs), _row_seconds(evals, mode, n)))
    return rows


def records_from_evaluations(
    evals: list[MatrixEvaluation], plan: ExperimentPlan, mode: Optional[str] = None
) -> list[dict]:
    """Per-matrix JSONL records for one mode across the (n, delta) grid."""
    if mode is None:
        mode = "hybrid" if "hybrid" in plan.modes else plan.modes[0]
    out = []
    for n in plan.n_grid:
        for delta in plan.delta_grid:
            for ev in evals:
                predicted, stage = _predict(ev, mode, n, delta)
                mean, per_trial = ev.sigma.get(n, (None, None))
                out.append(
                    {
                        "id": ev.index,
                        "true_class": ev.true_class.value,
                        "predicted_class": predicted.value,
                        "stage": stage.value,
                        "mean_sigma": mean,
                        "per_trial_sigma": list(per_trial) if per_trial is not None else None,
                        "n": n,
                        "delta": delta,
                        "seed": plan.seed,
                    }
                )
    return out


def run_benchmark(
    plan: ExperimentPlan, sample: Optional[list[LabeledMatrix]] = None
) -> tuple[list[ResultRow], list[dict]]:
    """Evaluate a sample once and emit every requested table plus records."""
    if sample is None:
        sample = generate_plan_sample(plan)
    evals = evaluate_sample(sample, plan)
    return rows_from_evaluations(evals, plan), records_from_evaluations(evals, plan)


@dataclass(frozen=True)
class SweepRow:
    init: str
    mode: str
    n: int
    delta: float
    trials: int
    recall_pos: float
    recall_neg: float
    recall_indef: float
    accuracy: float
    seconds: float


def run_trial_sweep(
    plan: ExperimentPlan, sample: Optional[list[LabeledMatrix]] = None
) -> list[SweepRow]:
    """Recall as a function of trial count 1..plan.trials.

    Evaluates once at the full trial count and rescored each prefix: the
    per-trial streams are position-keyed, so the first t trials of a
    trials=T run are exactly a trials=t run. Seconds are the evaluation
    cost attributed proportionally to the prefix length.
    """
    if sample is None:
        sample = generate_plan_sample(plan)
    mode = plan.modes[0]
    if mode == "classical":
        raise ValueError("trial sweep needs a quantum-backed mode")
    evals = evaluate_sample(sample, plan)
    rows = []
    for n in plan.n_grid:
        for delta in plan.delta_grid:
            full_secs = _row_seconds(evals, mode, n)
            for t in range(1, plan.trials + 1):
                recs = []
                for ev in evals:
                    if mode != "quantum" and ev.classical_class is not DefinitenessClass.UNCLASSIFIED:
                        recs.append((ev.true_class, ev.classical_class, Stage.CLASSICAL))
                        continue
                    _, per_trial = ev.sigma[n]
                    mean = sum(per_trial[:t]) / t
                    recs.append((ev.true_class, verdict_from_sigma(mean, delta), Stage.QUANTUM))
                met = score_labels(recs)
                rows.append(
                    SweepRow(
                        plan.init.value, mode, n, delta, t,
                        met.recall[CanonicalClass.POSITIVE],
                        met.recall[CanonicalClass.NEGATIVE],
                        met.recall[CanonicalClass.INDEFINITE],
                        met.accuracy,
                        full_secs * t / plan.trials,
                    )
                )
    return rows


def _write_csv(path, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([getattr(r, c) for c in columns])


def write_result_csv(path, rows: list[ResultRow]) -> None:
    """Header plus one row per grid point; floats via repr so the table
    parses back to the exact values."""
    _write_csv(path, RESULT_COLUMNS, rows)


def write_sweep_csv(path, rows: list[SweepRow]) -> None:
    _write_csv(path, SWEEP_COLUMNS, rows)


def read_result_csv(path) -> list[ResultRow]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != list(RESULT_COLUMNS):
            raise ValueError(f"unexpected result table header: {reader.fieldnames}")
        for row in reader:
            out.append(
                ResultRow(
                    row["mode"], int(row["n"]), float(row["delta"]),
                    float(row["recall_pos"]), float(row["recall_neg"]),
                    float(row["recall_indef"]), float(row["accuracy"]),
                    float(row["coverage_pos"]), float(row["coverage_neg"]),
                    float(row["coverage_indef"]), float(row["seconds"]),
                )
            )
    return out
