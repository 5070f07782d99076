"""Command line front end.

Every flag's default can be overridden by an environment variable named
QPESIGN_<FLAG> with dashes as underscores (e.g. QPESIGN_SEED=7,
QPESIGN_N="4,6,8"); an explicit flag still wins.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import backend
from .bounds import classify_classical
from .classifier import InitStrategy, QuantumConfig
from .harness import (
    ExperimentPlan,
    records_from_evaluations,
    run_benchmark,
    run_trial_sweep,
    write_result_csv,
    write_sweep_csv,
)
from .hermitian import NonSquareError, NotHermitianError, generate_sample
from .labels import CanonicalClass, canonical
from .matrixio import FormatError, read_matrix_file, read_sample, write_records_jsonl, write_sample
from .pipeline import classify_hybrid, classify_quantum_only


def _env(name: str):
    return os.environ.get("QPESIGN_" + name.upper().replace("-", "_"))


class _BadEnv:
    """Deferred env-var parse failure. Building the parser touches every
    subcommand's defaults, so a value that is only malformed for some other
    subcommand (e.g. a list where classify wants a scalar) must not fail
    until the flag is actually used as a default."""

    def __init__(self, var: str, err):
        self.var = var
        self.err = err


def _envd(name: str, fallback, cast=str):
    v = _env(name)
    if v is None:
        return fallback
    try:
        return cast(v)
    except (TypeError, ValueError) as e:
        return _BadEnv("QPESIGN_" + name.upper().replace("-", "_"), e)


def _split_list(cast):
    def parse(text: str):
        parts = [p for chunk in text.split(",") for p in chunk.split()]
        return tuple(cast(p) for p in parts)
    return parse


def _add_quantum_flags(p: argparse.ArgumentParser, multi_n: bool):
    if multi_n:
        p.add_argument(
            "--n", type=int, nargs="+", metavar="N",
            default=_envd("n", (4, 6, 8, 10, 12, 14), _split_list(int)),
            help="ancilla register sizes (default: 4 6 8 10 12 14)",
        )
    else:
        p.add_argument("--n", type=int, default=_envd("n", 14, int),
                       help="ancilla register size (default: 14)")
    p.add_argument("--trials", type=int, default=_envd("trials", 5, int),
                   help="initial vectors averaged per matrix (default: 5)")
    p.add_argument("--shots", type=int, default=_envd("shots", 100, int),
                   help="top-bit measurements per trial (default: 100)")
    p.add_argument("--guard", type=float, default=_envd("guard", 1.0, float),
                   help="safety factor on the scale constant (default: 1.0)")
    p.add_argument("--init", choices=[s.value for s in InitStrategy],
                   default=_envd("init", "random"),
                   help="initial vector strategy (default: random)")
    p.add_argument("--seed", type=int, default=_envd("seed", 0, int),
                   help="master seed (default: 0)")


def _add_sample_flags(p: argparse.ArgumentParser):
    p.add_argument("--sample", default=_envd("sample", None),
                   help="labeled sample file; omitted means generate in place")
    p.add_argument("--count-per-class", type=int,
                   default=_envd("count-per-class", 100, int),
                   help="matrices per class when generating (default: 100)")
    p.add_argument("--dim", type=int, default=_envd("dim", 4, int),
                   help="matrix dimension when generating (default: 4)")
    p.add_argument("--zero-fraction", type=float,
                   default=_envd("zero-fraction", 0.05, float),
                   help="fraction of positive-class matrices given an exact zero eigenvalue")
    p.add_argument("--zero-placement", choices=["random", "smallest"],
                   default=_envd("zero-placement", "random"),
                   help="which eigenvalue the forced zero replaces")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpesign",
        description="Definiteness classification of Hermitian matrices by "
                    "trace bounds plus simulated phase-estimation sign readout.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a labeled random sample file")
    g.add_argument("--out", required=True, help="sample file to write (JSON)")
    g.add_argument("--count-per-class", type=int,
                   default=_envd("count-per-class", 100, int))
    g.add_argument("--dim", type=int, default=_envd("dim", 4, int))
    g.add_argument("--zero-fraction", type=float,
                   default=_envd("zero-fraction", 0.05, float))
    g.add_argument("--zero-placement", choices=["random", "smallest"],
                   default=_envd("zero-placement", "random"))
    g.add_argument("--seed", type=int, default=_envd("seed", 0, int))

    c = sub.add_parser("classify", help="classify one matrix from a JSON file")
    c.add_argument("matrix", help="matrix file (JSON object with dim/entries)")
    _add_quantum_flags(c, multi_n=False)
    c.add_argument("--delta", type=float, default=_envd("delta", 0.98, float),
                   help="decision threshold on |mean sigma_z| (default: 0.98)")
    c.add_argument("--mode", choices=["hybrid", "quantum", "classical"],
                   default=_envd("mode", "hybrid"))
    c.add_argument("--refine", action="store_true",
                   default=_envd("refine", False, lambda s: s not in ("", "0", "false")),
                   help="split a nonnegative quantum verdict into definite vs semidefinite")

    b = sub.add_parser("benchmark", help="recall/accuracy study over a labeled sample")
    b.add_argument("--out", required=True, help="result table CSV to write")
    b.add_argument("--records", default=_envd("records", None),
                   help="per-matrix JSONL path (default: CSV path with .jsonl)")
    _add_sample_flags(b)
    _add_quantum_flags(b, multi_n=True)
    b.add_argument("--delta", type=float, nargs="+", metavar="D",
                   default=_envd("delta", (0.98,), _split_list(float)),
                   help="decision thresholds (default: 0.98)")
    b.add_argument("--mode", nargs="+", choices=["hybrid", "quantum", "classical"],
                   default=_envd("mode", ("hybrid", "quantum"), _split_list(str)),
                   help="tables to emit (default: hybrid quantum)")
    b.add_argument("--workers", type=int, default=_envd("workers", 1, int),
                   help="worker processes (default: 1; results never depend on this)")

    s = sub.add_parser("sweep-trials", help="recall as a function of trial count 1..T")
    s.add_argument("--out", required=True, help="sweep table CSV to write")
    _add_sample_flags(s)
    _add_quantum_flags(s, multi_n=True)
    s.add_argument("--delta", type=float, nargs="+", metavar="D",
                   default=_envd("delta", (0.98,), _split_list(float)))
    s.add_argument("--mode", choices=["hybrid", "quantum"],
                   default=_envd("mode", "hybrid"),
                   help="pipeline scored in the sweep (default: hybrid)")
    s.add_argument("--workers", type=int, default=_envd("workers", 1, int))
    return parser


def _plan_from_args(args, modes: tuple) -> ExperimentPlan:
    return ExperimentPlan(
        count_per_class=args.count_per_class,
        dim=args.dim,
        zero_fraction=args.zero_fraction,
        zero_placement=args.zero_placement,
        seed=args.seed,
        n_grid=tuple(args.n),
        delta_grid=tuple(args.delta),
        trials=args.trials,
        shots=args.shots,
        guard=args.guard,
        init=InitStrategy(args.init),
        modes=modes,
        workers=args.workers,
    )


def _load_sample(args):
    if args.sample is not None:
        return read_sample(args.sample)
    return None


def cmd_generate(args) -> int:
    sample = []
    for label in (CanonicalClass.POSITIVE, CanonicalClass.NEGATIVE, CanonicalClass.INDEFINITE):
        sample.extend(
            generate_sample(
                label, args.dim, args.count_per_class, args.seed,
                zero_fraction=args.zero_fraction, zero_placement=args.zero_placement,
            )
        )
    write_sample(args.out, sample)
    print(f"wrote {len(sample)} labeled matrices to {args.out}")
    return 0


def cmd_classify(args) -> int:
    try:
        m, _ = read_matrix_file(args.matrix)
    except (FormatError, NotHermitianError, NonSquareError, OSError) as e:
        print(f"qpesign: {e}", file=sys.stderr)
        return 2
    if args.mode == "classical":
        cv = classify_classical(m)
        can = canonical(cv.klass)
        out = {
            "class": cv.klass.value,
            "canonical": can.value if can else None,
            "stage": "classical",
            "bounds": cv.bounds.as_dict(),
        }
        print(json.dumps(out, indent=2))
        return 0
    cfg = QuantumConfig(
        n=args.n, trials=args.trials, shots=args.shots, delta=args.delta,
        guard=args.guard, init=InitStrategy(args.init), seed=args.seed,
    )
    if args.mode == "quantum":
        verdict = classify_quantum_only(m, cfg)
    else:
        verdict = classify_hybrid(m, cfg, refine=args.refine)
    out = {
        "class": verdict.klass.value,
        "canonical": verdict.canonical.value if verdict.canonical else None,
        "stage": verdict.stage.value,
        "refined": verdict.refined,
        "bounds": verdict.classical.bounds.as_dict(),
        "mean_sigma": verdict.quantum.mean_sigma if verdict.quantum else None,
        "per_trial_sigma": list(verdict.quantum.per_trial_sigma) if verdict.quantum else None,
        "n": cfg.n,
        "delta": cfg.delta,
        "seed": cfg.seed,
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_benchmark(args) -> int:
    plan = _plan_from_args(args, tuple(dict.fromkeys(args.mode)))
    sample = _load_sample(args)
    backend.warmup()
    rows, records = run_benchmark(plan, sample)
    write_result_csv(args.out, rows)
    records_path = args.records or (os.path.splitext(args.out)[0] + ".jsonl")
    write_records_jsonl(records_path, records)
    print(f"wrote {len(rows)} result rows to {args.out} ({backend.backend_name()} backend)")
    print(f"wrote {len(records)} per-matrix records to {records_path}")
    return 0


def cmd_sweep(args) -> int:
    plan = _plan_from_args(args, (args.mode,))
    sample = _load_sample(args)
    backend.warmup()
    rows = run_trial_sweep(plan, sample)
    write_sweep_csv(args.out, rows)
    print(f"wrote {len(rows)} sweep rows to {args.out} ({backend.backend_name()} backend)")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for value in vars(args).values():
        if isinstance(value, _BadEnv):
            raise SystemExit(f"qpesign: bad value for {value.var}: {value.err}")
    handlers = {
        "generate": cmd_generate,
        "classify": cmd_classify,
        "benchmark": cmd_benchmark,
        "sweep-trials": cmd_sweep,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
