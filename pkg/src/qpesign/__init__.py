"""Definiteness classification of Hermitian matrices.

Two stages: a trace-moment bound cascade that settles the easy cases in
O(N^2), and a simulated phase-estimation circuit whose ancilla sign bit
classifies the rest. See the README for the command line interface.
"""

from .backend import ENV_FLAG, backend_name, select_backend, warmup
from .bounds import (
    ClassicalVerdict,
    SpectralBounds,
    ZeroMatrixError,
    classify_classical,
    eigenvalue_bounds,
    scale_constant,
    trace_moments,
)
from .circuit import (
    DimensionMismatchError,
    Statevector,
    ancilla_distribution,
    inverse_qft,
    marginal_msb,
    run_qpe_statevector,
)
from .classifier import (
    InitStrategy,
    PaddedUnsupportedError,
    QuantumConfig,
    QuantumVerdict,
    classify_quantum,
    expected_sigma_exact,
    fixed_b_triple,
    random_b,
    substream_seed,
    verdict_from_sigma,
)
from .harness import (
    MODES,
    RESULT_COLUMNS,
    SWEEP_COLUMNS,
    ExperimentPlan,
    MatrixEvaluation,
    ResultRow,
    SweepRow,
    evaluate_sample,
    generate_plan_sample,
    read_result_csv,
    records_from_evaluations,
    rows_from_evaluations,
    run_benchmark,
    run_trial_sweep,
    write_result_csv,
    write_sweep_csv,
)
from .hermitian import (
    HermitianMatrix,
    LabeledMatrix,
    NoConvergenceError,
    NonSquareError,
    NotHermitianError,
    Spectrum,
    eigen_decompose,
    generate_sample,
    ground_truth_class,
    matrix_exponential_unitary,
    pad_to_power_of_two,
    validate_hermitian,
)
from .labels import CanonicalClass, DefinitenessClass, canonical
from .matrixio import (
    FormatError,
    matrix_from_dict,
    matrix_to_dict,
    read_matrix_file,
    read_records_jsonl,
    read_sample,
    write_matrix_file,
    write_records_jsonl,
    write_sample,
)
from .phases import (
    PhaseEnsemble,
    ensemble_distribution,
    sample_sigma_z,
    sigma_z_expectation,
    single_phase_distribution,
)
from .pipeline import (
    HybridVerdict,
    InconsistentRefinementError,
    Metrics,
    Stage,
    classify_hybrid,
    classify_quantum_only,
    refine_positive,
    score,
    score_labels,
)

__version__ = "0.1.0"
