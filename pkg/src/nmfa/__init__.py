"""Noisy mean-field annealing: Ising/MAX-CUT solver and benchmark harness."""

from .generators import (
    gen_cubic_maxcut,
    gen_dense_maxcut,
    gen_sk,
    is_connected,
    moebius_ladder,
)
from .gset import GsetParseError, load_gset, parse_gset, write_gset, write_results_csv
from .metrics import (
    MAX_EXACT_N,
    AggregateStats,
    GroundTruth,
    RunStats,
    aggregate,
    brute_force_ground,
    instance_stats,
    median_iqr,
    success_probability,
    time_to_solution,
)
from .problem import (
    IsingProblem,
    cut_value,
    energy,
    mean_field,
    normalizers,
    sign_round,
)
from .solver import (
    DEFAULT_ALPHA,
    DEFAULT_SCHEDULE,
    DEFAULT_SIGMA,
    DEFAULT_TF,
    NmfaParams,
    RunResult,
    Schedule,
    Trajectory,
    nmfa_batch,
    nmfa_run,
    nmfa_step,
    noise_stream,
    run_with_noise,
    schedule_eval,
)

__version__ = "0.1.0"
