"""Path-level separation of Brownian and jump components from high-frequency data."""

from ._version import __version__
from .decompose import (
    ReorderResult,
    ThresholdResult,
    TiedIncrementsError,
    bridge_of,
    check_threshold_schedule,
    default_threshold,
    multivariate_reorder,
    rank_permutation,
    recover_signal,
    recover_with_drift,
    reorder_decompose,
    threshold_decompose,
)
from .grid import GridPath, IncrementSeq, coarsen, compose, increments_of, path_of
from .harness import (
    DefaultThreshold,
    ErrorSample,
    ExperimentConfig,
    ExperimentReport,
    FixedThreshold,
    SummaryRow,
    ThresholdSchedule,
    config_from_mapping,
    config_to_mapping,
    read_raw_csv,
    read_summary_csv,
    run_brownian_rate_check,
    run_cpp_limit_experiment,
    run_method_comparison,
    run_nosigma_experiment,
    run_table_experiment,
    summarize,
    write_raw_csv,
    write_summary_csv,
)
from .metrics import (
    RateFit,
    cpp_limit_process,
    cross_variation,
    fit_rate,
    scaled_cpp_error,
    sup_bridge_error,
)
from .rng import RngStream, derive_stream_id
from .sim import (
    Bessel3,
    BrownianStd,
    CompositeSpec,
    CompoundPoisson,
    FixedSign,
    JumpRecord,
    NormalJumps,
    Stable,
    VarianceGamma,
    Zero,
    sample_bessel3_path,
    sample_brownian_path,
    sample_compound_poisson,
    sample_gaussian_increments,
    sample_signal_increments,
    sample_stable_increments,
    sample_variance_gamma_increments,
)

__all__ = [name for name in dir() if not name.startswith("_")]
