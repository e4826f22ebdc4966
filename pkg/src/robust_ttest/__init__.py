"""Robust one-sample location test based on the sample median and MAD."""

__version__ = "0.1.0"

from .errors import (
    CorruptTableError,
    DataParseError,
    DegenerateSampleError,
    DomainError,
    IncompatibleTableError,
    InsufficientDataError,
    RobustTError,
    SimulationIntegrityError,
    TableError,
    TableMismatchError,
)
from .normal_dist import (
    CONSTANTS,
    NormalConstants,
    scaling_constant,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .robust_estimators import Sample, mad, median, rescaled_mad
from .statistics import (
    StatisticKind,
    StatisticValue,
    classical_t,
    pivot_statistic,
    robust_t,
    scaled_robust_t,
)
from .sampling import (
    ContaminationModel,
    RngSpec,
    sample_contaminated,
    sample_location_scale,
    sample_std_normal,
)
from .montecarlo import (
    EmpiricalDistribution,
    SimulationConfig,
    empirical_quantile,
    estimate_rejection_rate,
    ks_distance_to_std_normal,
    simulate_statistic,
)
from .inference import (
    Alternative,
    Calibration,
    QuantileTable,
    TestResult,
    build_quantile_table,
    classical_one_sample_test,
    robust_confidence_interval,
    robust_one_sample_test,
)
from .fileio import load_table, read_sample, save_table
