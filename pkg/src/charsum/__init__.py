"""Character-sum step functions, their window averages, and extremal searches."""

__version__ = "0.1.0"

from charsum.analysis import (
    FourierTruncation,
    GaussSumValue,
    HalfGapScan,
    HalfWindowReport,
    LogGrowthSeries,
    PrefixSumTable,
    WindowAverageReport,
    fourier_constant_term,
    gauss_sum,
    half_gap_scan,
    half_model_sum,
    half_window_report,
    l_value_at_one,
    least_nonresidue,
    log_growth_series,
    nonsmooth_count,
    truncated_fourier,
    window_prediction,
    window_report,
)
from charsum.characters import (
    CharacterValue,
    DirichletCharacter,
    UnitGroupStructure,
    character,
    conductor,
    conjugate,
    enumerate_characters,
    jacobi_symbol,
    principal_character,
    product_character,
    quadratic_character,
    unit_group,
)
from charsum.constructions import (
    LocalCondition,
    PretentiousModulus,
    SearchSpec,
    build_mimicking_character,
    find_prime_in_class,
    paley_modulus,
    reciprocity_conditions,
    residue_one_modulus,
)
from charsum.errors import (
    CharsumError,
    InfeasibleError,
    InvalidArgumentError,
    NotFoundError,
)
from charsum.experiments import (
    ExperimentReport,
    run_corollary,
    run_lemma3,
    run_smoothness,
    run_thm1,
    run_thm2,
    run_thm3,
    run_thm4,
)
