"""k-Abelian equivalence, complexity profiles and verification checks for
classic infinite words."""

from .analysis import (
    ALL_CHECKS,
    PeriodicityWitness,
    VerificationReport,
    find_periodicity_witness,
    report_to_json_dict,
    run_all_checks,
    sturmian_profile_check,
    verify_periodicity_battery,
    verify_perlin,
    verify_phi_classes,
    verify_phi_identity,
    verify_s_special_values,
    verify_sparse_ones,
    verify_srec,
    verify_sturmian_battery,
    verify_tau_champernowne,
    verify_tm_balance,
    verify_tm_bounds,
    verify_tm_growth_shape,
    verify_tm_sandwich,
    verify_u_bounds,
    verify_uniform_recurrence,
    verify_uniform_scaling,
)
from .complexity import (
    INFINITY,
    ComplexityProfile,
    LowerProfile,
    OnesRange,
    WindowPolicy,
    abelian_complexity_binary,
    converged_values,
    factors_of_length,
    k_abelian_complexity,
    lower_profile,
    ones_range,
    profile,
    profile_to_csv,
    profile_to_json,
    q_sturm,
    upper_profile,
)
from .equivalence import (
    KAbelianKey,
    factor_counts,
    k_abelian_eq,
    k_abelian_eq_naive,
    k_abelian_key,
    occurrences,
    parikh_vector,
    two_abelian_eq_binary,
)
from .errors import (
    ConvergenceError,
    InsufficientWindowError,
    KabelianError,
    ParameterError,
    PrecisionError,
)
from .words import (
    CHAMPERNOWNE,
    FIBONACCI,
    PERIOD_DOUBLING,
    STAIRCASE,
    TAU_CHAMPERNOWNE,
    THUE_MORSE,
    BlockSequence,
    ChampernowneSpec,
    FixedPointSpec,
    MechanicalSpec,
    Morphism,
    MorphicImageSpec,
    StaircaseSpec,
    UltimatelyPeriodicSpec,
    UWordSpec,
    Word,
    WordSpec,
    apply_morphism,
    expand,
    fibonacci_morphism,
    fixed_point_prefix,
    mechanical_word,
    parse_spec,
    parse_word,
    perlin_morphism,
    period_doubling_morphism,
    phi_map,
    slow_sequence_from_budget,
    spec_text,
    thue_morse_morphism,
    u_word_prefix,
)

__version__ = "0.1.0"
