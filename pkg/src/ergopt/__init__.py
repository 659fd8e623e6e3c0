"""Ergodic optimization of top Lyapunov exponents for locally constant
matrix cocycles on subshifts of finite type."""

__version__ = "0.1.0"

from .shift import (  # noqa: F401
    Cycle,
    ShiftSpace,
    admissible_words,
    canonical_rotation,
    connect,
    enumerate_cycles,
    is_primitive,
    iter_point,
    make_cycle,
    new_shift,
    point_distance,
    str_to_word,
    word_to_str,
)
from . import errors  # noqa: F401
from .cocycle import (  # noqa: F401
    MatrixCocycle,
    ScalarPotential,
    cocycle_distance,
    cocycle_product,
    constant_potential,
    from_potential,
    gamma_apply,
    identity_cocycle,
    op_norm,
    spectral_radius,
)
from .optimize import (  # noqa: F401
    BetaBracket,
    CriticalGraph,
    OptReport,
    beta_bracket,
    critical_graph,
    cycle_exponent,
    karp_beta,
    lower_bound_cycles,
    matrix_candidates,
    maximizing_cycles,
    relative_beta,
    upper_bound,
)
from .measures import (  # noqa: F401
    MarkovMeasure,
    OrbitAverageMeasure,
    PeriodicMeasure,
    TestBasis,
    cesaro_push,
    exponent_of_measure,
    hausdorff_distance,
    integrate,
    markov_measure,
    periodic_measure,
    restricted_beta,
    weakstar_distance,
)
from .perturb import (  # noqa: F401
    FlattenResult,
    IdentitySystem,
    StabilityResult,
    SweepResult,
    flatten_top,
    identity_system,
    perturbation_sweep,
    pinning_potential,
    stability_radius,
    uniqueness_probe,
)
from .irregular import (  # noqa: F401
    BlockSchedule,
    block_oscillation,
    build_irregular_point,
    finite_time_exponents,
    oscillation,
)
