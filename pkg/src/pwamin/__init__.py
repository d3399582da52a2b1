"""Coordinate minimization of convex piecewise-affine functions with the unique rule."""

from .coordinate import (
    Outcome,
    PreconditionError,
    RunOutcome,
    SolverState,
    SweepTrace,
    UpdateRule,
    cycle_map,
    is_fixed_point,
    proximal_step,
    proximal_update,
    run,
    sweep,
    unique_step,
    unique_update,
    violation_measure,
)
from .core import (
    PwaFunction,
    argmax_set,
    eps_argmax_set,
    evaluate,
    level_set_indices,
    values,
)
from .instances import Instance, generate_random, load_instance, save_instance
from .oracle import (
    DualCertificate,
    contains_origin_conv,
    contains_origin_rint_conv,
    is_bounded_below,
    is_global_minimizer,
    solve_min_lp,
    y_set_is_bounded,
)
from .signs import (
    consistency_closure,
    is_consistent,
    is_consistent_in_coordinate,
    sign_condition_holds,
    sign_of,
    sign_set,
)
from .summax import SumMaxFunction, interlaced_minimize, lift, scaled_sum_as_minmax

__version__ = "0.1.0"
