"""Exact rational arithmetic toolkit for cycle noncontextuality inequalities.

Verifies, evaluates, and searches for violations of the KCBS inequality
using only qutrit states and projector directions with rational components;
every reported value is an exact rational certificate.
"""

from .rationals import Rational, format_rational, parse_rational, to_decimal
from .linalg3 import (
    E_X,
    E_Y,
    E_Z,
    Mat3Q,
    Vec3Q,
    commutator,
    cross,
    dot,
    mat_mul,
    mat_vec,
    norm_sq,
    outer,
    quadratic_form,
)
from .contextuality import (
    CycleScenario,
    CycleValidationError,
    DichotomicObservable,
    QutritState,
    UnitVectorQ,
    correlator,
    cycle_operator,
    kcbs_value,
    kcbs_value_via_projections,
    make_observable,
    projector,
    reference_scenario,
    validate_cycle,
)
from .hv_models import (
    Assignment,
    assignment_value,
    classical_min_cycle,
    is_violation,
)
from .search import (
    CircleParams,
    SearchHit,
    best_rational_approx,
    build_pentagon,
    circle_triple,
    normalized_cross,
    optimal_state_numeric,
    rationalize_state,
    search,
    stereo_lift,
    stereo_project,
)

__version__ = "0.1.0"
