"""Exact finite-operator calculus: delta operators, poweroids, and their triangles."""

from .errors import OperatorError, OrderError, PoweroidError, SeriesError, SpecError
from .interp import (
    PoweroidExpansion,
    aitken_sum,
    expand,
    expand_in_phi,
    from_differences,
    interpolate,
    reconstruct,
    theta_inverse,
    trig_check,
)
from .operators import (
    DeltaOperator,
    OperatorSpec,
    catalog,
    conjugate,
    generalized_difference,
    make_abel,
    make_gould,
    normalize,
    op_compose,
    parse_operator,
    parse_spec,
    render_spec,
)
from .poweroids import (
    CoefficientTriangle,
    PoweroidSequence,
    basic_sequence_rodrigues,
    basic_sequence_transfer,
    central_hansen,
    connection_by_solve,
    connection_constants,
    eta_in_theta,
    gould_factorial,
    hansen_recursion,
    triangle_first_kind,
    triangle_invert_check,
    triangle_second_kind,
    umbral_compose,
)
from .series import (
    X,
    Polynomial,
    PowerSeries,
    Rational,
    apply_operator,
    comp_inverse,
    compose,
    derivative,
    exp_series,
    format_rational,
    int_pow,
    log_series,
    op_at_zero,
    parse_rational,
    reciprocal,
    series_arith,
)

__version__ = "0.1.0"
