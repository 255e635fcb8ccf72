"""Base curves g = k*l + m, their admissibility and family selection."""

from tangent_prover.basecurve.admissibility import (
    admissibility_theorem3,
    admissibility_theorem4,
)
from tangent_prover.basecurve.construction import (
    base_curve,
    curve_family_of,
    local_base_side,
    log_curve,
    parabola_curve,
    power_curve,
    power_expr,
    tangent_line,
    variable_of,
)
from tangent_prover.basecurve.models import (
    Admissibility,
    BaseCurve,
    ConstraintFamily,
    ConstraintSpec,
    CurveFamily,
    Direction,
    FamilySelection,
    PowerMeanValue,
    Rejection,
    Side,
)
from tangent_prover.basecurve.power_mean import power_mean, power_mean_ordered
from tangent_prover.basecurve.selection import (
    constraint_l,
    constraint_window,
    select_family,
    slope_at,
    touch_point,
)

__all__ = [
    "Admissibility",
    "BaseCurve",
    "ConstraintFamily",
    "ConstraintSpec",
    "CurveFamily",
    "Direction",
    "FamilySelection",
    "PowerMeanValue",
    "Rejection",
    "Side",
    "admissibility_theorem3",
    "admissibility_theorem4",
    "base_curve",
    "constraint_l",
    "constraint_window",
    "curve_family_of",
    "local_base_side",
    "log_curve",
    "parabola_curve",
    "power_curve",
    "power_expr",
    "power_mean",
    "power_mean_ordered",
    "select_family",
    "slope_at",
    "tangent_line",
    "touch_point",
    "variable_of",
]
