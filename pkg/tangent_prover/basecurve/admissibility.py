"""Sign conditions under which a tangent line or power curve closes a proof.

Both tests take the slope of the oriented function (sigma * f) at the touch
point, so they apply unchanged to upper bounds after negation.
"""

from fractions import Fraction

from tangent_prover.basecurve.models import Admissibility


def _sign_text(value: Fraction | float) -> str:
    return "positive" if value > 0 else "negative" if value < 0 else "zero"


def admissibility_theorem3(alpha: Fraction, slope: Fraction | float) -> Admissibility:
    """Tangent line under a power-sum constraint sum x^alpha = n*x0^alpha.

    Admissible when (alpha - 1) * f'(x0) <= 0: the power-mean inequality then
    moves sum x_j in the direction that keeps sum f(x_j) above n*f(x0).
    alpha = 0 stands for the product constraint.
    """
    alpha = Fraction(alpha)
    product = (alpha - 1) * slope
    if product <= 0:
        reason = f"(alpha - 1) * f'(x0) = {_fmt(product)} <= 0"
        return Admissibility(theorem="Theorem3", alpha=alpha, admissible=True, reason=reason)
    reason = (
        f"(alpha - 1) * f'(x0) = {_fmt(product)} > 0 "
        f"(alpha - 1 is {_sign_text(alpha - 1)}, f'(x0) is {_sign_text(slope)})"
    )
    return Admissibility(theorem="Theorem3", alpha=alpha, admissible=False, reason=reason)


def admissibility_theorem4(alpha: Fraction, slope: Fraction | float) -> Admissibility:
    """Power curve x^alpha under a plain sum constraint.

    Admissible when alpha != 0 and (alpha - 1) * f'(x0) >= 0.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        return Admissibility(
            theorem="Theorem4", alpha=alpha, admissible=False, reason="alpha must be nonzero"
        )
    product = (alpha - 1) * slope
    if product >= 0:
        reason = f"(alpha - 1) * f'(x0) = {_fmt(product)} >= 0"
        return Admissibility(theorem="Theorem4", alpha=alpha, admissible=True, reason=reason)
    reason = (
        f"(alpha - 1) * f'(x0) = {_fmt(product)} < 0 "
        f"(alpha - 1 is {_sign_text(alpha - 1)}, f'(x0) is {_sign_text(slope)})"
    )
    return Admissibility(theorem="Theorem4", alpha=alpha, admissible=False, reason=reason)


def _fmt(value: Fraction | float) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return f"{value:.6g}"
