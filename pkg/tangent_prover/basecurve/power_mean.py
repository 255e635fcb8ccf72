"""Power means c_alpha(x) = ((sum x_j^alpha) / n)^(1/alpha), geometric mean at alpha = 0."""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from tangent_prover.algebra.rationals import rational_power
from tangent_prover.basecurve.models import PowerMeanValue
from tangent_prover.core.errors import DomainViolation


def power_mean(alpha: Fraction, xs: Sequence[float | Fraction]) -> PowerMeanValue:
    """Power mean of positive numbers.

    The exact value is filled in when every input is rational and the result
    is rational as well.

    Raises:
        DomainViolation: Empty input or a non-positive entry.
    """
    alpha = Fraction(alpha)
    if len(xs) == 0:
        raise DomainViolation("power mean of an empty sequence")
    values = np.asarray([float(x) for x in xs], dtype=float)
    if np.any(values <= 0):
        bad = float(values[np.argmax(values <= 0)])
        raise DomainViolation("power mean needs positive inputs", x=bad)

    if alpha == 0:
        value = float(np.exp(np.mean(np.log(values))))
    else:
        value = float(np.mean(values ** float(alpha)) ** (1.0 / float(alpha)))

    exact: Fraction | None = None
    if all(isinstance(x, int | Fraction) for x in xs):
        exact = _exact_power_mean(alpha, [Fraction(x) for x in xs])
    return PowerMeanValue(alpha=alpha, value=value, exact=exact)


def _exact_power_mean(alpha: Fraction, xs: list[Fraction]) -> Fraction | None:
    n = len(xs)
    if alpha == 0:
        product = Fraction(1)
        for x in xs:
            product *= x
        return rational_power(product, Fraction(1, n))
    powers = [rational_power(x, alpha) for x in xs]
    if any(p is None for p in powers):
        return None
    mean = sum(powers, Fraction(0)) / n
    return rational_power(mean, 1 / alpha)


def power_mean_ordered(alpha: Fraction, beta: Fraction, xs: Sequence[float | Fraction]) -> bool:
    """c_alpha <= c_beta for alpha <= beta, checked numerically with a relative slack."""
    low, high = sorted((Fraction(alpha), Fraction(beta)))
    a = power_mean(low, xs).value
    b = power_mean(high, xs).value
    return a <= b * (1 + 1e-12)
