"""Complex arithmetic helpers, Pochhammer symbols and adaptive quadrature.

Every integral in the package is taken along a straight segment in the
unit disk or over the unit interval; both reduce to scipy's adaptive
Gauss-Kronrod and algebraic-weight QUADPACK routines.
"""

import cmath
import logging
import math
import sys
from collections.abc import Callable

import numpy as np
from scipy import integrate

from shearlab.core.exceptions import DomainError, NonConvergenceError, NonFiniteError
from shearlab.models.numerics import QuadratureConfig

logger = logging.getLogger(__name__)

ComplexFunction = Callable[[complex], complex]
UnitIntervalFunction = Callable[[float], complex]

# QUADPACK flags round-off before reaching 1e-12; accept results whose own
# error estimate is still within this multiple of the requested tolerance.
ROUNDOFF_SLACK = 100.0

# Unweighted unit-interval integrals substitute t = s^k near each endpoint.
ENDPOINT_POWER = 4
UNIT_INTERVAL_FLOOR = sys.float_info.min
UNIT_INTERVAL_CEIL = math.nextafter(1.0, 0.0)


def ensure_finite(value: complex, what: str = "value") -> complex:
    """Return value unchanged, or raise NonFiniteError for NaN/Inf components."""
    if not cmath.isfinite(value):
        raise NonFiniteError(f"{what} is not finite: {value!r}")
    return value


def pochhammer(alpha: complex, n: int) -> complex:
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1).

    Integer inputs stay integers, so (1)_n is exactly n!.

    Raises:
        ValueError: If n is negative.
        NonFiniteError: If the product overflows.
    """
    if n < 0:
        raise ValueError(f"Pochhammer index must be nonnegative, got {n}")
    result: complex = 1
    for j in range(n):
        result = result * (alpha + j)
    if not isinstance(result, int):
        ensure_finite(complex(result), f"pochhammer({alpha!r}, {n})")
    return result


def principal_log(z: complex) -> complex:
    """Principal logarithm with imaginary part in (-pi, pi].

    Raises:
        DomainError: At z = 0.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("logarithm is undefined at 0")
    value = cmath.log(z)
    if value.imag == -math.pi:
        # -x - 0j lands on the excluded side of the cut
        value = complex(value.real, math.pi)
    return value


def principal_power(z: complex, exponent: complex) -> complex:
    """z**exponent on the principal branch of the logarithm."""
    return cmath.exp(exponent * principal_log(z))


def polar_point(radius: float, angle: float) -> complex:
    """Point radius * e^{i angle}, computed from cos/sin for reproducibility."""
    return complex(radius * math.cos(angle), radius * math.sin(angle))


def integrate_segment(
    integrand: ComplexFunction,
    start: complex,
    end: complex,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Contour integral of integrand along the straight segment [start, end].

    The segment is pulled back to t in [0, 1] and integrated with scipy's
    adaptive Gauss-Kronrod rule; the integrand must be analytic on the
    closed segment.

    Raises:
        NonConvergenceError: If the subdivision budget is exhausted.
        NonFiniteError: If the integrand is non-finite at a node.
    """
    cfg = cfg or QuadratureConfig.from_settings()
    start, end = complex(start), complex(end)
    delta = end - start
    if delta == 0:
        return 0j

    def pulled_back(t: float) -> complex:
        zeta = start + t * delta
        value = complex(integrand(zeta))
        if not cmath.isfinite(value):
            raise NonFiniteError(f"integrand is not finite at {zeta!r}: {value!r}")
        return value * delta

    result, error, info = integrate.quad_vec(
        pulled_back,
        0.0,
        1.0,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subintervals,
        full_output=True,
    )
    if info.status == 2:
        raise NonFiniteError(f"non-finite integrand on [{start}, {end}]")
    if info.status != 0:
        raise NonConvergenceError(
            f"segment quadrature on [{start}, {end}] stopped with error {error:.3e}: "
            f"{info.message}"
        )
    return ensure_finite(complex(result), "segment integral")


def _qaws(
    fn: Callable[[float], float],
    alpha: float,
    beta: float,
    cfg: QuadratureConfig,
) -> float:
    """Real integral of fn(t) t^alpha (1-t)^beta over [0, 1]."""
    out = integrate.quad(
        fn,
        0.0,
        1.0,
        weight="alg",
        wvar=(alpha, beta),
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subintervals,
        full_output=1,
    )
    value, error = float(out[0]), float(out[1])
    if len(out) > 3:
        bound = ROUNDOFF_SLACK * max(cfg.abs_tol, cfg.rel_tol * abs(value))
        if not error <= bound:
            raise NonConvergenceError(
                f"algebraic-weight quadrature stopped with error {error:.3e}: {out[3]}"
            )
        logger.debug(f"accepting QAWS result with error {error:.3e}: {out[3]}")
    return value


def _interior(t: float) -> float:
    return min(max(t, UNIT_INTERVAL_FLOOR), UNIT_INTERVAL_CEIL)


def integrate_unit_interval(
    integrand: UnitIntervalFunction,
    cfg: QuadratureConfig | None = None,
    *,
    alpha: float = 0.0,
    beta: float = 0.0,
) -> complex:
    """Integral of integrand(t) * t**alpha * (1-t)**beta over [0, 1].

    Without exponents the interval is split at 1/2 and each half is pulled
    back by t = s^k (resp. 1 - t = s^k), which turns an endpoint power
    singularity t^(a-1) with a > 0 into the bounded k s^(ka-1). Nodes are
    clamped into the open interval, so the integrand is never evaluated at
    exactly 0 or 1. With exponents (both > -1) the algebraic weight is
    integrated exactly by QUADPACK's QAWS, which is how the Euler kernels
    are evaluated.

    Raises:
        ValueError: If an exponent is <= -1 (non-integrable weight).
        NonConvergenceError: If the subdivision budget is exhausted.
        NonFiniteError: If the integrand is non-finite at a node.
    """
    cfg = cfg or QuadratureConfig.from_settings()
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"weight exponents must exceed -1, got ({alpha}, {beta})")

    def checked(t: float) -> complex:
        try:
            value = complex(integrand(t))
        except (ZeroDivisionError, OverflowError) as e:
            raise NonFiniteError(f"integrand is not finite at t={t!r}: {e}") from e
        if not cmath.isfinite(value):
            raise NonFiniteError(f"integrand is not finite at t={t!r}: {value!r}")
        return value

    if alpha == 0.0 and beta == 0.0:
        k = ENDPOINT_POWER

        def halves(s: float) -> np.ndarray:
            jacobian = k * s ** (k - 1)
            left = checked(_interior(s**k))
            right = checked(_interior(1.0 - s**k))
            return np.array([left * jacobian, right * jacobian])

        result, error, info = integrate.quad_vec(
            halves,
            0.0,
            0.5 ** (1.0 / k),
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subintervals,
            full_output=True,
        )
        value = complex(result.sum())
        if info.status == 2:
            raise NonFiniteError("non-finite integrand on the unit interval")
        if info.status != 0:
            # t next to 1 is quantized, so a singular (1-t)^(b-1) is noisy there
            bound = ROUNDOFF_SLACK * max(cfg.abs_tol, cfg.rel_tol * abs(value))
            if not error <= bound:
                raise NonConvergenceError(
                    f"unit-interval quadrature stopped with error {error:.3e}: "
                    f"{info.message}"
                )
            logger.debug(f"accepting unit-interval result with error {error:.3e}")
        return ensure_finite(value, "unit-interval integral")

    real = _qaws(lambda t: checked(t).real, alpha, beta, cfg)
    imag = _qaws(lambda t: checked(t).imag, alpha, beta, cfg)
    return ensure_finite(complex(real, imag), "unit-interval integral")


def central_difference(fn: ComplexFunction, z: complex, step: float = 1e-4) -> complex:
    """Fourth-order central difference of an analytic function at z."""
    h = step
    return (
        -fn(z + 2 * h) + 8 * fn(z + h) - 8 * fn(z - h) + fn(z - 2 * h)
    ) / (12 * h)
