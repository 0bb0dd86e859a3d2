"""Gauss 2F1 and Appell F1 for complex arguments inside the unit (bi)disk.

Both functions are evaluated either by their power series, truncated by a
certified geometric majorant of the tail, or by their Euler integral.
The series is used close to the origin; the Euler route takes over near
the boundary where the series slows down.
"""

import cmath
import logging
import math
from typing import Literal

import numpy as np
from scipy import special

from shearlab.core.config import get_settings
from shearlab.core.exceptions import NonConvergenceError, ParamError, PoleError
from shearlab.models.numerics import (
    AppellF1Params,
    Gauss2F1Params,
    QuadratureConfig,
    is_nonpositive_integer,
)
from shearlab.services.numerics import (
    ensure_finite,
    integrate_unit_interval,
    principal_log,
)

logger = logging.getLogger(__name__)

Route = Literal["auto", "series", "euler"]

# Terms evaluated per vectorised block of a series.
BLOCK = 64


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Raises:
        PoleError: At z = 0, -1, -2, ...
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    return ensure_finite(complex(special.loggamma(z)), f"log_gamma({z!r})")


def _check_c(c: complex) -> None:
    if is_nonpositive_integer(complex(c)):
        raise ParamError(f"c must not be zero or a negative integer, got {c!r}")


def _tail_ratio(z_abs: float, a: complex, b: complex, c: complex, k: int) -> float:
    """Upper bound of |t_{j+1}/t_j| for all j >= k in the 2F1 series.

    |(a+j)/(c+j)| <= 1 + |a-c|/(j+Re c) and |(b+j)/(j+1)| <= 1 + |b-1|/(j+1),
    both decreasing in j once j + Re c > 0. Returns inf before that point.
    """
    shift = k + c.real
    if shift <= 0.0:
        return math.inf
    return z_abs * (1.0 + abs(a - c) / shift) * (1.0 + abs(b - 1.0) / (k + 1))


def _series_2f1(
    a: complex, b: complex, c: complex, z: complex, tol: float, max_terms: int
) -> tuple[complex, float]:
    """Sum the 2F1 series; return (value, bound on the sum of |terms|).

    Terms are produced in numpy blocks from the term ratio
    (a+k)(b+k)/((c+k)(k+1)) z and summation stops once the certified
    tail majorant |t_{k+1}| / (1 - R_{k+1}) drops below tol * |S|.
    """
    z_abs = abs(z)
    total = 0j
    abs_total = 0.0
    term = 1 + 0j
    k = 0
    while k < max_terms:
        ks = np.arange(k, k + BLOCK, dtype=float)
        ratios = (a + ks) * (b + ks) / ((c + ks) * (ks + 1.0)) * z
        terms = term * np.concatenate(([1.0 + 0j], np.cumprod(ratios[:-1])))
        total += complex(terms.sum())
        abs_total += float(np.abs(terms).sum())
        term = complex(terms[-1] * ratios[-1])
        k += BLOCK
        if term == 0:
            return total, abs_total
        ratio = _tail_ratio(z_abs, a, b, c, k)
        if ratio < 1.0:
            tail = abs(term) / (1.0 - ratio)
            if tail <= tol * max(abs(total), 1e-300):
                return total, abs_total + tail
    raise NonConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in {max_terms} terms"
    )


def gauss_2f1_series(p: Gauss2F1Params, z: complex, tol: float = 1e-15) -> complex:
    """2F1 by its power series with a certified tail bound.

    Raises:
        NonConvergenceError: If |z| is too close to 1 for the term budget.
    """
    _check_c(p.c)
    z = complex(z)
    if abs(z) >= 1.0:
        raise NonConvergenceError(f"2F1 series diverges at |z| = {abs(z)}")
    value, _ = _series_2f1(p.a, p.b, p.c, z, tol, get_settings().series_max_terms)
    return ensure_finite(value, "2F1 series")


def gauss_2f1_euler(
    p: Gauss2F1Params, z: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """2F1 by Euler's integral, valid for Re c > Re b > 0 and z off [1, inf).

    Raises:
        ParamError: If Re c > Re b > 0 fails.
    """
    _check_c(p.c)
    a, b, c = p.a, p.b, p.c
    if not c.real > b.real > 0.0:
        raise ParamError(f"Euler route needs Re c > Re b > 0, got b={b}, c={c}")
    z = complex(z)
    alpha = b.real - 1.0
    beta = (c - b).real - 1.0
    b_im, cb_im = b.imag, (c - b).imag

    def kernel(t: float) -> complex:
        value = cmath.exp(-a * principal_log(1.0 - z * t))
        if b_im and t > 0.0:
            value *= cmath.exp(1j * b_im * math.log(t))
        if cb_im and t < 1.0:
            value *= cmath.exp(1j * cb_im * math.log1p(-t))
        return value

    integral = integrate_unit_interval(kernel, cfg, alpha=alpha, beta=beta)
    prefactor = cmath.exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b))
    return ensure_finite(prefactor * integral, "2F1 Euler integral")


def gauss_2f1(
    p: Gauss2F1Params,
    z: complex,
    cfg: QuadratureConfig | None = None,
    route: Route = "auto",
) -> complex:
    """Gaussian hypergeometric function 2F1(a, b; c; z) for |z| < 1.

    The automatic route sums the series for |z| <= series_switch and
    otherwise integrates Euler's representation when Re c > Re b > 0.

    Raises:
        ParamError: If c is a nonpositive integer.
        NonConvergenceError: If |z| is too close to 1 for the series.
    """
    _check_c(p.c)
    z = complex(z)
    if z == 0:
        return 1 + 0j
    if route == "auto":
        near = abs(z) > get_settings().series_switch
        route = "euler" if near and p.c.real > p.b.real > 0.0 else "series"
        logger.debug(f"2F1 route {route} at |z|={abs(z):.3f}")
    if route == "euler":
        return gauss_2f1_euler(p, z, cfg)
    tol = (cfg or QuadratureConfig.from_settings()).rel_tol * 1e-2
    return gauss_2f1_series(p, z, tol=tol)


def appell_f1_series(
    p: AppellF1Params, x: complex, y: complex, tol: float = 1e-15
) -> complex:
    """Double series of F1 summed row by row with a certified tail bound.

    Row k is (a)_k (b1)_k / ((c)_k k!) x^k * 2F1(a+k, b2; c+k; y). Each row
    also yields a bound A_k on its absolute sum. Because the ratio of
    matching terms in consecutive rows is at most
    sigma_k = |x| (1 + |a-c|/(k+Re c)) (1 + |b1-1|/(k+1)), decreasing in k,
    the remaining rows sum to at most A_k sigma_k / (1 - sigma_k).

    Raises:
        NonConvergenceError: If max(|x|, |y|) >= 1 or the budget runs out.
    """
    _check_c(p.c)
    x, y = complex(x), complex(y)
    if max(abs(x), abs(y)) >= 1.0:
        raise NonConvergenceError(
            f"F1 series diverges at max(|x|,|y|) = {max(abs(x), abs(y))}"
        )
    a, b1, b2, c = p.a, p.b1, p.b2, p.c
    max_terms = get_settings().series_max_terms
    x_abs = abs(x)
    total = 0j
    lead = 1 + 0j
    for k in range(max_terms):
        if lead == 0:
            return ensure_finite(total, "F1 series")
        row, row_abs = _series_2f1(a + k, b2, c + k, y, tol, max_terms)
        total += lead * row
        row_bound = abs(lead) * row_abs
        sigma = _tail_ratio(x_abs, a, b1, c, k)
        if sigma < 1.0 and row_bound * sigma / (1.0 - sigma) <= tol * max(
            abs(total), 1e-300
        ):
            return ensure_finite(total, "F1 series")
        lead *= (a + k) * (b1 + k) / ((c + k) * (k + 1)) * x
    raise NonConvergenceError(
        f"F1 series at ({x}, {y}) did not converge in {max_terms} rows"
    )


def appell_f1_euler(
    p: AppellF1Params,
    x: complex,
    y: complex,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """F1 by Euler's integral.

    Gamma(c)/(Gamma(a)Gamma(c-a)) * int_0^1 t^(a-1) (1-t)^(c-a-1)
    (1-xt)^(-b1) (1-yt)^(-b2) dt, with the algebraic part of the kernel
    handed to QAWS as an exact weight.

    Raises:
        ParamError: Unless Re c > Re a > 0.
    """
    _check_c(p.c)
    if not p.euler_admissible:
        raise ParamError(f"Euler route needs Re c > Re a > 0, got a={p.a}, c={p.c}")
    a, b1, b2, c = p.a, p.b1, p.b2, p.c
    x, y = complex(x), complex(y)
    alpha = a.real - 1.0
    beta = (c - a).real - 1.0
    a_im, ca_im = a.imag, (c - a).imag

    def kernel(t: float) -> complex:
        log_value = 0j
        if b1 != 0:
            log_value -= b1 * principal_log(1.0 - x * t)
        if b2 != 0:
            log_value -= b2 * principal_log(1.0 - y * t)
        if a_im and t > 0.0:
            log_value += 1j * a_im * math.log(t)
        if ca_im and t < 1.0:
            log_value += 1j * ca_im * math.log1p(-t)
        return cmath.exp(log_value)

    integral = integrate_unit_interval(kernel, cfg, alpha=alpha, beta=beta)
    prefactor = cmath.exp(log_gamma(c) - log_gamma(a) - log_gamma(c - a))
    return ensure_finite(prefactor * integral, "F1 Euler integral")


def appell_f1(
    p: AppellF1Params,
    x: complex,
    y: complex,
    cfg: QuadratureConfig | None = None,
    route: Route = "auto",
) -> complex:
    """First Appell hypergeometric function F1(a, b1, b2; c; x, y).

    The automatic route sums the double series when
    max(|x|, |y|) <= series_switch and integrates Euler's representation
    otherwise (falling back to the series if Re c > Re a > 0 fails).

    Raises:
        ParamError: If c is a nonpositive integer, or the Euler route is
            forced with inadmissible parameters.
        NonConvergenceError: If the chosen route cannot reach tolerance.
    """
    _check_c(p.c)
    x, y = complex(x), complex(y)
    if x == 0 and y == 0:
        return 1 + 0j
    if route == "auto":
        near = max(abs(x), abs(y)) > get_settings().series_switch
        route = "euler" if near and p.euler_admissible else "series"
        logger.debug(f"F1 route {route} at max(|x|,|y|)={max(abs(x), abs(y)):.3f}")
    if route == "euler":
        return appell_f1_euler(p, x, y, cfg)
    tol = (cfg or QuadratureConfig.from_settings()).rel_tol * 1e-2
    return appell_f1_series(p, x, y, tol=tol)
