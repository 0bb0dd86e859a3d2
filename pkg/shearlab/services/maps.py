"""Conformal-map catalog: four-slit map, regular n-gon map, and their geometry."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Literal

from shearlab.core.config import get_settings
from shearlab.core.exceptions import DomainError, PoleError, UnsupportedError
from shearlab.models.maps import (
    ConformalMapSpec,
    FourSlitMap,
    HalfLine,
    NGonParams,
    RegularNGonMap,
    SlitMapParams,
)
from shearlab.models.numerics import Gauss2F1Params, QuadratureConfig
from shearlab.services.numerics import (
    integrate_segment,
    pochhammer,
    polar_point,
    principal_log,
    principal_power,
)
from shearlab.services.specfun import gauss_2f1

logger = logging.getLogger(__name__)

QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def require_disk(z: complex) -> complex:
    """Return z as complex, raising DomainError outside the open unit disk."""
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"|z| = {abs(z)} is not inside the unit disk")
    return z


def require_radius(z: complex, r_max: float | None = None) -> complex:
    """Return z as complex, raising DomainError beyond the evaluation radius."""
    z = complex(z)
    limit = get_settings().r_max if r_max is None else r_max
    if abs(z) > limit + 1e-12:
        raise DomainError(f"|z| = {abs(z)} exceeds the evaluation radius {limit}")
    return z


def roots_of_unity(n: int) -> list[complex]:
    """The n-th roots of unity z_k = e^{2 pi i k/n}, k = 0..n-1.

    Multiples of a quarter turn are returned exactly.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    roots = []
    for k in range(n):
        if (4 * k) % n == 0:
            roots.append(QUARTER_TURNS[4 * k // n])
        else:
            roots.append(cmath.exp(2j * math.pi * k / n))
    return roots


def partial_fraction_inv_one_minus_zn(n: int, z: complex) -> complex:
    """Right-hand side of 1/(1 - z^n) = -(1/n) sum_k z_k / (z - z_k).

    Raises:
        PoleError: When z is an n-th root of unity.
    """
    z = complex(z)
    roots = roots_of_unity(n)
    if min(abs(z - zk) for zk in roots) <= 1e-14:
        raise PoleError(f"{z!r} is an {n}-th root of unity")
    return -sum(zk / (z - zk) for zk in roots) / n


# --- four-slit map -------------------------------------------------------


def slit_phi(p: SlitMapParams, z: complex) -> complex:
    """phi(z) = A log((1+z)/(1-z)) + B z / (1 + c z + z^2).

    With c = -2 cos gamma the denominator is (1 - e^{i gamma} z)(1 - e^{-i gamma} z);
    the degenerate tags give (1 -+ z)^2.
    """
    z = require_disk(z)
    return p.A * principal_log((1 + z) / (1 - z)) + p.B * z / (1 + p.c * z + z * z)


def slit_phi_prime(p: SlitMapParams, z: complex) -> complex:
    """Derivative of slit_phi.

    2A/(1-z^2) - (B/(2 sin gamma)) i [eta/(1-eta z)^2 - conj(eta)/(1-conj(eta) z)^2]
    on the generic branch, and the differentiated rational term
    (1 - z^2)/(1 -+ z)^4 for the degenerate tags.
    """
    z = require_disk(z)
    log_part = 2 * p.A / (1 - z * z)
    if p.degenerate is not None:
        denom = 1 + p.c * z + z * z
        return log_part + p.B * (1 - z * z) / (denom * denom)
    assert p.gamma is not None
    eta = p.eta
    eta_bar = eta.conjugate()
    bracket = eta / (1 - eta * z) ** 2 - eta_bar / (1 - eta_bar * z) ** 2
    return log_part - p.B / (2 * math.sin(p.gamma)) * 1j * bracket


def c0_anchor_abscissa(A: float, B: float) -> float:
    """Abscissa of the right slit endpoints of the c = 0 map (B >= 0 allowed).

    Minimum over theta of A log cot(theta/2) + B/(2 cos theta), reached at
    tan^2 theta = 2A/B.
    """
    if A <= 0 or B < 0:
        raise ValueError(f"need A > 0 and B >= 0, got A={A}, B={B}")
    s, r = math.sqrt(2 * A + B), math.sqrt(B)
    return 0.5 * A * math.log((s + r) / (s - r)) + 0.5 * math.sqrt(B * (2 * A + B))


def _c_minus_two_abscissa(p: SlitMapParams) -> float:
    return 0.5 * p.A * math.log(2 * p.A / p.B) - (2 * p.A + p.B) / 4


def slit_omitted_halflines(p: SlitMapParams) -> list[HalfLine]:
    """Half-lines omitted from phi(D), for c in {-2, 0, 2}.

    Upper half-line first, then lower; for c = 0 the right pair precedes
    the left pair.

    Raises:
        UnsupportedError: For any other c.
    """
    height = p.A * math.pi / 2
    c = p.c
    if c == -2.0:
        x0 = _c_minus_two_abscissa(p)
        return [
            HalfLine(anchor=complex(x0, height), direction=-1),
            HalfLine(anchor=complex(x0, -height), direction=-1),
        ]
    if c == 2.0:
        x0 = -_c_minus_two_abscissa(p)
        return [
            HalfLine(anchor=complex(x0, height), direction=1),
            HalfLine(anchor=complex(x0, -height), direction=1),
        ]
    if c == 0.0:
        x0 = c0_anchor_abscissa(p.A, p.B)
        return [
            HalfLine(anchor=complex(x0, height), direction=1),
            HalfLine(anchor=complex(x0, -height), direction=1),
            HalfLine(anchor=complex(-x0, height), direction=-1),
            HalfLine(anchor=complex(-x0, -height), direction=-1),
        ]
    raise UnsupportedError(f"no endpoint formula for c = {c}")


def slit_approach_angles(p: SlitMapParams) -> list[float]:
    """Boundary angles at which phi(e^{i theta}) reaches each slit endpoint.

    Aligned with slit_omitted_halflines.
    """
    c = p.c
    if c in (-2.0, 2.0):
        theta = 2 * math.atan(math.sqrt(p.B / (2 * p.A)))
        if c == 2.0:
            theta = math.pi - theta
        return [theta, -theta]
    if c == 0.0:
        theta = math.atan(math.sqrt(2 * p.A / p.B))
        return [theta, -theta, math.pi - theta, -(math.pi - theta)]
    raise UnsupportedError(f"no endpoint formula for c = {c}")


def trace_halfline_anchors(p: SlitMapParams, r: float = 0.9999) -> list[complex]:
    """Radial approximations phi(r e^{i theta*}) of the slit endpoints."""
    return [slit_phi(p, polar_point(r, theta)) for theta in slit_approach_angles(p)]


@dataclass
class AnchorCheck:
    """Comparison of formula anchors with traced boundary values."""

    success: bool
    formula: list[complex]
    traced: list[complex]
    max_re_deviation: float
    max_im_deviation: float


def check_halfline_anchors(
    p: SlitMapParams,
    r: float = 0.9999,
    re_tol: float = 1e-2,
    im_tol: float = 1e-3,
) -> AnchorCheck:
    """Trace phi towards the slit endpoints and compare with the formulas."""
    formula = [line.anchor for line in slit_omitted_halflines(p)]
    traced = trace_halfline_anchors(p, r)
    re_dev = max(abs(f.real - t.real) for f, t in zip(formula, traced, strict=True))
    im_dev = max(abs(f.imag - t.imag) for f, t in zip(formula, traced, strict=True))
    success = re_dev <= re_tol and im_dev <= im_tol
    if not success:
        logger.warning(
            f"slit endpoint formula disagrees with traced boundary for c={p.c}: "
            f"re deviation {re_dev:.3e}, im deviation {im_dev:.3e}"
        )
    return AnchorCheck(
        success=success,
        formula=formula,
        traced=traced,
        max_re_deviation=re_dev,
        max_im_deviation=im_dev,
    )


# --- regular n-gon map ---------------------------------------------------


def ngon_phi_prime(p: NGonParams, z: complex) -> complex:
    """(1 - z^n)^(-2/n) on the principal branch."""
    z = require_disk(z)
    return principal_power(1 - z**p.n, -2.0 / p.n)


def ngon_series_coefficients(n: int, count: int) -> list[tuple[int, float]]:
    """First count (power, coefficient) pairs of the n-gon map's Taylor series.

    phi(z) = sum_k ((2/n)_k / k!) z^(nk+1) / (nk+1).
    """
    return [
        (n * k + 1, float(pochhammer(2.0 / n, k).real) / math.factorial(k) / (n * k + 1))
        for k in range(count)
    ]


def ngon_phi(
    p: NGonParams,
    z: complex,
    cfg: QuadratureConfig | None = None,
    route: Literal["series", "quadrature"] = "series",
) -> complex:
    """Regular n-gon map phi(z) = int_0^z (1 - s^n)^(-2/n) ds.

    The series route sums the termwise-integrated binomial series as
    z * 2F1(2/n, 1/n; 1 + 1/n; z^n); the quadrature route integrates the
    derivative along [0, z].
    """
    z = require_disk(z)
    if z == 0:
        return 0j
    if route == "quadrature":
        return integrate_segment(lambda s: ngon_phi_prime(p, s), 0j, z, cfg)
    n = p.n
    params = Gauss2F1Params(a=2.0 / n, b=1.0 / n, c=1.0 + 1.0 / n)
    return z * gauss_2f1(params, z**n, cfg)


# --- dispatch over the catalog -------------------------------------------


def map_phi(
    spec: ConformalMapSpec, z: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """Evaluate the catalog map at z, |z| <= r_max."""
    z = require_radius(z)
    if isinstance(spec, FourSlitMap):
        return slit_phi(spec.params, z)
    if isinstance(spec, RegularNGonMap):
        return ngon_phi(spec.params, z, cfg)
    raise TypeError(f"unknown map spec {spec!r}")


def map_phi_prime(spec: ConformalMapSpec, z: complex) -> complex:
    """Evaluate the derivative of the catalog map at z, |z| <= r_max."""
    z = require_radius(z)
    if isinstance(spec, FourSlitMap):
        return slit_phi_prime(spec.params, z)
    if isinstance(spec, RegularNGonMap):
        return ngon_phi_prime(spec.params, z)
    raise TypeError(f"unknown map spec {spec!r}")
