"""Shear engine: the quadrature oracle and the closed-form shears.

A shear of a conformal map phi with dilatation omega solves
h' - g' = phi' and g' = omega h', so h' = phi'/(1 - omega) and g = h - phi.
The oracle integrates h' along [0, z]; the closed forms are the
partial-fraction log sums of the four-slit map and the Appell F1 formulas
of the regular n-gon map.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

from shearlab.core.config import get_settings
from shearlab.core.exceptions import (
    ParityError,
    ResonanceError,
    RootIndexError,
    ShearLabError,
    UnsupportedError,
)
from shearlab.models.maps import (
    ConformalMapSpec,
    FourSlitMap,
    NGonParams,
    RegularNGonMap,
    SlitMapParams,
)
from shearlab.models.numerics import AppellF1Params, QuadratureConfig
from shearlab.models.shear import (
    MonomialDilatation,
    ShearEvaluation,
    SlitClosedFormTerms,
)
from shearlab.services.maps import (
    map_phi,
    map_phi_prime,
    ngon_phi_prime,
    require_disk,
    require_radius,
    roots_of_unity,
    slit_phi,
    slit_phi_prime,
)
from shearlab.services.numerics import (
    central_difference,
    ensure_finite,
    integrate_segment,
    principal_log,
)
from shearlab.services.specfun import appell_f1

logger = logging.getLogger(__name__)

# Sign of the B-term in h = 2A I1 + s (iB / (2 sin gamma)) (conj(eta) I2 - eta I3).
SLIT_B_TERM_SIGN = -1

# Float tolerance of the resonance test gamma = 2 pi m / n.
RESONANCE_TOL = 1e-12

CONSTRUCTION_THRESHOLD = 1e-10
DILATATION_THRESHOLD = 1e-7
CLOSED_FORM_THRESHOLD = 1e-9
FD_STEP = 1e-4


# --- oracle --------------------------------------------------------------


def shear_oracle(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> ShearEvaluation:
    """Shear by direct quadrature of h' = phi'/(1 - omega) along [0, z].

    Raises:
        DomainError: If |z| exceeds the evaluation radius.
        NonConvergenceError: If the quadrature budget is exhausted.
    """
    z = require_radius(z)
    phi = map_phi(spec, z, cfg)
    phi_prime = map_phi_prime(spec, z)
    if dil.m == 0:
        return ShearEvaluation.assemble(z, phi, 0j, phi_prime, 0j)

    def h_prime(s: complex) -> complex:
        return map_phi_prime(spec, s) / (1 - dil.omega(s))

    h = integrate_segment(h_prime, 0j, z, cfg)
    hp = phi_prime / (1 - dil.omega(z))
    return ShearEvaluation.assemble(z, h, h - phi, hp, dil.omega(z) * hp)


# --- four-slit partial-fraction terms ------------------------------------


def slit_I10(z: complex) -> complex:
    """Integral of 1/((1 - s)^2 (1 + s)) from 0 to z."""
    z = require_disk(z)
    return z / (2 * (1 - z)) + 0.25 * principal_log((1 + z) / (1 - z))


def slit_I1_half(z: complex) -> complex:
    """Integral of 1/((1 - s)(1 + s)^2) from 0 to z."""
    z = require_disk(z)
    return z / (2 * (1 + z)) + 0.25 * principal_log((1 + z) / (1 - z))


def slit_I1k(z: complex, k: int, n: int) -> complex:
    """Integral of z_k / ((1 - s)(1 + s)(z_k - s)) from 0 to z.

    Raises:
        RootIndexError: When z_k = +-1 or k is outside 0..n-1.
    """
    if not 0 <= k < n:
        raise RootIndexError(f"root index {k} outside 0..{n - 1}")
    if k == 0 or 2 * k == n:
        raise RootIndexError(f"z_{k} = {'1' if k == 0 else '-1'} has its own term")
    z = require_disk(z)
    zk = roots_of_unity(n)[k]
    return (
        -zk * principal_log(1 - z) / (2 * (zk - 1))
        + zk * principal_log(1 + z) / (2 * (zk + 1))
        - zk / (1 - zk * zk) * principal_log(1 - z / zk)
    )


def _eta_summand(eta: complex, zk: complex, z: complex) -> complex:
    d = eta - zk
    rational = (1 / (eta - z) - 1 / eta) / d
    logs = (principal_log(1 - z / eta) - principal_log(1 - z / zk)) / (d * d)
    return zk * (rational - logs)


def slit_I_eta(eta: complex, n: int, z: complex) -> complex:
    """Integral of 1/((s - eta)^2 (1 - s^n)) from 0 to z, for eta^n != 1.

    Raises:
        ResonanceError: When eta is an n-th root of unity.
    """
    eta = complex(eta)
    if abs(eta**n - 1) <= RESONANCE_TOL:
        raise ResonanceError(f"eta = {eta!r} is an {n}-th root of unity")
    z = require_disk(z)
    return -sum(_eta_summand(eta, zk, z) for zk in roots_of_unity(n)) / n


def cube_pole_term(m: int, n: int, z: complex) -> complex:
    """Contribution (z_m / (2n)) [1/(z - z_m)^2 - 1/z_m^2] of the triple pole."""
    zm = roots_of_unity(n)[m]
    return zm / (2 * n) * (1 / (z - zm) ** 2 - 1 / (zm * zm))


def slit_I3m(m: int, n: int, z: complex) -> complex:
    """Integral of 1/((s - z_m)^2 (1 - s^n)) from 0 to z.

    Raises:
        RootIndexError: If m is outside 0..n-1.
    """
    if not 0 <= m < n:
        raise RootIndexError(f"root index {m} outside 0..{n - 1}")
    z = require_disk(z)
    roots = roots_of_unity(n)
    zm = roots[m]
    regular = sum(_eta_summand(zm, zk, z) for k, zk in enumerate(roots) if k != m)
    return -regular / n + cube_pole_term(m, n, z)


def _nearest_resonance(p: SlitMapParams, n: int) -> tuple[int, float] | None:
    """(m, |gamma - 2 pi m / n|) for the closest admissible m, if any."""
    if p.gamma is None:
        return None
    m = round(p.gamma * n / (2 * math.pi))
    if not (m >= 1 and 2 * m < n):
        return None
    return m, abs(p.gamma - 2 * math.pi * m / n)


def resonant_index(p: SlitMapParams, n: int) -> int | None:
    """Return m when gamma = 2 pi m / n (0 < m < n/2), else None.

    An exact rational gamma/pi is tested exactly. A float gamma resonates
    within RESONANCE_TOL; within resonance_window it is treated as resonant.
    """
    if p.gamma is None:
        return None
    if p.gamma_over_pi is not None:
        turns = p.gamma_over_pi * n / 2
        if turns.denominator == 1:
            return int(turns)
        return None
    nearest = _nearest_resonance(p, n)
    if nearest is None:
        return None
    m, gap = nearest
    if abs(p.gamma * n / (2 * math.pi) - m) <= RESONANCE_TOL:
        return m
    if gap <= get_settings().resonance_window:
        logger.debug(f"gamma={p.gamma} within {gap:.2e} of 2 pi {m}/{n}; resonant route")
        return m
    return None


def near_resonance(p: SlitMapParams, n: int) -> bool:
    """Whether gamma is off resonance but within near_resonance_band of it.

    There the generic I_eta sum cancels catastrophically (its error grows
    like machine epsilon over the squared gap) while the resonant formulas
    are still off by the gap itself, so neither meets CLOSED_FORM_THRESHOLD.
    """
    if resonant_index(p, n) is not None:
        return False
    nearest = _nearest_resonance(p, n)
    return nearest is not None and nearest[1] <= get_settings().near_resonance_band


def slit_closed_terms(p: SlitMapParams, n: int, z: complex) -> SlitClosedFormTerms:
    """Evaluate I1, I2, I3 and their sub-terms for the dilatation z^n.

    Raises:
        UnsupportedError: For the degenerate c = +-2 tags.
    """
    if p.degenerate is not None:
        raise UnsupportedError(f"no closed form for the degenerate tag {p.degenerate.value}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    z = require_disk(z)
    i10 = slit_I10(z)
    i1_half = slit_I1_half(z) if n % 2 == 0 else None
    i1k = {k: slit_I1k(z, k, n) for k in range(1, n) if 2 * k != n}
    i1 = (i10 + (i1_half or 0j) + sum(i1k.values())) / n

    m = resonant_index(p, n)
    if m is not None:
        logger.debug(f"resonant slit shear: gamma = 2 pi {m}/{n}")
        i3 = slit_I3m(m, n, z)
        i2 = slit_I3m(n - m, n, z)
    else:
        if near_resonance(p, n):
            logger.warning(
                f"gamma={p.gamma} is within {get_settings().near_resonance_band:g} of a "
                f"resonance for n={n}; the closed form is inaccurate there, prefer the oracle"
            )
        eta = p.eta
        i3 = slit_I_eta(eta, n, z)
        i2 = slit_I_eta(eta.conjugate(), n, z)
    return SlitClosedFormTerms(
        n=n, I1=i1, I2=i2, I3=i3, I10=i10, I1k=i1k, I1_half=i1_half, resonant_index=m
    )


def slit_shear_closed(p: SlitMapParams, n: int, z: complex) -> ShearEvaluation:
    """Closed-form shear of the four-slit map with dilatation z^n."""
    terms = slit_closed_terms(p, n, z)
    z = complex(z)
    assert p.gamma is not None
    eta = p.eta
    b_term = 1j * p.B / (2 * math.sin(p.gamma)) * (eta.conjugate() * terms.I2 - eta * terms.I3)
    h = 2 * p.A * terms.I1 + SLIT_B_TERM_SIGN * b_term
    g = h - slit_phi(p, z)
    omega = z**n
    hp = slit_phi_prime(p, z) / (1 - omega)
    return ShearEvaluation.assemble(z, ensure_finite(h, "slit shear"), g, hp, omega * hp)


def corollary_shear_closed(alpha: float, n: int, z: complex) -> ShearEvaluation:
    """Shear of the c = 0 map with A = sin^2(alpha)/2, B = cos^2(alpha).

    h = sin^2(alpha) I1 - (cos^2(alpha)/2) (I2 + I3).
    """
    p = SlitMapParams.corollary(alpha)
    terms = slit_closed_terms(p, n, z)
    z = complex(z)
    h = math.sin(alpha) ** 2 * terms.I1 - 0.5 * math.cos(alpha) ** 2 * (terms.I2 + terms.I3)
    omega = z**n
    hp = slit_phi_prime(p, z) / (1 - omega)
    return ShearEvaluation.assemble(z, h, h - slit_phi(p, z), hp, omega * hp)


# --- regular n-gon Appell forms ------------------------------------------


def polygon_shear_z2n(
    p: NGonParams, z: complex, cfg: QuadratureConfig | None = None
) -> ShearEvaluation:
    """Shear of the n-gon map with dilatation z^(2n).

    h = z F1(1/n, 1+2/n, 1; 1+1/n; z^n, -z^n) and
    g = z^(2n+1)/(2n+1) F1(2+1/n, 1+2/n, 1; 3+1/n; z^n, -z^n).
    """
    z = require_disk(z)
    n = p.n
    if z == 0:
        return ShearEvaluation.assemble(z, 0j, 0j, 1 + 0j, 0j)
    zn = z**n
    b1 = 1 + 2 / n
    h = z * appell_f1(AppellF1Params(a=1 / n, b1=b1, b2=1, c=1 + 1 / n), zn, -zn, cfg)
    g = (
        z ** (2 * n + 1)
        / (2 * n + 1)
        * appell_f1(AppellF1Params(a=2 + 1 / n, b1=b1, b2=1, c=3 + 1 / n), zn, -zn, cfg)
    )
    omega = zn * zn
    hp = ngon_phi_prime(p, z) / (1 - omega)
    return ShearEvaluation.assemble(z, h, g, hp, omega * hp)


def _odd_power_f1_sum(
    n: int, z: complex, ks: range, cfg: QuadratureConfig | None
) -> complex:
    zn = z**n
    total = 0j
    for k in ks:
        a = (2 * k + 1) / n
        params = AppellF1Params(a=a, b1=1 + 2 / n, b2=1, c=1 + a)
        total += z ** (2 * k + 1) / (2 * k + 1) * appell_f1(params, zn, -zn, cfg)
    return total


def polygon_shear_z2(
    p: NGonParams, z: complex, cfg: QuadratureConfig | None = None
) -> ShearEvaluation:
    """Shear of the n-gon map (odd n) with dilatation z^2.

    h sums z^(2k+1)/(2k+1) F1((2k+1)/n, 1+2/n, 1; 1+(2k+1)/n; z^n, -z^n)
    over k = 0..n-1, g the same terms over k = 1..n.

    Raises:
        ParityError: If n is even.
    """
    n = p.n
    if n % 2 == 0:
        raise ParityError(f"the z^2 shear needs an odd polygon, got n = {n}")
    z = require_disk(z)
    if z == 0:
        return ShearEvaluation.assemble(z, 0j, 0j, 1 + 0j, 0j)
    h = _odd_power_f1_sum(n, z, range(0, n), cfg)
    g = _odd_power_f1_sum(n, z, range(1, n + 1), cfg)
    omega = z * z
    hp = ngon_phi_prime(p, z) / (1 - omega)
    return ShearEvaluation.assemble(z, h, g, hp, omega * hp)


# --- dispatch ------------------------------------------------------------


def closed_form_shear(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> ShearEvaluation | None:
    """Closed-form shear when the catalog has one for (spec, dil), else None.

    Slit maps with gamma inside the near-resonance band get None, so
    evaluate_shear falls back to the oracle there.
    """
    z = require_radius(z)
    if isinstance(spec, FourSlitMap):
        if dil.m >= 1 and spec.params.degenerate is None:
            if near_resonance(spec.params, dil.m):
                logger.debug(f"near-resonant slit shear for m={dil.m}; oracle route")
                return None
            return slit_shear_closed(spec.params, dil.m, z)
        return None
    if isinstance(spec, RegularNGonMap):
        n = spec.params.n
        if dil.m == 2 * n:
            return polygon_shear_z2n(spec.params, z, cfg)
        if dil.m == 2 and n % 2 == 1:
            return polygon_shear_z2(spec.params, z, cfg)
    return None


def evaluate_shear(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
    prefer_closed: bool = True,
) -> ShearEvaluation:
    """Shear at z from the closed form when available, else from the oracle."""
    require_radius(z)
    if prefer_closed:
        closed = closed_form_shear(spec, dil, z, cfg)
        if closed is not None:
            return closed
    return shear_oracle(spec, dil, z, cfg)


# --- verification --------------------------------------------------------


@dataclass
class ShearReport:
    """Residuals of one (map, dilatation) pair over a sample set."""

    samples: int
    construction_residual: float = 0.0
    dilatation_residual: float = 0.0
    min_jacobian: float = math.inf
    closed_form_deviation: float | None = None
    derivative_residual: float | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def success(self) -> bool:
        """Whether every residual is under its threshold and J_f > 0."""
        return (
            not self.failures
            and self.construction_residual < CONSTRUCTION_THRESHOLD
            and self.dilatation_residual < DILATATION_THRESHOLD
            and self.min_jacobian > 0.0
            and (
                self.derivative_residual is None
                or self.derivative_residual < DILATATION_THRESHOLD
            )
            and (
                self.closed_form_deviation is None
                or self.closed_form_deviation < CLOSED_FORM_THRESHOLD
            )
        )


def _closed_fd_residuals(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    closed: ShearEvaluation,
    cfg: QuadratureConfig | None,
) -> tuple[float, float]:
    """(|g' - omega h'| / |h'|, |h'_fd - h'| / |h'|) from finite differences."""
    z = closed.z

    @lru_cache(maxsize=8)
    def at(s: complex) -> ShearEvaluation:
        value = closed_form_shear(spec, dil, s, cfg)
        assert value is not None
        return value

    def h_of(s: complex) -> complex:
        return at(s).h

    def g_of(s: complex) -> complex:
        return at(s).g

    hp_fd = central_difference(h_of, z, FD_STEP)
    gp_fd = central_difference(g_of, z, FD_STEP)
    scale = abs(hp_fd)
    return (
        abs(gp_fd - dil.omega(z) * hp_fd) / scale,
        abs(hp_fd - closed.h_prime) / scale,
    )


def verify_shear(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    samples: list[complex],
    cfg: QuadratureConfig | None = None,
    check_derivatives: bool = True,
) -> ShearReport:
    """Check the shear identities at every sample; never raises on failure."""
    report = ShearReport(samples=len(samples))
    for z in samples:
        try:
            phi = map_phi(spec, z, cfg)
            oracle = shear_oracle(spec, dil, z, cfg)
            closed = closed_form_shear(spec, dil, z, cfg)
        except ShearLabError as e:
            report.failures.append(f"z={z!r}: {type(e).__name__}: {e}")
            continue

        evaluations = [oracle] if closed is None else [oracle, closed]
        for ev in evaluations:
            report.construction_residual = max(
                report.construction_residual, abs(ev.h - ev.g - phi)
            )
        report.dilatation_residual = max(
            report.dilatation_residual,
            abs(oracle.g_prime - dil.omega(z) * oracle.h_prime),
        )
        report.min_jacobian = min(report.min_jacobian, oracle.jacobian)
        if closed is None:
            continue

        deviation = max(abs(closed.h - oracle.h), abs(closed.g - oracle.g))
        report.closed_form_deviation = max(report.closed_form_deviation or 0.0, deviation)
        if check_derivatives and abs(z) + 2 * FD_STEP <= get_settings().r_max:
            try:
                dil_res, deriv_res = _closed_fd_residuals(spec, dil, closed, cfg)
            except ShearLabError as e:
                report.failures.append(f"z={z!r}: {type(e).__name__}: {e}")
                continue
            report.dilatation_residual = max(report.dilatation_residual, dil_res)
            report.derivative_residual = max(report.derivative_residual or 0.0, deriv_res)

    if not report.success:
        logger.info(
            f"shear verification failed for m={dil.m}: "
            f"construction {report.construction_residual:.2e}, "
            f"closed form {report.closed_form_deviation}, "
            f"{len(report.failures)} point failures"
        )
    return report


def conjugate_symmetry_residual(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> float:
    """|f(conj z) - conj f(z)| for a real-coefficient map and dilatation."""
    f = evaluate_shear(spec, dil, z, cfg).f
    f_conj = evaluate_shear(spec, dil, complex(z).conjugate(), cfg).f
    return abs(f_conj - f.conjugate())

