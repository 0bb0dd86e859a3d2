"""Weierstrass-Enneper lifts of liftable shears to minimal surfaces.

For omega = q^2 the surface over f = h + conj(g) has height
w = 2 Im psi, psi(z) = int_0^z q(s) phi'(s) / (1 - omega(s)) ds.
"""

import logging

from shearlab.core.exceptions import NotLiftableError, ParityError
from shearlab.models.maps import ConformalMapSpec, NGonParams, RegularNGonMap
from shearlab.models.numerics import AppellF1Params, QuadratureConfig
from shearlab.models.shear import MonomialDilatation
from shearlab.models.surface import SurfaceSample, WeierstrassTriple
from shearlab.services.maps import map_phi_prime, require_disk, require_radius
from shearlab.services.numerics import integrate_segment
from shearlab.services.shear import evaluate_shear
from shearlab.services.specfun import appell_f1

logger = logging.getLogger(__name__)


def _require_liftable(dil: MonomialDilatation) -> None:
    if not dil.liftable:
        raise NotLiftableError(f"omega = z^{dil.m} is not a square; no minimal lift")


def psi_oracle(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Lift integral psi by segment quadrature.

    Raises:
        NotLiftableError: When m is odd.
        DomainError: If |z| exceeds the evaluation radius.
    """
    _require_liftable(dil)
    z = require_radius(z)
    if dil.m == 0:
        return 0j

    def integrand(s: complex) -> complex:
        return dil.q(s) * map_phi_prime(spec, s) / (1 - dil.omega(s))

    return integrate_segment(integrand, 0j, z, cfg)


def _z2n_lift(p: NGonParams, z: complex, cfg: QuadratureConfig | None) -> complex:
    n = p.n
    zn = z**n
    params = AppellF1Params(a=1 + 1 / n, b1=1 + 2 / n, b2=1, c=2 + 1 / n)
    return z ** (n + 1) * appell_f1(params, zn, -zn, cfg)


def psi_polygon_z2n(
    p: NGonParams, z: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """psi = z^(n+1)/(n+1) F1(1+1/n, 1+2/n, 1; 2+1/n; z^n, -z^n) for omega = z^(2n)."""
    z = require_disk(z)
    if z == 0:
        return 0j
    return _z2n_lift(p, z, cfg) / (p.n + 1)


def psi_polygon_z2n_literal(
    p: NGonParams, z: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """The z^(2n) lift with prefactor z^(n+1) instead of z^(n+1)/(n+1).

    Off from the true lift by the factor n + 1; kept as a regression
    reference only.
    """
    z = require_disk(z)
    if z == 0:
        return 0j
    return _z2n_lift(p, z, cfg)


def psi_polygon_z2(
    p: NGonParams, z: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """psi for omega = z^2 on an odd polygon.

    Sum over k = 0..n-1 of z^(2k+2)/(2k+2) F1((2k+2)/n, 1+2/n, 1; 1+(2k+2)/n; z^n, -z^n).

    Raises:
        ParityError: If n is even.
    """
    n = p.n
    if n % 2 == 0:
        raise ParityError(f"the z^2 lift needs an odd polygon, got n = {n}")
    z = require_disk(z)
    if z == 0:
        return 0j
    zn = z**n
    total = 0j
    for k in range(n):
        a = (2 * k + 2) / n
        params = AppellF1Params(a=a, b1=1 + 2 / n, b2=1, c=1 + a)
        total += z ** (2 * k + 2) / (2 * k + 2) * appell_f1(params, zn, -zn, cfg)
    return total


def closed_form_psi(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> complex | None:
    """Closed-form lift when the catalog has one, else None."""
    if not isinstance(spec, RegularNGonMap):
        return None
    n = spec.params.n
    if dil.m == 2 * n:
        return psi_polygon_z2n(spec.params, z, cfg)
    if dil.m == 2 and n % 2 == 1:
        return psi_polygon_z2(spec.params, z, cfg)
    return None


def weierstrass_triple(h_prime: complex, g_prime: complex, q: complex) -> WeierstrassTriple:
    """phi1 = h' + g', phi2 = -i (h' - g'), phi3 = -2i q h'."""
    return WeierstrassTriple(
        phi1=h_prime + g_prime,
        phi2=-1j * (h_prime - g_prime),
        phi3=-2j * q * h_prime,
    )


def surface_triple(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
) -> WeierstrassTriple:
    """Weierstrass triple of the lifted shear at z."""
    _require_liftable(dil)
    z = require_radius(z)
    hp = map_phi_prime(spec, z) / (1 - dil.omega(z))
    return weierstrass_triple(hp, dil.omega(z) * hp, dil.q(z))


def surface_point(
    spec: ConformalMapSpec,
    dil: MonomialDilatation,
    z: complex,
    cfg: QuadratureConfig | None = None,
    prefer_closed: bool = True,
) -> SurfaceSample:
    """Surface point over z, from closed forms when available.

    Raises:
        NotLiftableError: When m is odd.
    """
    _require_liftable(dil)
    z = require_radius(z)
    f = evaluate_shear(spec, dil, z, cfg, prefer_closed=prefer_closed).f
    psi = closed_form_psi(spec, dil, z, cfg) if prefer_closed else None
    if psi is None:
        psi = psi_oracle(spec, dil, z, cfg)
    return SurfaceSample(source=z, u=f.real, v=f.imag, w=2 * psi.imag)
