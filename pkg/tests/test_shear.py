"""Tests for the shear oracle and the closed-form shears."""

import cmath
import logging
import math
from fractions import Fraction

import pytest

from shearlab.core.exceptions import (
    DomainError,
    ParityError,
    ResonanceError,
    RootIndexError,
    UnsupportedError,
)
from shearlab.models.maps import FourSlitMap, NGonParams, RegularNGonMap, SlitMapParams
from shearlab.models.numerics import AppellF1Params, QuadratureConfig
from shearlab.models.shear import MonomialDilatation
from shearlab.services import shear as shear_service
from shearlab.services.maps import map_phi, ngon_phi, slit_phi
from shearlab.services.numerics import central_difference, integrate_segment
from shearlab.services.shear import (
    closed_form_shear,
    conjugate_symmetry_residual,
    corollary_shear_closed,
    cube_pole_term,
    evaluate_shear,
    polygon_shear_z2,
    polygon_shear_z2n,
    near_resonance,
    resonant_index,
    shear_oracle,
    slit_closed_terms,
    slit_I1_half,
    slit_I1k,
    slit_I3m,
    slit_I10,
    slit_I_eta,
    slit_shear_closed,
    verify_shear,
)
from shearlab.services.specfun import appell_f1


class TestShearOracle:
    """Tests for the quadrature oracle."""

    def test_zero_dilatation_returns_map(self, slit_map: FourSlitMap):
        z = 0.4 - 0.3j
        ev = shear_oracle(slit_map, MonomialDilatation(m=0), z)
        assert ev.h == slit_phi(slit_map.params, z)
        assert ev.g == 0
        assert ev.f == ev.h
        assert ev.jacobian == pytest.approx(abs(ev.h_prime) ** 2)

    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_construction_identity(self, triangle: RegularNGonMap, m: int):
        z = 0.5 + 0.4j
        ev = shear_oracle(triangle, MonomialDilatation(m=m), z)
        assert abs(ev.h - ev.g - map_phi(triangle, z)) < 1e-11

    def test_matches_appell_form(self, square: RegularNGonMap, cfg: QuadratureConfig):
        """n = 4, m = 8: h = z F1(1/4, 3/2, 1; 5/4; z^4, -z^4)."""
        z = 0.3
        ev = shear_oracle(square, MonomialDilatation(m=8), z, cfg)
        zn = z**4
        expected = z * appell_f1(AppellF1Params(a=0.25, b1=1.5, b2=1, c=1.25), zn, -zn, cfg)
        assert abs(ev.h - expected) < 1e-10

    def test_dilatation_identity(self, slit_map: FourSlitMap):
        z = 0.2 + 0.7j
        dil = MonomialDilatation(m=3)
        ev = shear_oracle(slit_map, dil, z)
        assert ev.g_prime == pytest.approx(dil.omega(z) * ev.h_prime, rel=1e-14)
        assert ev.jacobian > 0

    def test_beyond_radius_rejected(self, slit_map: FourSlitMap):
        with pytest.raises(DomainError):
            shear_oracle(slit_map, MonomialDilatation(m=2), 0.9999)


class TestSlitPartialFractionTerms:
    """Tests for the sub-integrals of the four-slit closed form."""

    def test_terms_vanish_at_origin(self):
        assert slit_I10(0) == 0
        assert slit_I1_half(0) == 0
        assert slit_I1k(0, 1, 4) == 0

    def test_I10_derivative(self):
        z = 0.4
        fd = central_difference(slit_I10, z)
        assert abs(fd - 1 / ((1 - z) ** 2 * (1 + z))) < 1e-8

    def test_I1_half_matches_quadrature(self, cfg: QuadratureConfig):
        z = 0.3 - 0.5j
        quad = integrate_segment(lambda s: 1 / ((1 - s) * (1 + s) ** 2), 0j, z, cfg)
        assert abs(slit_I1_half(z) - quad) < 1e-12

    def test_I1k_matches_quadrature(self, cfg: QuadratureConfig):
        """n = 4, k = 1 so z_k = i."""
        z, zk = 0.5, 1j
        quad = integrate_segment(lambda s: zk / ((1 - s) * (1 + s) * (zk - s)), 0j, z, cfg)
        assert abs(slit_I1k(z, 1, 4) - quad) < 1e-10

    @pytest.mark.parametrize(("k", "n"), [(0, 4), (2, 4), (4, 4), (-1, 3)])
    def test_I1k_excluded_indices(self, k: int, n: int):
        with pytest.raises(RootIndexError):
            slit_I1k(0.2, k, n)

    def test_I_eta_matches_quadrature(self, cfg: QuadratureConfig):
        eta = cmath.exp(1j * math.pi / 3)
        z = 0.4
        quad = integrate_segment(lambda s: 1 / ((s - eta) ** 2 * (1 - s * s)), 0j, z, cfg)
        assert abs(slit_I_eta(eta, 2, z) - quad) < 1e-10

    def test_I_eta_origin(self):
        assert slit_I_eta(cmath.exp(0.4j), 3, 0) == 0

    def test_I_eta_conjugate_pairing(self):
        eta = cmath.exp(0.9j)
        z = 0.3 + 0.45j
        left = slit_I_eta(eta.conjugate(), 5, z.conjugate())
        assert left == pytest.approx(slit_I_eta(eta, 5, z).conjugate(), rel=1e-13)

    def test_I_eta_rejects_resonance(self):
        with pytest.raises(ResonanceError):
            slit_I_eta(1j, 4, 0.3)

    def test_I3m_matches_quadrature(self, cfg: QuadratureConfig):
        zm = cmath.exp(2j * math.pi / 3)
        z = 0.3
        quad = integrate_segment(lambda s: 1 / ((s - zm) ** 2 * (1 - s**3)), 0j, z, cfg)
        assert abs(slit_I3m(1, 3, z) - quad) < 1e-10

    def test_I3m_origin(self):
        assert abs(slit_I3m(2, 5, 0)) < 1e-15

    def test_cube_pole_term(self):
        """n = 1, m = 0: (1/2)[1/(z - 1)^2 - 1] at z = 0.5 is 1.5."""
        assert cube_pole_term(0, 1, 0.5) == pytest.approx(1.5, rel=1e-15)

    def test_terms_of_even_power_include_half_turn(self, slit_c0: SlitMapParams):
        terms = slit_closed_terms(slit_c0, 4, 0.2 + 0.1j)
        assert terms.I1_half is not None
        assert sorted(terms.I1k) == [1, 3]
        assert slit_closed_terms(slit_c0, 3, 0.2).I1_half is None

    def test_degenerate_tags_have_no_closed_form(self):
        with pytest.raises(UnsupportedError):
            slit_closed_terms(SlitMapParams.from_c(1, 1, -2), 2, 0.3)


class TestResonance:
    """Tests for detecting gamma = 2 pi m / n."""

    def test_exact_fraction(self):
        params = SlitMapParams.from_gamma_fraction(1, 1, Fraction(2, 3))
        assert resonant_index(params, 3) == 1
        assert resonant_index(params, 6) == 2
        assert resonant_index(params, 4) is None

    def test_quarter_turn(self, slit_c0: SlitMapParams):
        assert resonant_index(slit_c0, 4) == 1
        assert resonant_index(slit_c0, 2) is None

    def test_float_gamma(self):
        assert resonant_index(SlitMapParams(A=1, B=1, gamma=2 * math.pi / 5), 5) == 1
        assert resonant_index(SlitMapParams(A=1, B=1, gamma=2 * math.pi / 5 + 1e-3), 5) is None

    def test_float_gamma_inside_window(self):
        params = SlitMapParams(A=1, B=1, gamma=2 * math.pi / 3 + 1e-11)
        assert resonant_index(params, 3) == 1
        assert not near_resonance(params, 3)

    @pytest.mark.parametrize("gap", [1e-9, 1e-7, 2e-6, 1e-5, 1e-4, 9e-4])
    def test_float_gamma_inside_band(self, gap: float):
        params = SlitMapParams(A=1, B=1, gamma=2 * math.pi / 3 + gap)
        assert resonant_index(params, 3) is None
        assert near_resonance(params, 3)
        assert closed_form_shear(FourSlitMap(params=params), MonomialDilatation(m=3), 0.5) is None

    def test_exact_fraction_inside_band(self):
        params = SlitMapParams.from_gamma_fraction(1, 1, Fraction(6667, 10000))
        assert resonant_index(params, 3) is None
        assert near_resonance(params, 3)

    def test_band_is_configurable(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("SHEARLAB_NEAR_RESONANCE_BAND", "0")
        params = SlitMapParams(A=1, B=1, gamma=2 * math.pi / 3 + 1e-5)
        assert not near_resonance(params, 3)

    def test_direct_closed_terms_warn_inside_band(self, caplog: pytest.LogCaptureFixture):
        params = SlitMapParams(A=1, B=1, gamma=2 * math.pi / 3 + 1e-5)
        with caplog.at_level(logging.WARNING, logger="shearlab.services.shear"):
            slit_closed_terms(params, 3, 0.5)
        assert "prefer the oracle" in caplog.text

    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize(
        "gap", [1e-12, 1e-11, 1e-10, 1e-9, 1e-7, 2e-6, 1e-5, 1e-4, 5e-4, 2e-3, 1e-2]
    )
    def test_shear_is_accurate_across_resonance(self, gap: float, sign: int):
        spec = FourSlitMap(params=SlitMapParams(A=1, B=1, gamma=2 * math.pi / 3 + sign * gap))
        dil = MonomialDilatation(m=3)
        z = 0.5 + 0.3j
        ev = evaluate_shear(spec, dil, z)
        oracle = shear_oracle(spec, dil, z)
        assert abs(ev.h - oracle.h) < shear_service.CLOSED_FORM_THRESHOLD
        assert abs(ev.g - oracle.g) < shear_service.CLOSED_FORM_THRESHOLD

    def test_degenerate_never_resonates(self):
        assert resonant_index(SlitMapParams.from_c(1, 1, 2), 4) is None


class TestSlitShearClosedForm:
    """Tests for the four-slit closed-form shear."""

    def test_origin(self, slit_c0: SlitMapParams):
        ev = slit_shear_closed(slit_c0, 2, 0)
        assert abs(ev.h) < 1e-15
        assert abs(ev.g) < 1e-15
        assert abs(ev.f) < 1e-15

    def test_matches_oracle(self, slit_map: FourSlitMap, cfg: QuadratureConfig):
        z = 0.4 + 0.1j
        closed = slit_shear_closed(slit_map.params, 2, z)
        oracle = shear_oracle(slit_map, MonomialDilatation(m=2), z, cfg)
        assert abs(closed.h - oracle.h) < 1e-9
        assert abs(closed.g - oracle.g) < 1e-9

    @pytest.mark.parametrize(("n", "m"), [(3, 1), (5, 2), (6, 1), (4, 1)])
    def test_resonant_matches_oracle(self, n: int, m: int, cfg: QuadratureConfig):
        params = SlitMapParams.from_gamma_fraction(1, 1, Fraction(2 * m, n))
        z = 0.55 - 0.35j
        closed = slit_shear_closed(params, n, z)
        oracle = shear_oracle(FourSlitMap(params=params), MonomialDilatation(m=n), z, cfg)
        assert slit_closed_terms(params, n, z).resonant_index == m
        assert abs(closed.h - oracle.h) < 1e-9

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_generic_gamma_matches_oracle(self, n: int, cfg: QuadratureConfig):
        params = SlitMapParams(A=0.6, B=1.7, gamma=1.1)
        z = -0.3 + 0.6j
        closed = slit_shear_closed(params, n, z)
        oracle = shear_oracle(FourSlitMap(params=params), MonomialDilatation(m=n), z, cfg)
        assert abs(closed.h - oracle.h) < 1e-9
        assert abs(closed.h - closed.g - slit_phi(params, z)) < 1e-10

    def test_corollary_matches_oracle(self, cfg: QuadratureConfig):
        alpha = math.pi / 3
        z = 0.35
        closed = corollary_shear_closed(alpha, 1, z)
        spec = FourSlitMap(params=SlitMapParams.corollary(alpha))
        oracle = shear_oracle(spec, MonomialDilatation(m=1), z, cfg)
        assert abs(closed.h - oracle.h) < 1e-9

    def test_flipped_b_term_sign_breaks_agreement(
        self, slit_map: FourSlitMap, monkeypatch: pytest.MonkeyPatch
    ):
        monkeypatch.setattr(shear_service, "SLIT_B_TERM_SIGN", 1)
        z = 0.5 + 0.2j
        closed = slit_shear_closed(slit_map.params, 2, z)
        oracle = shear_oracle(slit_map, MonomialDilatation(m=2), z)
        assert abs(closed.h - oracle.h) > 1e-2


class TestPolygonShearClosedForm:
    """Tests for the Appell forms of the n-gon shears."""

    def test_z2n_origin(self):
        ev = polygon_shear_z2n(NGonParams(n=3), 0)
        assert (ev.h, ev.g, ev.f) == (0, 0, 0)

    def test_z2n_construction(self):
        p = NGonParams(n=3)
        ev = polygon_shear_z2n(p, 0.5)
        assert abs(ev.h - ev.g - ngon_phi(p, 0.5)) < 1e-10

    @pytest.mark.parametrize("n", [3, 4, 5, 7])
    def test_z2n_matches_oracle(self, n: int, cfg: QuadratureConfig):
        spec = RegularNGonMap(params=NGonParams(n=n))
        z = 0.3 if n == 4 else 0.6 + 0.5j
        closed = polygon_shear_z2n(spec.params, z, cfg)
        oracle = shear_oracle(spec, MonomialDilatation(m=2 * n), z, cfg)
        assert abs(closed.h - oracle.h) < 1e-10
        assert abs(closed.g - oracle.g) < 1e-10

    def test_z2_origin(self):
        ev = polygon_shear_z2(NGonParams(n=5), 0)
        assert (ev.h, ev.g, ev.f) == (0, 0, 0)

    def test_z2_construction(self):
        p = NGonParams(n=3)
        ev = polygon_shear_z2(p, 0.4)
        assert abs(ev.h - ev.g - ngon_phi(p, 0.4)) < 1e-10

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_z2_matches_oracle(self, n: int, cfg: QuadratureConfig):
        spec = RegularNGonMap(params=NGonParams(n=n))
        z = 0.25 + 0.2j
        closed = polygon_shear_z2(spec.params, z, cfg)
        oracle = shear_oracle(spec, MonomialDilatation(m=2), z, cfg)
        assert abs(closed.h - oracle.h) < 1e-10

    def test_z2_needs_odd_polygon(self):
        with pytest.raises(ParityError):
            polygon_shear_z2(NGonParams(n=4), 0.2)


class TestDispatchAndVerification:
    """Tests for closed-form dispatch and the per-pair verifier."""

    def test_catalog_coverage(self, slit_map: FourSlitMap, triangle: RegularNGonMap):
        degenerate = FourSlitMap(params=SlitMapParams.from_c(1, 1, 2))
        z = 0.3
        assert closed_form_shear(slit_map, MonomialDilatation(m=0), z) is None
        assert closed_form_shear(degenerate, MonomialDilatation(m=2), z) is None
        assert closed_form_shear(triangle, MonomialDilatation(m=4), z) is None
        assert closed_form_shear(triangle, MonomialDilatation(m=6), z) is not None
        assert closed_form_shear(triangle, MonomialDilatation(m=2), z) is not None
        assert closed_form_shear(slit_map, MonomialDilatation(m=3), z) is not None

    def test_evaluate_falls_back_to_oracle(self):
        degenerate = FourSlitMap(params=SlitMapParams.from_c(1, 1, -2))
        dil = MonomialDilatation(m=2)
        z = 0.1 + 0.5j
        assert evaluate_shear(degenerate, dil, z) == shear_oracle(degenerate, dil, z)

    def test_evaluate_rejects_points_beyond_radius(self, triangle: RegularNGonMap):
        with pytest.raises(DomainError):
            evaluate_shear(triangle, MonomialDilatation(m=6), 0.9995j)

    def test_verify_polygon_pair(self, triangle: RegularNGonMap):
        samples = [0.8 * cmath.exp(2j * math.pi * k / 10) for k in range(10)] + [0.3 + 0.2j]
        report = verify_shear(triangle, MonomialDilatation(m=6), samples)
        assert report.success, report
        assert report.closed_form_deviation is not None
        assert report.closed_form_deviation < 1e-9
        assert report.min_jacobian > 0

    def test_verify_resonant_slit_pair(self):
        params = SlitMapParams.from_gamma_fraction(1, 1, Fraction(2, 3))
        report = verify_shear(
            FourSlitMap(params=params), MonomialDilatation(m=3), [0.5, -0.2 + 0.7j, 0.6j]
        )
        assert report.success, report

    def test_verify_zero_dilatation(self, slit_map: FourSlitMap):
        report = verify_shear(slit_map, MonomialDilatation(m=0), [0.1, 0.5j, -0.7 + 0.2j])
        assert report.success
        assert report.dilatation_residual == 0.0
        assert report.closed_form_deviation is None

    def test_verify_collects_point_failures(self, triangle: RegularNGonMap):
        report = verify_shear(triangle, MonomialDilatation(m=6), [0.2, 0.9999])
        assert not report.success
        assert len(report.failures) == 1
        assert "DomainError" in report.failures[0]

    def test_verify_detects_flipped_b_term(
        self, slit_map: FourSlitMap, monkeypatch: pytest.MonkeyPatch
    ):
        monkeypatch.setattr(shear_service, "SLIT_B_TERM_SIGN", 1)
        report = verify_shear(slit_map, MonomialDilatation(m=2), [0.5 + 0.2j])
        assert not report.success
        assert report.closed_form_deviation is not None
        assert report.closed_form_deviation > 1e-2

    def test_conjugate_symmetry(self, square: RegularNGonMap):
        residual = conjugate_symmetry_residual(square, MonomialDilatation(m=8), 0.4 + 0.5j)
        assert residual < 1e-12
