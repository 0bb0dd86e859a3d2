"""Invariant suite behind the `verify` command."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from shearlab.core.config import get_settings
from shearlab.models.maps import (
    FourSlitMap,
    NGonParams,
    RegularNGonMap,
    SlitMapParams,
)
from shearlab.models.numerics import QuadratureConfig
from shearlab.models.shear import MonomialDilatation
from shearlab.services.maps import check_halfline_anchors
from shearlab.services.minsurf import (
    closed_form_psi,
    psi_oracle,
    psi_polygon_z2n,
    psi_polygon_z2n_literal,
    surface_point,
    surface_triple,
    weierstrass_triple,
)
from shearlab.services.shear import (
    CLOSED_FORM_THRESHOLD,
    CONSTRUCTION_THRESHOLD,
    DILATATION_THRESHOLD,
    conjugate_symmetry_residual,
    corollary_shear_closed,
    shear_oracle,
    verify_shear,
)

logger = logging.getLogger(__name__)

Scope = Literal["all", "slit", "polygon", "surface"]
SCOPES: tuple[Scope, ...] = ("all", "slit", "polygon", "surface")

ISOTHERMAL_THRESHOLD = 1e-12
PROJECTION_THRESHOLD = 1e-10
REAL_AXIS_THRESHOLD = 1e-12
ANCHOR_RE_TOL = 1e-2
ANCHOR_IM_TOL = 1e-3
UNSCALED_MIN_RESIDUAL = 0.1
SAMPLE_RADIUS = 0.9


@dataclass
class InvariantCheck:
    """Worst residual of one invariant against its threshold.

    With kind "upper" the residual must stay below the threshold, with
    kind "lower" it must exceed it.
    """

    name: str
    residual: float
    threshold: float
    kind: Literal["upper", "lower"] = "upper"
    detail: str = ""

    @property
    def passed(self) -> bool:
        if math.isnan(self.residual):
            return False
        if self.kind == "lower":
            return self.residual > self.threshold
        return self.residual < self.threshold


@dataclass
class VerificationReport:
    """Outcome of the invariant suite for one scope."""

    scope: Scope
    checks: list[InvariantCheck] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> list[InvariantCheck]:
        return [check for check in self.checks if not check.passed]

    def lines(self) -> list[str]:
        """Human-readable report, one invariant per line."""
        out = []
        for c in self.checks:
            relation = "<" if c.kind == "upper" else ">"
            status = "ok  " if c.passed else "FAIL"
            suffix = f"  ({c.detail})" if c.detail else ""
            out.append(
                f"{status} {c.name:<48} {c.residual:.3e} {relation} {c.threshold:.1e}{suffix}"
            )
        return out


def random_disk_points(
    rng: np.random.Generator, count: int, radius: float = SAMPLE_RADIUS
) -> list[complex]:
    """Points uniformly distributed in |z| <= radius."""
    r = radius * np.sqrt(rng.random(count))
    t = 2 * math.pi * rng.random(count)
    return [complex(x) for x in r * np.exp(1j * t)]


class VerificationSuite:
    """Runs the shear, geometry and surface invariants on seeded samples."""

    def __init__(
        self,
        samples: int | None = None,
        seed: int | None = None,
        cfg: QuadratureConfig | None = None,
    ) -> None:
        settings = get_settings()
        self.samples = samples or settings.verify_samples
        self.rng = np.random.default_rng(settings.verify_seed if seed is None else seed)
        self.cfg = cfg or QuadratureConfig.from_settings()

    def points(self) -> list[complex]:
        return random_disk_points(self.rng, self.samples)

    # ------------------------------------------------------------------
    # shear checks
    # ------------------------------------------------------------------

    def _shear_checks(
        self, label: str, configs: list[tuple[str, FourSlitMap | RegularNGonMap, int]]
    ) -> list[InvariantCheck]:
        construction = dilatation = deviation = 0.0
        min_jacobian = math.inf
        failures = 0
        notes: list[str] = []
        for name, spec, m in configs:
            report = verify_shear(spec, MonomialDilatation(m=m), self.points(), self.cfg)
            logger.info(f"{label} {name}: success={report.success}")
            if report.failures:
                failures += len(report.failures)
                notes.append(f"{name}: {report.failures[0]}")
            construction = max(construction, report.construction_residual)
            dilatation = max(dilatation, report.dilatation_residual)
            min_jacobian = min(min_jacobian, report.min_jacobian)
            if report.closed_form_deviation is not None:
                deviation = max(deviation, report.closed_form_deviation)
        detail = "; ".join(notes)
        return [
            InvariantCheck(f"{label}: failed evaluations", failures, 1, detail=detail),
            InvariantCheck(f"{label}: h - g - phi", construction, CONSTRUCTION_THRESHOLD),
            InvariantCheck(f"{label}: closed form vs oracle", deviation, CLOSED_FORM_THRESHOLD),
            InvariantCheck(f"{label}: |g' - omega h'| / |h'|", dilatation, DILATATION_THRESHOLD),
            InvariantCheck(f"{label}: min Jacobian", min_jacobian, 0.0, kind="lower"),
        ]

    def slit_checks(self) -> list[InvariantCheck]:
        configs: list[tuple[str, FourSlitMap | RegularNGonMap, int]] = []
        for n in range(1, 7):
            for ratio in (Fraction(1, 2), Fraction(2, 3)):
                params = SlitMapParams.from_gamma_fraction(1.0, 1.0, ratio)
                configs.append((f"n={n} gamma={ratio}pi", FourSlitMap(params=params), n))
        for n, m in ((3, 1), (5, 2), (6, 1)):
            params = SlitMapParams.from_gamma_fraction(1.0, 1.0, Fraction(2 * m, n))
            configs.append((f"n={n} resonant m={m}", FourSlitMap(params=params), n))
        checks = self._shear_checks("slit", configs)

        corollary = 0.0
        for alpha in (math.pi / 6, math.pi / 3):
            p = SlitMapParams.corollary(alpha)
            for n in (1, 2, 3):
                for z in self.points():
                    closed = corollary_shear_closed(alpha, n, z)
                    oracle = shear_oracle(
                        FourSlitMap(params=p), MonomialDilatation(m=n), z, self.cfg
                    )
                    corollary = max(corollary, abs(closed.h - oracle.h))
        checks.append(
            InvariantCheck("slit: corollary closed form vs oracle", corollary, CLOSED_FORM_THRESHOLD)
        )

        re_dev = im_dev = 0.0
        for c in (-2.0, 0.0, 2.0):
            for A in (0.5, 1.0, 2.0):
                for B in (0.5, 1.0, 2.0):
                    anchors = check_halfline_anchors(
                        SlitMapParams.from_c(A, B, c), 0.9999, ANCHOR_RE_TOL, ANCHOR_IM_TOL
                    )
                    re_dev = max(re_dev, anchors.max_re_deviation)
                    im_dev = max(im_dev, anchors.max_im_deviation)
        checks.append(InvariantCheck("slit: endpoint abscissa (traced)", re_dev, ANCHOR_RE_TOL))
        checks.append(InvariantCheck("slit: endpoint height (traced)", im_dev, ANCHOR_IM_TOL))
        return checks

    def polygon_checks(self) -> list[InvariantCheck]:
        configs: list[tuple[str, FourSlitMap | RegularNGonMap, int]] = []
        for n in range(3, 8):
            configs.append((f"n={n} z^2n", RegularNGonMap(params=NGonParams(n=n)), 2 * n))
        for n in (3, 5, 7):
            configs.append((f"n={n} z^2", RegularNGonMap(params=NGonParams(n=n)), 2))
        checks = self._shear_checks("polygon", configs)

        symmetry = 0.0
        for n in (3, 4):
            spec = RegularNGonMap(params=NGonParams(n=n))
            dil = MonomialDilatation(m=2 * n)
            for z in self.points()[:5]:
                symmetry = max(symmetry, conjugate_symmetry_residual(spec, dil, z, self.cfg))
        checks.append(
            InvariantCheck("polygon: f(conj z) = conj f(z)", symmetry, CLOSED_FORM_THRESHOLD)
        )
        return checks

    def surface_checks(self) -> list[InvariantCheck]:
        isothermal = 0.0
        draws = self.rng.standard_normal((200, 4))
        for a, b, c, d in draws:
            hp, q = complex(a, b), complex(c, d)
            triple = weierstrass_triple(hp, q * q * hp, q)
            isothermal = max(isothermal, triple.isothermal_residual)

        lift = projection = real_axis = 0.0
        lift_configs = [(n, 2 * n) for n in (3, 4, 5)] + [(n, 2) for n in (3, 5, 7)]
        for n, m in lift_configs:
            spec = RegularNGonMap(params=NGonParams(n=n))
            dil = MonomialDilatation(m=m)
            for z in self.points():
                closed = closed_form_psi(spec, dil, z, self.cfg)
                assert closed is not None
                lift = max(lift, abs(closed - psi_oracle(spec, dil, z, self.cfg)))
                isothermal = max(
                    isothermal, surface_triple(spec, dil, z, self.cfg).isothermal_residual
                )
            for z in self.points()[:3]:
                sample = surface_point(spec, dil, z, self.cfg)
                f = shear_oracle(spec, dil, z, self.cfg).f
                projection = max(projection, abs(complex(sample.u, sample.v) - f))
            for x in (-0.6, 0.3, 0.8):
                real_axis = max(real_axis, abs(surface_point(spec, dil, x, self.cfg).w))

        p3 = NGonParams(n=3)
        oracle = psi_oracle(RegularNGonMap(params=p3), MonomialDilatation(m=6), 0.5, self.cfg)
        literal = abs(psi_polygon_z2n_literal(p3, 0.5, self.cfg) - oracle) / abs(oracle)
        corrected = abs(psi_polygon_z2n(p3, 0.5, self.cfg) - oracle)
        return [
            InvariantCheck("surface: isothermal residual", isothermal, ISOTHERMAL_THRESHOLD),
            InvariantCheck("surface: closed-form lift vs oracle", lift, CLOSED_FORM_THRESHOLD),
            InvariantCheck("surface: (u, v) = f", projection, PROJECTION_THRESHOLD),
            InvariantCheck("surface: w on the real axis", real_axis, REAL_AXIS_THRESHOLD),
            InvariantCheck("surface: z^2n lift with 1/(n+1)", corrected, CLOSED_FORM_THRESHOLD),
            InvariantCheck(
                "surface: z^2n lift without 1/(n+1) (relative)",
                literal,
                UNSCALED_MIN_RESIDUAL,
                kind="lower",
            ),
        ]

    def run(self, scope: Scope = "all") -> VerificationReport:
        """Run the checks of one scope."""
        if scope not in SCOPES:
            raise ValueError(f"unknown scope {scope!r}; choose from {SCOPES}")
        groups: dict[str, Callable[[], list[InvariantCheck]]] = {
            "slit": self.slit_checks,
            "polygon": self.polygon_checks,
            "surface": self.surface_checks,
        }
        report = VerificationReport(scope=scope)
        for name, run_group in groups.items():
            if scope in ("all", name):
                report.checks.extend(run_group())
        logger.info(
            f"verification scope={scope}: {len(report.checks) - len(report.failed)}"
            f"/{len(report.checks)} invariants hold"
        )
        return report


def run_verification(
    scope: Scope = "all",
    samples: int | None = None,
    seed: int | None = None,
    cfg: QuadratureConfig | None = None,
) -> VerificationReport:
    """Run the invariant suite for scope with seeded random samples."""
    return VerificationSuite(samples=samples, seed=seed, cfg=cfg).run(scope)
