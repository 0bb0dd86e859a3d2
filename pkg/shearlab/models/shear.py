"""Shear models: monomial dilatations, evaluations and slit closed-form terms."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, computed_field

from shearlab.core.exceptions import NotLiftableError


class MonomialDilatation(BaseModel):
    """Dilatation omega(z) = z^m; m = 0 stands for omega identically 0."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=0, description="Exponent of the monomial")

    def omega(self, z: complex) -> complex:
        """Value of the dilatation at z."""
        if self.m == 0:
            return 0j
        return complex(z) ** self.m

    @computed_field  # type: ignore[prop-decorator]
    @property
    def liftable(self) -> bool:
        """Whether omega = q^2 for an analytic q."""
        return self.m % 2 == 0

    def q(self, z: complex) -> complex:
        """Analytic square root q(z) = z^(m/2), identically 0 when m = 0.

        Raises:
            NotLiftableError: For odd m.
        """
        if not self.liftable:
            raise NotLiftableError(f"omega = z^{self.m} has no analytic square root")
        if self.m == 0:
            return 0j
        return complex(z) ** (self.m // 2)


class ShearEvaluation(BaseModel):
    """h, g, f = h + conj(g) and the derivatives of h and g at one point."""

    model_config = ConfigDict(frozen=True)

    z: complex
    h: complex
    g: complex
    f: complex
    h_prime: complex
    g_prime: complex

    @computed_field  # type: ignore[prop-decorator]
    @property
    def jacobian(self) -> float:
        """J_f = |h'|^2 - |g'|^2."""
        return abs(self.h_prime) ** 2 - abs(self.g_prime) ** 2

    @classmethod
    def assemble(
        cls, z: complex, h: complex, g: complex, h_prime: complex, g_prime: complex
    ) -> ShearEvaluation:
        """Build an evaluation, forming f from h and g."""
        return cls(
            z=z, h=h, g=g, f=h + g.conjugate(), h_prime=h_prime, g_prime=g_prime
        )


class SlitClosedFormTerms(BaseModel):
    """Sub-integrals of the four-slit closed form at one point.

    I1 is the integral of 1/((1 - s^2)(1 - s^n)); I2 and I3 integrate
    1/((s - conj(eta))^2 (1 - s^n)) and 1/((s - eta)^2 (1 - s^n)).
    resonant_index is m when gamma = 2 pi m/n, else None.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    I1: complex
    I2: complex
    I3: complex
    I10: complex
    I1k: dict[int, complex] = Field(default_factory=dict)
    I1_half: complex | None = None
    resonant_index: int | None = None
