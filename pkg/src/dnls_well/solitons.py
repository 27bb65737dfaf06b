"""Closed-form traveling-wave profiles and their existence region.

The model is i u_t + u_xx + i|u|^2 u_x + b|u|^4 u = 0 with gamma = 1 + 16b/3.
Profiles come in three gauges:

  capital Phi : real positive even solution of the double-power elliptic ODE
  varphi      : e^{i c x / 2} * Phi (frame of the gauge-transformed equation)
  phi         : Phi * exp(i c x/2 - (i/4) * cumulative integral of Phi^2)

The decay is exponential for omega > c^2/4 ("bright") and ~1/x when
c = 2*sqrt(omega) ("algebraic", only for gamma > 0).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from .field import Field, Grid, cumulative_integral


class RegionError(ValueError):
    """Parameters outside the soliton existence region."""


@dataclass(frozen=True)
class ModelParams:
    """Quintic coefficient b and derived gamma = 1 + 16b/3."""

    b: float

    @property
    def gamma(self) -> float:
        return 1.0 + (16.0 / 3.0) * self.b


def s_lower(p: ModelParams) -> float:
    """Velocity-parameter bound s_* = sqrt(-gamma/(1-gamma)) for gamma <= 0."""
    g = p.gamma
    if g > 0:
        raise RegionError("s_* is defined only for gamma <= 0 (b <= -3/16)")
    return float(np.sqrt(-g / (1.0 - g)))


def existence_region(p: ModelParams, omega: float, c: float) -> bool:
    """Admissibility of (omega, c).

    gamma > 0 : -2 sqrt(omega) < c <= 2 sqrt(omega)
    gamma <= 0: -2 sqrt(omega) < c < -2 s_* sqrt(omega)
    """
    if omega <= 0:
        raise RegionError(f"omega must be positive, got {omega}")
    rw = 2.0 * np.sqrt(omega)
    if p.gamma > 0:
        return -rw < c <= rw
    return -rw < c < -s_lower(p) * rw


def is_algebraic(omega: float, c: float) -> bool:
    return c > 0 and np.isclose(c, 2.0 * np.sqrt(omega), rtol=1e-13, atol=0.0)


@dataclass(frozen=True)
class SolitonParams:
    """(omega, c) soliton parameters with the scaling coordinate s = c/(2 sqrt(omega))."""

    params: ModelParams
    omega: float
    c: float

    def __post_init__(self):
        if not existence_region(self.params, self.omega, self.c):
            raise RegionError(
                f"(omega={self.omega}, c={self.c}) outside existence region "
                f"for b={self.params.b} (gamma={self.params.gamma})"
            )

    @property
    def s(self) -> float:
        return self.c / (2.0 * np.sqrt(self.omega))

    @property
    def algebraic(self) -> bool:
        return is_algebraic(self.omega, self.c)


def phi_sq(sp: SolitonParams, x) -> np.ndarray:
    """Squared modulus Phi^2 of the profile at position(s) x."""
    w, c, g = sp.omega, sp.c, sp.params.gamma
    x = np.asarray(x, dtype=float)
    if sp.algebraic:
        return 4.0 * c / ((c * x) ** 2 + g)
    q = 4.0 * w - c * c
    # far tails overflow cosh to inf; the quotient correctly underflows to 0
    with np.errstate(over="ignore"):
        denom = np.sqrt(c * c + g * q) * np.cosh(np.sqrt(q) * x) - c
        return 2.0 * q / denom


def suggested_half_length(sp: SolitonParams, tail: float = 1e-12) -> float:
    """Half-length so that Phi(L)^2 < tail; exponential regime only."""
    if sp.algebraic:
        raise RegionError("algebraic profile has 1/x decay; choose L by tail mass")
    q = 4.0 * sp.omega - sp.c**2
    return max(30.0 / np.sqrt(q), -np.log(tail) / np.sqrt(q))


def sample_capital_phi(sp: SolitonParams, g: Grid) -> Field:
    """Real positive even profile Phi on the grid."""
    return Field(g, np.sqrt(phi_sq(sp, g.x)).astype(complex))


def sample_varphi(sp: SolitonParams, g: Grid) -> Field:
    """Gauge-frame profile e^{i c x / 2} Phi."""
    phi = np.sqrt(phi_sq(sp, g.x))
    return Field(g, np.exp(0.5j * sp.c * g.x) * phi)


def sample_phi(sp: SolitonParams, g: Grid) -> Field:
    """Original-frame profile with the cumulative phase integral.

    The lower limit -inf is replaced by the left grid edge; the difference is
    a constant phase, invisible to every functional used here.  The running
    integral uses the spectral antiderivative, matching the gauge module.
    """
    p2 = phi_sq(sp, g.x)
    cum = cumulative_integral(p2, g)
    phase = 0.5 * sp.c * g.x - 0.25 * cum
    return Field(g, np.sqrt(p2) * np.exp(1j * phase))


def phi_one_two(x) -> np.ndarray:
    """Algebraic profile at b=0, (omega, c) = (1, 2), original frame, closed form.

    Phi^2 = 8/(4x^2+1) and the phase integral is elementary, with the
    genuine -inf anchoring (no grid-dependent constant):
    phase(x) = x - arctan(2x) - pi/2.
    """
    x = np.asarray(x, dtype=float)
    amp = np.sqrt(8.0 / (4.0 * x * x + 1.0))
    return amp * np.exp(1j * (x - np.arctan(2.0 * x) - 0.5 * np.pi))


def algebraic_tail_mass(sp: SolitonParams, L: float) -> float:
    """Mass of the algebraic profile outside [-L, L]: (8/sqrt(g))(pi/2 - atan(cL/sqrt(g)))."""
    if not sp.algebraic:
        raise RegionError("tail-mass model applies to the algebraic profile only")
    c, g = sp.c, sp.params.gamma
    return (8.0 / np.sqrt(g)) * (np.pi / 2.0 - np.arctan(c * L / np.sqrt(g)))


def algebraic_tail_l4(sp: SolitonParams, L: float) -> float:
    """||Phi||_4^4 outside [-L, L] for the algebraic profile, in closed form."""
    if not sp.algebraic:
        raise RegionError("tail model applies to the algebraic profile only")
    c, g = sp.c, sp.params.gamma
    rg = np.sqrt(g)
    u = c * L
    # int_{cL}^inf du / (u^2+g)^2; both tails of (4c)^2/(c^2x^2+g)^2 give 32c * inner
    inner = (np.pi / (2.0 * rg) - np.arctan(u / rg) / rg - u / (u * u + g)) / (2.0 * g)
    return 32.0 * c * inner


def algebraic_half_length(sp: SolitonParams, tol: float) -> float:
    """Half-length so the analytic tail mass is below tol."""
    c, g = sp.c, sp.params.gamma
    return float(np.tan(np.pi / 2.0 - tol * np.sqrt(g) / 8.0) * np.sqrt(g) / c)
