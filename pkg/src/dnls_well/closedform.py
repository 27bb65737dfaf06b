"""Exact scalar formulas for the soliton family.

Mass, momentum, energy and the action value d(omega, c) all reduce to the
two cosh integrals

    I1(a) = int dy / (cosh y + a),   I2(a) = int dy / (cosh y + a)^2,

each with an arctan branch (|a| < 1), a constant at a = 1, and a log branch
(a > 1).  The mass branches are keyed by the sign of gamma, with the
algebraic soliton c = 2 sqrt(omega) handled separately.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from .solitons import ModelParams, RegionError, existence_region, is_algebraic, s_lower

# Eq-2.31's 1/gamma has a finite limit as gamma -> 0; below this threshold
# the dedicated gamma = 0 formula is used to avoid cancellation.
_GAMMA_EPS = 1e-8


def _half_acos(a: float) -> float:
    """arctan(sqrt((1-a)/(1+a))) evaluated stably as acos(a)/2."""
    return 0.5 * np.arccos(np.clip(a, -1.0, 1.0))


def cosh_integral(alpha: float, power: int) -> float:
    """int_R dy / (cosh y + alpha)^power for power in {1, 2}, alpha > -1."""
    if alpha <= -1.0:
        raise ValueError(f"cosh integral requires alpha > -1, got {alpha}")
    if power not in (1, 2):
        raise ValueError(f"power must be 1 or 2, got {power}")
    if abs(alpha - 1.0) < 1e-3:
        # substitute u = tanh(y/2): both branches reduce to rational
        # integrals whose geometric-series expansion in (1-alpha)/(1+alpha)
        # avoids the catastrophic cancellation of the closed forms here
        big = 1.0 + alpha
        ratio = -(1.0 - alpha) / big
        total, term, k = 0.0, 1.0, 0
        while abs(term) > 1e-18 * max(abs(total), 1.0):
            if power == 1:
                term = ratio**k / (2 * k + 1)
            else:
                term = (k + 1) * ratio**k / ((2 * k + 1) * (2 * k + 3))
            total += term
            k += 1
        return 4.0 * total / big if power == 1 else 8.0 * total / (big * big)
    if abs(alpha) < 1.0:
        t = _half_acos(alpha)
        r = 1.0 - alpha * alpha
        if power == 1:
            return 4.0 * t / np.sqrt(r)
        return 2.0 / r - 4.0 * alpha * t / r**1.5
    lg = np.log(alpha + np.sqrt(alpha * alpha - 1.0))
    r = alpha * alpha - 1.0
    if power == 1:
        return 2.0 * lg / np.sqrt(r)
    return -2.0 / r + 2.0 * alpha * lg / r**1.5


def curve_beta(p: ModelParams, omega: float, c: float) -> float:
    """beta(omega, c) = c / sqrt(c^2 + gamma (4 omega - c^2)); alpha = -beta."""
    return c / np.sqrt(c * c + p.gamma * (4.0 * omega - c * c))


def _require_region(p: ModelParams, omega: float, c: float) -> None:
    if not existence_region(p, omega, c):
        raise RegionError(
            f"(omega={omega}, c={c}) outside existence region for b={p.b}"
        )


def soliton_mass(p: ModelParams, omega: float, c: float) -> float:
    """M(phi_{omega,c}), branchwise in gamma."""
    _require_region(p, omega, c)
    g = p.gamma
    if g > 0 and is_algebraic(omega, c):
        return 4.0 * np.pi / np.sqrt(g)
    if abs(g) < _GAMMA_EPS:
        return 4.0 * np.sqrt(4.0 * omega - c * c) / (-c)
    beta = curve_beta(p, omega, c)
    if g > 0:
        # (8/sqrt(g)) arctan sqrt((1+beta)/(1-beta)), stable form near beta = 1
        return 8.0 / np.sqrt(g) * _half_acos(-beta)
    alpha = -beta
    return 4.0 / np.sqrt(-g) * np.log(alpha + np.sqrt(alpha * alpha - 1.0))


def soliton_momentum(p: ModelParams, omega: float, c: float) -> float:
    """P(phi_{omega,c}); the same formula covers gamma > 0 and gamma < 0."""
    _require_region(p, omega, c)
    g = p.gamma
    m = soliton_mass(p, omega, c)
    if abs(g) < _GAMMA_EPS:
        return -(2.0 * omega + c * c) / (3.0 * c) * m
    return 0.5 * c * (-1.0 + 1.0 / g) * m + 2.0 / g * np.sqrt(
        max(4.0 * omega - c * c, 0.0)
    )


def soliton_energy(p: ModelParams, omega: float, c: float) -> float:
    """Pohozaev identity: E = -(c/4) P on the soliton family."""
    return -0.25 * c * soliton_momentum(p, omega, c)


def d_value(p: ModelParams, omega: float, c: float) -> float:
    """Action value d(omega, c) of the soliton.

    Computed via 2 d(1, 2s) = M(phi_{1,2s}) + s P(phi_{1,2s}) and the
    scaling d(omega, 2 s sqrt(omega)) = omega d(1, 2s).
    """
    _require_region(p, omega, c)
    s = c / (2.0 * np.sqrt(omega))
    c1 = 2.0 * s
    return omega * 0.5 * (soliton_mass(p, 1.0, c1) + s * soliton_momentum(p, 1.0, c1))


def s_star(b: float) -> float:
    """Unique zero of s -> P(phi_{1,2s}) in (0, 1) for b > 0.

    P is continuous and strictly decreasing on [0, 1] with P > 0 at s = 0 and
    P < 0 at s = 1, so a Brent solve on a tight bracket suffices.
    """
    if b <= 0:
        raise ValueError(f"s* is defined for b > 0, got b={b}")
    p = ModelParams(b)

    def mom(s: float) -> float:
        return soliton_momentum(p, 1.0, 2.0 * s)

    # for tiny b the root sits within machine distance of s = 1; push the
    # upper bracket toward 1 until the momentum changes sign
    lo, hi = 1e-6, 1.0 - 1e-9
    while mom(hi) > 0.0 and 1.0 - hi > 1e-15:
        hi = 1.0 - 1e-3 * (1.0 - hi)
    root = brentq(mom, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    if abs(mom(root)) > 1e-10:
        raise RuntimeError(f"momentum root did not converge at b={b}")
    return float(root)


def mass_threshold(b: float) -> float:
    """Turning-point mass M*(b).

    b > 0        : M(phi_{1, 2 s*(b)})
    b = 0        : 4 pi (limit s* -> 1)
    -3/16 < b < 0: M(phi_{1,2}) + P(phi_{1,2}) = 4 pi / gamma^{3/2}
    """
    if b <= -3.0 / 16.0:
        raise ValueError(f"mass threshold requires b > -3/16, got {b}")
    if b > 0:
        p = ModelParams(b)
        return soliton_mass(p, 1.0, 2.0 * s_star(b))
    gamma = 1.0 + (16.0 / 3.0) * b
    return 4.0 * np.pi / gamma**1.5


def admissible_s_range(p: ModelParams) -> tuple[float, float, bool]:
    """(lo, hi, hi_closed) for the scaling parameter s."""
    if p.gamma > 0:
        return -1.0, 1.0, True
    return -1.0, -s_lower(p), False


def d_monotonicity_scan(b: float, s_samples) -> list[tuple[float, float]]:
    """Table of (s, d(1, 2s)) over admissible samples."""
    p = ModelParams(b)
    lo, hi, closed = admissible_s_range(p)
    out = []
    for s in s_samples:
        if not (lo < s < hi or (closed and s == hi)):
            raise RegionError(f"s={s} outside admissible range for b={b}")
        out.append((float(s), d_value(p, 1.0, 2.0 * s)))
    return out
