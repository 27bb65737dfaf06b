"""Scalar functionals of a field in both working frames.

DNLS frame (variables u):
    E = 1/2 ||u_x||^2 - 1/4 <i|u|^2 u_x, u> - (b/6) ||u||_6^6
    P = <i u_x, u>

Gauge frame (variables v = G_{1/4} u):
    E = 1/2 ||v_x||^2 - (gamma/32) ||v||_6^6
    P = <i v_x, v> + 1/4 ||v||_4^4

Mass, the action S = E + (omega/2) M + (c/2) P, the dilation derivative K
(Nehari functional), the quadratic form L, and I = S - K/4 follow in each
frame.  The derivative nonlinearity is always evaluated spectrally in
physical space, exactly as the definitions read.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, asdict

import numpy as np

from .field import Field, inner_re, integrate, lp_norm_pow, spectral_derivative
from .solitons import ModelParams


class Frame(enum.Enum):
    DNLS = "dnls"
    GAUGE = "gauge"


def mass(f: Field) -> float:
    return lp_norm_pow(f, 2)


def _interaction(f: Field) -> float:
    """<i |u|^2 u_x, u>."""
    ux = spectral_derivative(f)
    integrand = (1j * np.abs(f.values) ** 2 * ux.values * np.conj(f.values)).real
    return integrate(integrand, f.grid)


def _p_lin(f: Field) -> float:
    """<i u_x, u>."""
    return inner_re(
        Field(f.grid, 1j * spectral_derivative(f).values), f
    )


def energy(f: Field, p: ModelParams, frame: Frame) -> float:
    grad_sq = lp_norm_pow(spectral_derivative(f), 2)
    l6 = lp_norm_pow(f, 6)
    if frame is Frame.DNLS:
        return 0.5 * grad_sq - 0.25 * _interaction(f) - p.b / 6.0 * l6
    return 0.5 * grad_sq - p.gamma / 32.0 * l6


def momentum(f: Field, frame: Frame) -> float:
    if frame is Frame.DNLS:
        return _p_lin(f)
    return _p_lin(f) + 0.25 * lp_norm_pow(f, 4)


def action(f: Field, p: ModelParams, omega: float, c: float, frame: Frame) -> float:
    return (
        energy(f, p, frame) + 0.5 * omega * mass(f) + 0.5 * c * momentum(f, frame)
    )


def nehari(f: Field, p: ModelParams, omega: float, c: float, frame: Frame) -> float:
    """Dilation derivative of the action: d/dl S(l f) at l = 1."""
    grad_sq = lp_norm_pow(spectral_derivative(f), 2)
    m = mass(f)
    pl = _p_lin(f)
    l6 = lp_norm_pow(f, 6)
    if frame is Frame.DNLS:
        return grad_sq + omega * m + c * pl - _interaction(f) - p.b * l6
    l4 = lp_norm_pow(f, 4)
    return grad_sq + omega * m + c * pl + 0.5 * c * l4 - 3.0 / 16.0 * p.gamma * l6


def ell(f: Field, omega: float, c: float) -> float:
    """Quadratic form ||f_x||^2 + omega ||f||^2 + c <i f_x, f>."""
    return lp_norm_pow(spectral_derivative(f), 2) + omega * mass(f) + c * _p_lin(f)


def ii(f: Field, p: ModelParams, omega: float, c: float) -> float:
    """I = S - K/4 = L/4 + (gamma/64) ||f||_6^6 (gauge frame)."""
    return 0.25 * ell(f, omega, c) + p.gamma / 64.0 * lp_norm_pow(f, 6)


def gn_ratio(f: Field) -> float:
    """Gagliardo-Nirenberg ratio ||f||_6^6 / ((4/pi^2) ||f||_2^4 ||f_x||^2), <= 1."""
    m = mass(f)
    if m == 0.0:
        raise ValueError("GN ratio is undefined for the zero field")
    grad_sq = lp_norm_pow(spectral_derivative(f), 2)
    return lp_norm_pow(f, 6) / (4.0 / np.pi**2 * m * m * grad_sq)


@dataclass(frozen=True)
class FunctionalReport:
    """All scalar invariants of a field at one (omega, c) in one frame."""

    frame: str
    b: float
    omega: float
    c: float
    energy: float
    mass: float
    momentum: float
    action: float
    nehari: float
    ell: float
    ii: float
    l4: float
    l6: float
    grad_sq: float
    gn_ratio: float

    def to_dict(self) -> dict:
        return asdict(self)


def report(f: Field, p: ModelParams, omega: float, c: float, frame: Frame) -> FunctionalReport:
    """Evaluate every functional in one pass over the FFTs."""
    ux = spectral_derivative(f)
    grad_sq = lp_norm_pow(ux, 2)
    m = mass(f)
    pl = inner_re(Field(f.grid, 1j * ux.values), f)
    l4 = lp_norm_pow(f, 4)
    l6 = lp_norm_pow(f, 6)
    if frame is Frame.DNLS:
        inter = integrate(
            (1j * np.abs(f.values) ** 2 * ux.values * np.conj(f.values)).real, f.grid
        )
        e = 0.5 * grad_sq - 0.25 * inter - p.b / 6.0 * l6
        mom = pl
        k = grad_sq + omega * m + c * pl - inter - p.b * l6
    else:
        e = 0.5 * grad_sq - p.gamma / 32.0 * l6
        mom = pl + 0.25 * l4
        k = grad_sq + omega * m + c * pl + 0.5 * c * l4 - 3.0 / 16.0 * p.gamma * l6
    lq = grad_sq + omega * m + c * pl
    s = e + 0.5 * omega * m + 0.5 * c * mom
    gn = np.inf if m == 0.0 else l6 / (4.0 / np.pi**2 * m * m * grad_sq) if grad_sq else np.inf
    return FunctionalReport(
        frame=frame.value,
        b=p.b,
        omega=omega,
        c=c,
        energy=e,
        mass=m,
        momentum=mom,
        action=s,
        nehari=k,
        ell=lq,
        ii=0.25 * lq + p.gamma / 64.0 * l6,
        l4=l4,
        l6=l6,
        grad_sq=grad_sq,
        gn_ratio=gn,
    )
