"""Scalar kernels: Jacobi polynomials, Wigner small-d matrices and
spin-weighted spherical harmonics.

All functions accept scalar or ndarray angular arguments and evaluate
elementwise.  Everything here is pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HarmonicIndex",
    "jacobi",
    "jacobi_deriv",
    "jacobi_norm",
    "h_factor",
    "wigner_d",
    "spin_sph_harm",
]

_T_TOL = 1e-12
_THETA_TOL = 1e-9


@dataclass(frozen=True)
class HarmonicIndex:
    """Location (ell, m, s) of a spin-s harmonic coefficient."""

    ell: int
    m: int
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"spin weight must be >= 0, got s={self.s}")
        if self.ell < max(abs(self.m), self.s):
            raise ValueError(
                f"need ell >= max(|m|, s): got (ell={self.ell}, m={self.m}, s={self.s})"
            )


def jacobi(nu: int, alpha: float, beta: float, t):
    """Evaluate the Jacobi polynomial P_nu^(alpha, beta) at t in [-1, 1].

    Uses the standard three-term recurrence in the degree, which is exact
    for nu = 0, 1 and stable for alpha, beta > -1 and non-negative integer
    parameters.
    """
    if nu < 0:
        raise ValueError(f"degree must be >= 0, got nu={nu}")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + _T_TOL):
        raise ValueError("argument outside [-1, 1]")
    p_prev = np.ones_like(t)
    if nu == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p_cur = (alpha + 1.0) + (alpha + beta + 2.0) * (t - 1.0) / 2.0
    for k in range(2, nu + 1):
        c1 = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0)
        c2 = (2.0 * k + alpha + beta - 1.0) * (
            (2.0 * k + alpha + beta) * (2.0 * k + alpha + beta - 2.0) * t
            + alpha * alpha
            - beta * beta
        )
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta)
        p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
    return p_cur if p_cur.ndim else float(p_cur)


def jacobi_deriv(nu: int, alpha: float, beta: float, t):
    """First derivative of P_nu^(alpha, beta) at t."""
    if nu == 0:
        t = np.asarray(t, dtype=float)
        z = np.zeros_like(t)
        return z if z.ndim else 0.0
    return 0.5 * (nu + alpha + beta + 1.0) * jacobi(nu - 1, alpha + 1.0, beta + 1.0, t)


def jacobi_norm(nu: int, alpha: float, beta: float) -> float:
    """Squared weighted L2 norm of P_nu^(alpha, beta) on [-1, 1].

    Returns the constant Lambda such that the polynomials of equal
    parameters integrate against the weight (1-t)^alpha (1+t)^beta to
    Lambda on the diagonal and 0 off it.
    """
    if nu < 0:
        raise ValueError(f"degree must be >= 0, got nu={nu}")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"need alpha, beta > -1, got ({alpha}, {beta})")
    log_val = (
        (alpha + beta + 1.0) * math.log(2.0)
        + math.lgamma(nu + alpha + 1.0)
        + math.lgamma(nu + beta + 1.0)
        - math.lgamma(nu + 1.0)
        - math.lgamma(nu + alpha + beta + 1.0)
    )
    return math.exp(log_val) / (2.0 * nu + alpha + beta + 1.0)


def h_factor(z1: int, z2: int, z3: int) -> float:
    """sqrt( (z3-z2)! (z3+z2)! / ((z3+z1)! (z3-z1)!) ), in log space.

    Safe for arguments of several hundred where direct factorials would
    overflow.
    """
    for arg in (z3 - z2, z3 + z2, z3 + z1, z3 - z1):
        if arg < 0:
            raise ValueError(
                f"negative factorial argument in h_factor({z1}, {z2}, {z3})"
            )
    log_val = 0.5 * (
        math.lgamma(z3 - z2 + 1)
        + math.lgamma(z3 + z2 + 1)
        - math.lgamma(z3 + z1 + 1)
        - math.lgamma(z3 - z1 + 1)
    )
    return math.exp(log_val)


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < -_THETA_TOL) or np.any(theta > math.pi + _THETA_TOL):
        raise ValueError("colatitude outside [0, pi]")
    return np.clip(theta, 0.0, math.pi)


def wigner_d(ell: int, m: int, s: int, theta):
    """Wigner small-d element d^ell_{m,-s}(theta).

    Evaluated through the symmetry-reduced Jacobi representation with
    non-negative polynomial parameters a = |m+s|, b = |m-s| and degree
    ell - max(|m|, |s|); the sign is fixed so that the result agrees with
    the half-angle product formula on the quadrant m+s >= 0, m-s >= 0.
    Accepts any integer spin (s may be negative).
    """
    if ell < max(abs(m), abs(s)):
        raise ValueError(f"need ell >= max(|m|, |s|): got ({ell}, {m}, {s})")
    theta = _check_theta(theta)
    m2 = -s
    k = min(ell + m, ell - m, ell + m2, ell - m2)
    if k == ell + m:
        a, lam = m2 - m, m2 - m
    elif k == ell - m:
        a, lam = m - m2, 0
    elif k == ell + m2:
        a, lam = m - m2, 0
    else:
        a, lam = m2 - m, m2 - m
    b = 2 * ell - 2 * k - a
    # prefactor sqrt( C(2*ell-k, k+a) / C(k+b, b) ), via log-gamma
    log_pref = 0.5 * (
        math.lgamma(2 * ell - k + 1)
        - math.lgamma(k + a + 1)
        - math.lgamma(k + b + 1)
        + math.lgamma(k + 1)
    )
    sign = -1.0 if lam % 2 else 1.0
    half = 0.5 * theta
    val = (
        sign
        * math.exp(log_pref)
        * np.sin(half) ** a
        * np.cos(half) ** b
        * jacobi(k, float(a), float(b), np.cos(theta))
    )
    val = np.asarray(val)
    return val if val.ndim else float(val)


def spin_sph_harm(ell: int, m: int, s: int, theta, phi):
    """Spin-weighted spherical harmonic Y_{ell,m;s}(theta, phi).

    Y = sqrt((2*ell+1)/(4*pi)) * (-1)^s * exp(i*m*phi) * d^ell_{m,-s}(theta).
    """
    phi = np.asarray(phi, dtype=float)
    norm = math.sqrt((2 * ell + 1) / (4.0 * math.pi))
    sign = -1.0 if s % 2 else 1.0
    val = norm * sign * np.exp(1j * m * phi) * wigner_d(ell, m, s, theta)
    val = np.asarray(val)
    return val if val.ndim else complex(val)
