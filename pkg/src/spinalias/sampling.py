"""Spherical sampling grids: Gauss quadrature colatitudes and the
equiangular scheme, both paired with a 2Q-point trapezoidal longitude rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .special import jacobi_deriv, jacobi_norm

__all__ = [
    "SamplingScheme",
    "SamplingGrid",
    "SymmetryReport",
    "gauss_nodes",
    "gauss_weights_from_derivative",
    "build_grid_gauss",
    "build_grid_equiangular",
    "validate_symmetry",
]


class SamplingScheme(str, Enum):
    GAUSS_JACOBI = "gauss"
    EQUIANGULAR = "equiangular"


@dataclass(frozen=True, eq=False)
class SamplingGrid:
    """Colatitude and longitude nodes with weights.

    ``theta_weights`` are the per-node colatitude weights as used in the
    discrete coefficient sums (the Gauss scheme stores the quadrature
    weight divided by sin(theta)); ``phi_weights`` are the uniform
    trapezoidal weights pi/Q.  Arrays are read-only; grids are immutable
    and safe to share across threads.
    """

    scheme: SamplingScheme
    N: int
    s: int
    Q: int
    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weights: np.ndarray

    def __post_init__(self):
        for name in ("theta_nodes", "theta_weights", "phi_nodes", "phi_weights"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.theta_nodes.shape != self.theta_weights.shape:
            raise ValueError("theta nodes/weights length mismatch")
        if self.phi_nodes.shape != self.phi_weights.shape:
            raise ValueError("phi nodes/weights length mismatch")

    @property
    def n_theta(self) -> int:
        return self.theta_nodes.size

    @property
    def n_phi(self) -> int:
        return self.phi_nodes.size


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    max_deviation: float


def _phi_rule(Q: int):
    if Q < 1:
        raise ValueError(f"need Q >= 1, got Q={Q}")
    q = np.arange(2 * Q)
    phi = q * math.pi / Q
    w = np.full(2 * Q, math.pi / Q)
    return phi, w


def gauss_nodes(n: int, alpha: float = 0.0, beta: float = 0.0):
    """Nodes and weights of the n-point Gauss-Jacobi rule on [-1, 1].

    The rule integrates (1-t)^alpha (1+t)^beta q(t) exactly for
    polynomials q of degree <= 2n-1.  Built by the Golub-Welsch
    eigenvalue method from the three-term recurrence coefficients.

    Returns
    -------
    (nodes, weights) : two ndarrays of length n, nodes increasing.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"need alpha, beta > -1, got ({alpha}, {beta})")
    ab = alpha + beta
    i = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (ab + 2.0)
    if n > 1:
        ii = i[1:]
        diag[1:] = (beta * beta - alpha * alpha) / (
            (2.0 * ii + ab) * (2.0 * ii + ab + 2.0)
        )
        jj = np.arange(1, n, dtype=float)
        ssum = 2.0 * jj + ab
        off = np.sqrt(
            4.0 * jj * (jj + alpha) * (jj + beta) * (jj + ab)
            / (ssum * ssum * (ssum * ssum - 1.0))
        )
    else:
        off = np.empty(0)
    nodes, vecs = eigh_tridiagonal(diag, off)
    # total mass of the weight function: 2^(ab+1) B(alpha+1, beta+1)
    mu0 = jacobi_norm(0, alpha, beta)
    weights = mu0 * vecs[0, :] ** 2
    order = np.argsort(nodes)
    return nodes[order], weights[order]


def gauss_weights_from_derivative(nodes, n: int, alpha: float = 0.0, beta: float = 0.0):
    """Gauss-Jacobi weights from the classical derivative formula.

    w_k = G / ((1 - t_k^2) * P'_n(t_k)^2) with
    G = 2^(alpha+beta+1) Gamma(n+alpha+1) Gamma(n+beta+1) /
        (n! Gamma(n+alpha+beta+1)).

    Independent companion to :func:`gauss_nodes`; the two weight routes
    agree to 1e-12.
    """
    nodes = np.asarray(nodes, dtype=float)
    g = math.exp(
        (alpha + beta + 1.0) * math.log(2.0)
        + math.lgamma(n + alpha + 1.0)
        + math.lgamma(n + beta + 1.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n + alpha + beta + 1.0)
    )
    dp = jacobi_deriv(n, alpha, beta, nodes)
    return g / ((1.0 - nodes * nodes) * np.asarray(dp) ** 2)


def build_grid_gauss(
    N: int, s: int, Q: int, *, literal_jacobi_nodes: bool = False
) -> SamplingGrid:
    """Gauss colatitude grid for spin ``s`` with 2Q longitudes.

    Places n = N - s colatitude nodes at arccos of the n-point
    Gauss-Legendre abscissas, with weights w_p = omega_p / sin(theta_p).
    ``literal_jacobi_nodes`` switches to the N roots of the Jacobi
    polynomial P_N^(s,s) with the matching Gauss-Jacobi weights; that
    variant does not reproduce the reference node table and exists for
    experimentation only.
    """
    if s < 0:
        raise ValueError(f"need s >= 0, got s={s}")
    if N <= s:
        raise ValueError(f"need N > s, got N={N}, s={s}")
    if literal_jacobi_nodes:
        t, omega = gauss_nodes(N, float(s), float(s))
    else:
        t, omega = gauss_nodes(N - s)
    # descending t gives increasing theta
    theta = np.arccos(t[::-1])
    w_theta = omega[::-1] / np.sin(theta)
    phi, w_phi = _phi_rule(Q)
    return SamplingGrid(SamplingScheme.GAUSS_JACOBI, N, s, Q, theta, w_theta, phi, w_phi)


def build_grid_equiangular(N: int, s: int, Q: int) -> SamplingGrid:
    """Equiangular colatitude grid for spin ``s`` with 2Q longitudes.

    With n' = N - s (required even and positive) the grid has 2n' nodes
    theta_p = pi*p/(2n') and weights

        w_p = (2/n') sin(theta_p) sum_{k=0}^{n'-1} sin((2k+1) theta_p)/(2k+1),

    which reproduce integrals against sin(theta) d(theta) for cosine
    polynomials up to degree 2n'-1.  The pole node theta=0 carries
    weight zero.
    """
    if s < 0:
        raise ValueError(f"need s >= 0, got s={s}")
    nprime = N - s
    if nprime <= 0 or nprime % 2:
        raise ValueError(f"need N - s positive and even, got N-s={nprime}")
    p = np.arange(2 * nprime)
    theta = math.pi * p / (2.0 * nprime)
    k = np.arange(nprime)
    # w[p] = (2/n') sin(theta_p) * sum_k sin((2k+1) theta_p) / (2k+1)
    sums = np.sin(np.outer(theta, 2 * k + 1)) @ (1.0 / (2 * k + 1))
    w_theta = (2.0 / nprime) * np.sin(theta) * sums
    phi, w_phi = _phi_rule(Q)
    return SamplingGrid(SamplingScheme.EQUIANGULAR, N, s, Q, theta, w_theta, phi, w_phi)


def validate_symmetry(grid: SamplingGrid, tol: float = 1e-12) -> SymmetryReport:
    """Check the mirror symmetry of the colatitude rule about pi/2.

    True iff theta_p + theta_{n-1-p} = pi and the paired weights agree,
    after discarding zero-weight nodes at theta = 0 (which act as their
    own mirror).
    """
    keep = ~((np.abs(grid.theta_nodes) <= tol) & (np.abs(grid.theta_weights) <= tol))
    theta = grid.theta_nodes[keep]
    w = grid.theta_weights[keep]
    if theta.size == 0:
        return SymmetryReport(True, 0.0)
    dev_nodes = np.abs(theta + theta[::-1] - math.pi)
    dev_weights = np.abs(w - w[::-1])
    max_dev = float(max(dev_nodes.max(), dev_weights.max()))
    return SymmetryReport(max_dev <= tol, max_dev)
