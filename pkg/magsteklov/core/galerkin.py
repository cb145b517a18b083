"""
Galerkin Min-Max
================
Rayleigh-quotient minimization of the magnetic Dirichlet energy over polynomial
trial forms on the disk, an upper bound on the first Steklov eigenvalue of
each Fourier mode.
"""

from dataclasses import dataclass

import numpy as np
import structlog
from numpy.polynomial import Legendre
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh

from magsteklov.errors import ConfigurationError

logger = structlog.get_logger()


@dataclass(frozen=True)
class GalerkinConfig:
    """
    Mode, coupling and trial-space size.

    ``conjugate`` selects the e^{-ik theta} system, as in the radial oracle.
    The lowest disk branch t^2 / (e^t - 1 - t), 1 / (e - 2) at k = 1 and t = 1,
    is reached only with ``conjugate=True``; the default converges to the
    Minus branch, which is e at the same point.
    ``quadrature_order`` defaults to 2N + k + 8 Gauss points in r.
    """

    k: int
    t: float
    basis_size: int
    quadrature_order: int | None = None
    conjugate: bool = False

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ConfigurationError(f"k must be >= 0, got {self.k}")
        if not np.isfinite(self.t) or self.t < 0:
            raise ConfigurationError(f"t must be finite and >= 0, got {self.t}")
        if self.basis_size < 2:
            raise ConfigurationError(f"basis_size must be >= 2, got {self.basis_size}")
        if self.quadrature_order is not None and self.quadrature_order < self.minimum_order:
            raise ConfigurationError(
                f"quadrature_order must be >= {self.minimum_order}, got {self.quadrature_order}"
            )

    @property
    def minimum_order(self) -> int:
        return 2 * self.basis_size + self.k + 4

    @property
    def order(self) -> int:
        return self.quadrature_order or 2 * self.basis_size + self.k + 8

    @property
    def signed_mode(self) -> int:
        return -self.k if self.conjugate else self.k


def _trial_functions(config: GalerkinConfig) -> list[tuple[Legendre, Legendre]]:
    """
    Pairs (P_hat, Q_hat) as polynomials in s = r^2.

    Q-only functions s L_j and P-only functions s (1 - s) L_j vanish at the
    origin; for k >= 1 one coupled function (P_hat, Q_hat) = (sgn(m)(1 - s), 1)
    carries the regular leading behaviour. Every P_hat vanishes at s = 1.
    """
    domain = [0.0, 1.0]
    s = Legendre([0.5, 0.5], domain=domain)
    zero = Legendre([0.0], domain=domain)
    one = Legendre([1.0], domain=domain)

    functions = [(zero, s * Legendre.basis(j, domain=domain)) for j in range(config.basis_size)]
    functions += [
        (s * (one - s) * Legendre.basis(j, domain=domain), zero)
        for j in range(config.basis_size - 1)
    ]
    if config.k >= 1:
        functions.append((float(np.sign(config.signed_mode)) * (one - s), one))
    return functions


def _brackets(
    P_hat: Legendre,
    Q_hat: Legendre,
    s: np.ndarray,
    k: int,
    m: int,
    t: float,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Energy integrands with the indicial powers removed:
    k Q + 2s Q_s - (m + ts) P and k P + 2s P_s - (m + ts) Q.
    """
    p, q = P_hat(s), Q_hat(s)
    dp, dq = P_hat.deriv()(s), Q_hat.deriv()(s)
    twist = m + t * s
    return k * q + 2 * s * dq - twist * p, k * p + 2 * s * dp - twist * q


def rayleigh_galerkin_b2(config: GalerkinConfig) -> float:
    """
    Smallest Rayleigh quotient of the magnetic energy over the trial space.

    The energy of a trial pair is the integral over [0, 1] of
    r^{2k-3} (A^2 + B^2) with A, B the brackets above, and the boundary norm
    is Q_hat(1)^2. The boundary form has rank one, so the minimum is
    1 / mu_max of the pencil (boundary, energy).

    Raises:
        ConfigurationError: If every trial function vanishes on the boundary
    """
    k, t, m = config.k, config.t, config.signed_mode
    nodes, weights = leggauss(config.order)
    r = (nodes + 1) / 2
    s = r * r
    measure = weights / 2 * r ** (2 * k - 3)

    functions = _trial_functions(config)
    a_rows, b_rows, boundary = [], [], []
    for P_hat, Q_hat in functions:
        a, b = _brackets(P_hat, Q_hat, s, k, m, t)
        a_rows.append(a)
        b_rows.append(b)
        boundary.append(float(Q_hat(1.0)))

    A = np.array(a_rows)
    B = np.array(b_rows)
    energy = (A * measure) @ A.T + (B * measure) @ B.T
    edge = np.array(boundary)
    if not np.any(edge):
        raise ConfigurationError("boundary matrix is zero: no trial function reaches r = 1")

    # Jacobi scaling keeps the pencil well conditioned as N grows.
    scale = 1 / np.sqrt(np.diag(energy))
    energy = energy * np.outer(scale, scale)
    edge = edge * scale
    mu = eigh(np.outer(edge, edge), energy, eigvals_only=True)
    value = float(1 / mu[-1])
    logger.debug("Galerkin minimum", k=k, t=t, basis_size=config.basis_size, value=value)
    return value
