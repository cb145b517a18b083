"""
Radial Oracle
=============
Independent evaluation of the Steklov spectra on B2 and B4 from the radial
boundary-value systems: power-series solutions at the regular singular point
r = 0, residual audits, high-precision closed forms and an integrator cross-check.
"""

from collections.abc import Callable

import numpy as np
import structlog
from mpmath import mp
from scipy.integrate import solve_ivp

from magsteklov.config import settings
from magsteklov.core.highprec import mp_exp_remainder, mp_laguerre
from magsteklov.core.radial import (
    ClosedFormProfile,
    Profile,
    RadialProfile,
    RadialSystemSpec,
)
from magsteklov.core.spectra import b4_steklov_exact
from magsteklov.errors import (
    DegeneracyError,
    InvalidArgumentError,
    NormalizationError,
    PoleError,
)
from magsteklov.schemas.reports import ReconcileReport
from magsteklov.schemas.spectrum import Family

logger = structlog.get_logger()

_MIN_TERMS = 20
_DEGENERACY_THRESHOLD = 1e-14
_NORMALIZATION_THRESHOLD = 1e-12
_IVP_START = 0.25


def disk_system(k: int, family: Family, t: float) -> RadialSystemSpec:
    """The radial system whose eigenvalue is the given disk family at index k."""
    if family == Family.B2_K_ZERO:
        return RadialSystemSpec("B2", 0, t)
    if family == Family.B2_MINUS:
        return RadialSystemSpec("B2", k, t, conjugate=False)
    if family == Family.B2_PLUS:
        return RadialSystemSpec("B2", k, t, conjugate=True)
    raise InvalidArgumentError(f"not a disk family: {family}")


def _recurrence(
    head: list[float],
    linear: float,
    t: float,
    denominator: Callable[[int], float],
    n_terms: int,
) -> np.ndarray:
    """c_j = (linear c_{j-1} + t^2 c_{j-2}) / denominator(j) past the given head."""
    coeffs = np.zeros(n_terms)
    coeffs[: len(head)] = head
    t2 = t * t
    for j in range(len(head), n_terms):
        prev2 = coeffs[j - 2] if j >= 2 else 0.0
        coeffs[j] = (linear * coeffs[j - 1] + t2 * prev2) / denominator(j)
    return coeffs


def _empty() -> np.ndarray:
    return np.zeros(0)


def series_solve(
    spec: RadialSystemSpec,
    n_terms: int | None = None,
) -> tuple[RadialProfile, RadialProfile | None]:
    """
    Regular-at-zero power-series branches of a radial system.

    Systems return the Z branch (hat value 2 at r = 0) and the W branch
    (hat value vanishing at r = 0, leading coefficient 1). The scalar systems,
    the k = 0 disk mode and the co-exact B4 family, return a single branch and
    ``None``.

    Args:
        spec: Radial system
        n_terms: Series truncation in powers of r^2 (defaults to settings)

    Returns:
        The Z branch and the W branch, or the single regular branch and None

    Raises:
        InvalidArgumentError: If fewer than 20 terms are requested
        TruncationError: If a branch is not converged at r = 1
    """
    n = n_terms or settings.series_terms
    if n < _MIN_TERMS:
        raise InvalidArgumentError(f"n_terms must be >= {_MIN_TERMS}, got {n}")
    k, t = spec.k, spec.t

    z: RadialProfile
    w: RadialProfile | None
    if spec.domain == "B2" and k == 0:
        # Q proportional to sinh(t r^2 / 2); P vanishes.
        c = _recurrence([0.0, 1.0], 0.0, t, lambda j: 4 * j * (j - 1), n)
        z, w = RadialProfile(-1, 0, _empty(), c), None

    elif spec.domain == "B2":
        eps = spec.disk_orientation
        linear = 2 * k * eps * t
        a = _recurrence([2.0], linear, t, lambda j: 4 * j * (j + k - 1), n)
        b = _recurrence([0.0, 1.0], linear, t, lambda j: 4 * (j - 1) * (j + k), n)
        z = RadialProfile(k - 1, k, a / 2, eps * a / 2)
        w = RadialProfile(k - 1, k, b / 2, -eps * b / 2)

    elif spec.domain == "B4Exact":
        linear = 2 * (2 * spec.p - k) * t
        zs = _recurrence([2.0], linear, t, lambda j: 4 * j * (j + k), n)
        ws = _recurrence([0.0, 1.0], linear, t, lambda j: 4 * (j - 1) * (j + k + 1), n)
        norm = 2 * k + 2
        z = RadialProfile(k - 1, k, (k + 2) * k * zs / norm, (k + 2) * zs / norm)
        w = RadialProfile(k - 1, k, (k + 2) ** 2 * ws / norm, -(k + 2) * ws / norm)

    else:
        linear = 2 * t * (2 * spec.p - k + spec.coexact_sign)
        q = _recurrence([2.0], linear, t, lambda j: 4 * j * (j + k + 1), n)
        z, w = RadialProfile(k, k + 1, _empty(), q), None

    z.check_converged()
    if w is not None:
        w.check_converged()
    logger.debug("Series solved", domain=spec.domain, k=k, p=spec.p, t=t, n_terms=n)
    return z, w


def _combine_at_boundary(
    z_P: float,
    z_Q: float,
    w_P: float,
    w_Q: float,
) -> tuple[float, float]:
    """Weights (alpha, beta) of alpha Z + beta W with P(1) = 0, unit length."""
    if max(abs(z_P), abs(w_P)) <= _DEGENERACY_THRESHOLD * max(abs(z_Q), abs(w_Q), 1.0):
        raise DegeneracyError("both regular branches satisfy P(1) = 0")
    alpha, beta = w_P, -z_P
    length = float(np.hypot(alpha, beta))
    return alpha / length, beta / length


def steklov_eigenvalue_oracle(spec: RadialSystemSpec, n_terms: int | None = None) -> float:
    """
    Steklov eigenvalue Q'(1) of the regular solution with P(1) = 0, Q(1) = 1.

    Raises:
        DegeneracyError: If both branches satisfy P(1) = 0
        NormalizationError: If the combined Q(1) vanishes
    """
    z, w = series_solve(spec, n_terms)
    if w is None:
        profile = z
        scale = max(float(np.max(np.abs(z.coeffs_Q))), 1.0)
    else:
        zv, wv = z.derivatives(1.0), w.derivatives(1.0)
        alpha, beta = _combine_at_boundary(zv.P, zv.Q, wv.P, wv.Q)
        profile = z.scaled(alpha) + w.scaled(beta)
        scale = max(abs(zv.Q), abs(wv.Q), 1.0)

    at_one = profile.derivatives(1.0)
    if abs(at_one.Q) < _NORMALIZATION_THRESHOLD * scale:
        raise NormalizationError(f"Q(1) vanishes for {spec}")
    return at_one.dQ / at_one.Q


def ode_residual(profile: Profile, spec: RadialSystemSpec, sample_r: list[float]) -> float:
    """Largest scaled residual of the radial equations over the sample radii."""
    worst = 0.0
    for r in sample_r:
        if not 0 < r <= 1:
            raise InvalidArgumentError(f"sample radius must lie in (0, 1], got {r}")
        worst = max(worst, *spec.residuals(r, profile.derivatives(r)))
    return worst


# Closed forms


def b2_closed_form_profile(k: int, t: float, conjugate: bool = False) -> ClosedFormProfile:
    """
    Closed-form disk solution normalized by P(1) = 0, Q(1) = 1.

    With a = e^{+-t(r^2-1)/2} and b = a R_k(-+t r^2) / (r^{2k} R_k(-+t)), upper
    signs for the e^{ik theta} system, Q = r^k (a + b) / 2 and
    P = +-r^{k-1} (a - b) / 2. The k = 0 mode is Q = sinh(t r^2 / 2) / sinh(t / 2).
    """
    if k < 0 or t < 0:
        raise InvalidArgumentError(f"need k >= 0 and t >= 0, got k={k}, t={t}")

    if k == 0:
        if t == 0:
            return ClosedFormProfile(P=None, Q=lambda r: r**2)
        return ClosedFormProfile(P=None, Q=lambda r: mp.sinh(t * r**2 / 2) / mp.sinh(mp.mpf(t) / 2))

    eps = -1 if conjugate else 1

    def parts(r):  # type: ignore[no-untyped-def]
        if t == 0:
            return mp.mpf(1), r**2
        a = mp.exp(eps * t * (r**2 - 1) / 2)
        tail = mp_exp_remainder(k, -eps * t * r**2) / mp_exp_remainder(k, -eps * t)
        b = a * tail / r ** (2 * k)
        return a, b

    def Q(r):  # type: ignore[no-untyped-def]
        a, b = parts(r)
        return r**k * (a + b) / 2

    def P(r):  # type: ignore[no-untyped-def]
        a, b = parts(r)
        return eps * r ** (k - 1) * (a - b) / 2

    return ClosedFormProfile(P=P, Q=Q)


def b4_coexact_closed_form_profile(k: int, p: int, sign: int, t: float) -> ClosedFormProfile:
    """
    Closed-form co-exact solution on B4,
    Q = e^{t(1-r^2)/2} L^(-(k+1))_nu(t r^2) / (r^{k+1} L^(-(k+1))_nu(t)),
    with nu = k - 1/2 - p for the "+" potential and k + 1/2 - p for "-".
    """
    if k < 1 or not 0 <= p <= k or sign not in (1, -1) or t <= 0:
        raise InvalidArgumentError(
            f"need k >= 1, 0 <= p <= k, sign = +-1, t > 0; got {k}, {p}, {sign}, {t}"
        )
    nu = k - 0.5 - p if sign == 1 else k + 0.5 - p
    alpha = -(k + 1)

    def Q(r):  # type: ignore[no-untyped-def]
        return (
            mp.exp(t * (1 - r**2) / 2)
            * mp_laguerre(nu, alpha, t * r**2)
            / (r ** (k + 1) * mp_laguerre(nu, alpha, t))
        )

    return ClosedFormProfile(P=None, Q=Q)


def w_branch_closed_form(k: int, t: float, r: float) -> float:
    """
    Printed W branch of the e^{ik theta} disk system with unit constant,
    (-1)^k k! e^{-t r^2/2} / r^{2k} (e^{t r^2} sum_{j<=k} (-t r^2)^j / j! - 1),
    evaluated through the exponential remainder to avoid cancellation.
    """
    if k < 1 or t <= 0 or not 0 < r <= 1:
        raise InvalidArgumentError(f"need k >= 1, t > 0, 0 < r <= 1; got {k}, {t}, {r}")
    with mp.workdps(40):
        x = mp.mpf(t) * mp.mpf(r) ** 2
        value = (-1) ** (k + 1) * mp.factorial(k) * mp.exp(x / 2) * mp_exp_remainder(k, -x)
        value /= mp.mpf(r) ** (2 * k)
        return float(value)


# Integrator cross-check


def _integrate_branch(spec: RadialSystemSpec, branch: RadialProfile) -> np.ndarray:
    """Carry one series branch from r = 0.25 to r = 1; returns (P, P', Q, Q')."""
    start = branch.derivatives(_IVP_START)

    def rhs(r: float, y: np.ndarray) -> list[float]:
        d2P, d2Q = spec.second_derivatives(r, y[0], y[1], y[2], y[3])
        return [y[1], d2P, y[3], d2Q]

    solution = solve_ivp(
        rhs,
        (_IVP_START, 1.0),
        [start.P, start.dP, start.Q, start.dQ],
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
    )
    if not solution.success:
        raise NormalizationError(f"radial integration failed: {solution.message}")
    return solution.y[:, -1]


def steklov_eigenvalue_ivp(spec: RadialSystemSpec) -> float:
    """
    Steklov eigenvalue from an explicit high-order integration of the radial
    system, started from series data at r = 0.25.
    """
    z, w = series_solve(spec)
    z_end = _integrate_branch(spec, z)
    if w is None:
        end = z_end
    else:
        w_end = _integrate_branch(spec, w)
        alpha, beta = _combine_at_boundary(z_end[0], z_end[2], w_end[0], w_end[2])
        end = alpha * z_end + beta * w_end
    if abs(end[2]) < _NORMALIZATION_THRESHOLD:
        raise NormalizationError(f"Q(1) vanishes for {spec}")
    return float(end[3] / end[2])


# Reconciliation


def reconcile_b4_exact(k: int, p: int, t: float, tolerance: float = 1e-6) -> ReconcileReport:
    """
    Compare both printed exact-family expressions with the radial oracle.

    A printed expression that hits a pole is recorded as missing and never
    matches.
    """
    oracle_value = steklov_eigenvalue_oracle(RadialSystemSpec("B4Exact", k, t, p=p))
    limit = tolerance * max(1.0, abs(oracle_value))

    def evaluate(variant: str) -> float | None:
        try:
            return b4_steklov_exact(k, p, t, variant)  # type: ignore[arg-type]
        except PoleError as e:
            logger.warning(
                "Printed expression hit a pole", variant=variant, k=k, p=p, t=t, error=str(e)
            )
            return None

    theorem_value = evaluate("TheoremStatement")
    proof_value = evaluate("ProofQPrime")
    report = ReconcileReport(
        k=k,
        p=p,
        t=t,
        theorem_value=theorem_value,
        proof_value=proof_value,
        oracle_value=oracle_value,
        theorem_matches=theorem_value is not None and abs(theorem_value - oracle_value) <= limit,
        proof_matches=proof_value is not None and abs(proof_value - oracle_value) <= limit,
        tolerance=tolerance,
    )
    logger.info("Reconciled exact family", k=k, p=p, t=t, matches=report.matching_variants)
    return report
