"""
Diamagnetic Comparison
======================
Quadratic upper bound on the first magnetic Steklov eigenvalue of B^{2n} built
from the harmonic extension of a first eigenform, and the comparison of the
closed-form first eigenvalue against its non-magnetic value.
"""

from collections.abc import Sequence
from typing import Literal

import numpy as np
import structlog
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

from magsteklov.core.spectra import b4_steklov_exact, first_eigenvalue
from magsteklov.errors import InvalidArgumentError, PoleError
from magsteklov.schemas.reports import BoundCoefficients, ViolationReport, ViolationRow

logger = structlog.get_logger()

QUADRATURE_POINTS = 64
DOMINATION_SLACK = 1e-9
T_MAX = 12.0

BallDomain = Literal["b2", "b4"]

_HALF_DIMENSION: dict[str, int] = {"b2": 1, "b4": 2}


def _radial_ratio(n: int) -> float:
    """
    ||w||^2 over B^{2n} divided by ||w||^2 over the sphere for the extension
    (1 - r^2) phi dr + (r + r^3/(2n-1)) d phi, up to the common constant.

    The sphere integral of |d phi|^2 is (2n - 1) times that of |phi|^2 for a
    first spherical harmonic, so the angular factor cancels.
    """
    nodes, weights = leggauss(QUADRATURE_POINTS)
    r = (nodes + 1) / 2
    tangential = (2 * n - 1) * (1 + r**2 / (2 * n - 1)) ** 2
    integrand = ((1 - r**2) ** 2 + tangential) * r ** (2 * n - 1)
    interior = float(np.sum(weights / 2 * integrand))
    boundary = (2 * n - 1) * (2 * n / (2 * n - 1)) ** 2
    return interior / boundary


def bound_coefficients_b2n(n: int) -> BoundCoefficients:
    """
    Coefficients of sigma0 + c1 t + c2 t^2 for the ball B^{2n}.

    sigma0 = (n + 1) / n; c1 = -2 ratio since Im <L_eta w, w> = -|w|^2
    pointwise; c2 = ratio, the rotation field having sup norm 1 on the ball.

    Raises:
        InvalidArgumentError: If n is not 1 or 2
    """
    if n not in (1, 2):
        raise InvalidArgumentError(f"n must be 1 or 2, got {n}")
    ratio = _radial_ratio(n)
    return BoundCoefficients(sigma0=(n + 1) / n, c1=-2 * ratio, c2=ratio, n=n)


def bound_curve(n: int, t_grid: Sequence[float]) -> list[tuple[float, float]]:
    """(t, sigma0 + c1 t + c2 t^2) for each grid point."""
    if not t_grid:
        raise InvalidArgumentError("t_grid must be nonempty")
    coefficients = bound_coefficients_b2n(n)
    return [(t, coefficients.evaluate(t)) for t in t_grid]


def _check_grid(t_grid: Sequence[float]) -> None:
    if not t_grid:
        raise InvalidArgumentError("t_grid must be nonempty")
    for t in t_grid:
        if not 0 <= t <= T_MAX:
            raise InvalidArgumentError(f"grid values must lie in [0, {T_MAX}], got {t}")


def _domain(domain: str) -> BallDomain:
    key = domain.lower()
    if key not in _HALF_DIMENSION:
        raise InvalidArgumentError(f"diamagnetic comparison needs b2 or b4, got {domain!r}")
    return key  # type: ignore[return-value]


def locate_b4_crossing(t_stop: float = T_MAX, step: float = 0.01) -> float | None:
    """
    First t at which the exact (1, 0) branch on B4 climbs back to 3/2.

    The branch is scanned on a uniform grid and the first sign change of
    value - 3/2 is refined with Brent's method. Sign changes across a pole are
    rejected by checking the refined residual.
    """

    def excess(t: float) -> float:
        return b4_steklov_exact(1, 0, t) - 1.5

    previous: tuple[float, float] | None = None
    for t in np.arange(step, t_stop + step / 2, step):
        try:
            value = excess(float(t))
        except PoleError:
            previous = None
            continue
        if previous is not None and previous[1] < 0 <= value:
            root = brentq(excess, previous[0], float(t), xtol=1e-12)
            if abs(excess(root)) < 1e-8:
                logger.info("Located B4 crossing", t=root)
                return float(root)
        previous = (float(t), value)
    return None


def check_violation(domain: str, t_grid: Sequence[float]) -> ViolationReport:
    """
    Compare the first eigenvalue with its non-magnetic value and the bound.

    Raises:
        CutoffInsufficientError: Propagated from the spectrum enumeration
    """
    key = _domain(domain)
    _check_grid(t_grid)
    coefficients = bound_coefficients_b2n(_HALF_DIMENSION[key])

    rows: list[ViolationRow] = []
    for t in t_grid:
        actual, _mode = first_eigenvalue(key, t)
        bound = coefficients.evaluate(t)
        rows.append(
            ViolationRow(
                t=t,
                bound=bound,
                actual=actual,
                sigma0=coefficients.sigma0,
                violated=actual < coefficients.sigma0,
                dominated=actual <= bound + DOMINATION_SLACK,
            )
        )

    violated = [row.t for row in rows if row.violated]
    report = ViolationReport(
        domain=key,
        rows=rows,
        last_violated_t=max(violated) if violated else None,
        crossing_t=locate_b4_crossing() if key == "b4" else None,
    )
    logger.info(
        "Diamagnetic comparison",
        domain=key,
        points=len(rows),
        last_violated_t=report.last_violated_t,
        crossing_t=report.crossing_t,
    )
    return report


def violation_interval(domain: str, t_grid: Sequence[float]) -> tuple[float, float] | None:
    """
    Largest initial stretch of positive grid points on which the first
    eigenvalue stays below its non-magnetic value.
    """
    report = check_violation(domain, sorted(t for t in t_grid if t > 0))
    stretch: list[float] = []
    for row in report.rows:
        if not row.violated:
            break
        stretch.append(row.t)
    if not stretch:
        return None
    return stretch[0], stretch[-1]
