"""
Harmonic Extension Audit
========================
Finite-difference checks of the explicit extension of a first Steklov
eigenform on the ball B^{2n}: componentwise harmonicity, the Lie derivative
along the rotation field and the action of the field on the boundary function.
"""

from collections.abc import Sequence

import numpy as np
import structlog

from magsteklov.errors import InvalidArgumentError, StencilError
from magsteklov.schemas.reports import HarmonicExtensionReport

logger = structlog.get_logger()

LIE_STEP = 1e-5
LAPLACIAN_STEP = 1e-3
DEFAULT_TOLERANCE = 1e-6


def _check_n(n: int) -> None:
    if n not in (1, 2):
        raise InvalidArgumentError(f"n must be 1 or 2, got {n}")


def _as_point(n: int, point: Sequence[float] | np.ndarray) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    if x.shape != (2 * n,):
        raise InvalidArgumentError(f"expected a point in R^{2 * n}, got shape {x.shape}")
    radius = float(np.linalg.norm(x))
    if radius <= LAPLACIAN_STEP or radius + LAPLACIAN_STEP >= 1:
        raise StencilError(f"stencil around |x| = {radius:.6f} leaves the punctured ball")
    return x


def boundary_function(j: int, x: np.ndarray) -> complex:
    """x_j - i y_j with coordinates ordered (x_1, y_1, ..., x_n, y_n)."""
    return complex(x[2 * j], -x[2 * j + 1])


def _gradient(j: int, size: int) -> np.ndarray:
    grad = np.zeros(size, dtype=complex)
    grad[2 * j] = 1
    grad[2 * j + 1] = -1j
    return grad


def rotation_field(x: np.ndarray) -> np.ndarray:
    """sum_j (-y_j d/dx_j + x_j d/dy_j) at x."""
    field = np.empty_like(x)
    field[0::2] = -x[1::2]
    field[1::2] = x[0::2]
    return field


def _rotation(angle: float, size: int) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    block = np.array([[c, -s], [s, c]])
    return np.kron(np.eye(size // 2), block)


def extension(n: int, j: int, x: np.ndarray) -> np.ndarray:
    """
    Cartesian components of the extension of d(x_j - i y_j) restricted to the
    sphere,
    c [(1 + r^2/(2n-1)) dh - (2n/(2n-1)) h x] with c = (2n-1)/(2n).
    """
    r2 = float(x @ x)
    h = boundary_function(j, x)
    grad = _gradient(j, 2 * n)
    scale = (2 * n - 1) / (2 * n)
    return scale * ((1 + r2 / (2 * n - 1)) * grad - (2 * n / (2 * n - 1)) * h * x)


def _laplacian(n: int, j: int, x: np.ndarray) -> np.ndarray:
    centre = extension(n, j, x)
    total = np.zeros_like(centre)
    for axis in range(2 * n):
        step = np.zeros_like(x)
        step[axis] = LAPLACIAN_STEP
        total += extension(n, j, x + step) - 2 * centre + extension(n, j, x - step)
    return total / LAPLACIAN_STEP**2


def _lie_derivative(n: int, j: int, x: np.ndarray, t: float) -> np.ndarray:
    """L_{t eta} of the extension by a central difference along the rotation flow."""
    forward = _rotation(t * LIE_STEP, 2 * n)
    backward = _rotation(-t * LIE_STEP, 2 * n)
    pulled_forward = forward.T @ extension(n, j, forward @ x)
    pulled_backward = backward.T @ extension(n, j, backward @ x)
    return (pulled_forward - pulled_backward) / (2 * LIE_STEP)


def im_lie_ratio(n: int, point: Sequence[float] | np.ndarray, j: int = 0) -> float:
    """Im <L_eta w, w> / |w|^2 at a point; -1 for the extension."""
    _check_n(n)
    x = _as_point(n, point)
    w = extension(n, j, x)
    lie = _lie_derivative(n, j, x, 1.0)
    return float(np.vdot(w, lie).imag / np.vdot(w, w).real)


def random_interior_points(n: int, count: int = 20, seed: int = 0) -> list[list[float]]:
    """Points with radius in [0.1, 0.9] and uniformly random direction."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    directions = rng.normal(size=(count, 2 * n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = rng.uniform(0.1, 0.9, size=(count, 1))
    return (directions * radii).tolist()


def verify_harmonic_extension_b2n(
    n: int,
    t_check: float = 1.0,
    sample_points: Sequence[Sequence[float]] | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> HarmonicExtensionReport:
    """
    Audit the extension for every boundary function x_j - i y_j.

    Checks at each point: the componentwise Laplacian vanishes, the Lie
    derivative along t_check * eta equals -i t_check times the form, and
    eta(x_j - i y_j) = -i (x_j - i y_j).

    The Laplacian stencil uses step 1e-3 rather than the Lie step 1e-5. The
    extension is a cubic polynomial, so the central second difference is exact
    up to rounding, and the larger step keeps that rounding below 1e-8.

    Args:
        n: Half-dimension of the ball, 1 or 2
        t_check: Coupling scaling the rotation field in the Lie check
        sample_points: Points of the punctured ball (default: 20 random points)
        tolerance: Pass threshold for every residual

    Raises:
        StencilError: If a finite-difference stencil leaves the domain
    """
    _check_n(n)
    if not np.isfinite(t_check) or t_check < 0:
        raise InvalidArgumentError(f"t_check must be finite and >= 0, got {t_check}")
    if sample_points is None:
        sample_points = random_interior_points(n)
    points = [_as_point(n, p) for p in sample_points]

    laplacian = lie = eta = ratio = 0.0
    for x in points:
        for j in range(n):
            w = extension(n, j, x)
            size = max(1.0, float(np.linalg.norm(w)))
            laplacian = max(laplacian, float(np.max(np.abs(_laplacian(n, j, x)))) / size)

            expected = -1j * t_check * w
            deviation = np.max(np.abs(_lie_derivative(n, j, x, t_check) - expected))
            lie = max(lie, float(deviation) / (max(1.0, t_check) * size))

            h = boundary_function(j, x)
            eta_h = complex(_gradient(j, 2 * n) @ rotation_field(x))
            eta = max(eta, abs(eta_h + 1j * h))

            ratio = max(ratio, abs(im_lie_ratio(n, x, j) + 1))

    report = HarmonicExtensionReport(
        n=n,
        points=len(points),
        laplacian_residual=laplacian,
        lie_residual=lie,
        eta_residual=eta,
        im_ratio_deviation=ratio,
        tolerance=tolerance,
    )
    logger.info("Harmonic extension audited", n=n, points=len(points), passed=report.passed)
    return report
