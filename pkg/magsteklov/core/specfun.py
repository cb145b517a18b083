"""
Special Functions
=================
Regularized Kummer series, generalized Laguerre functions of real degree and
exponential Taylor remainders.

All functions are pure and thread-safe.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, gammasgn, rgamma

from magsteklov.config import settings
from magsteklov.errors import AccuracyError, InvalidArgumentError, PoleError

# Terms are generated in blocks; the tail test runs once per block.
_BLOCK = 64
_REL_TAIL = 1e-16
_MAX_FACTORIAL_INDEX = 170


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidArgumentError(f"{name} must be finite, got {value!r}")


def _is_nonpositive_integer(z: float) -> bool:
    return z <= 0 and z == math.floor(z)


@dataclass(frozen=True)
class LaguerreArgs:
    """Arguments of L_nu^(alpha)(x)."""

    nu: float
    alpha: float
    x: float

    def __post_init__(self) -> None:
        _require_finite(nu=self.nu, alpha=self.alpha, x=self.x)
        if self.x < 0:
            raise InvalidArgumentError(f"x must be >= 0, got {self.x}")


def _kummer_series(a: float, b: float, x: float, max_terms: int | None) -> tuple[float, float]:
    """Series value together with the sum of absolute terms."""
    _require_finite(a=a, b=b, x=x)
    if x < 0:
        raise InvalidArgumentError(f"x must be >= 0, got {x}")

    cap = max_terms or settings.kummer_max_terms
    # Past this index consecutive term ratios stay below one.
    settled_after = abs(a) + abs(b) + x + 2.0

    total = 0.0
    magnitude = 0.0
    coeff = 1.0  # (a)_n x^n / n! at the start of the block
    start = 0
    last = math.inf
    while start < cap:
        n = np.arange(start, min(start + _BLOCK, cap), dtype=float)
        ratios = (a + n) * x / (n + 1.0)
        coeffs = coeff * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        terms = coeffs * rgamma(b + n)
        total += math.fsum(terms)
        magnitude += float(np.sum(np.abs(terms)))
        coeff = float(coeffs[-1] * ratios[-1])
        last = float(np.max(np.abs(terms[-4:])))
        start = int(n[-1]) + 1

        if start > settled_after and (coeff == 0.0 or last <= _REL_TAIL * abs(total)):
            return total, magnitude

    raise AccuracyError("regularized Kummer series did not converge", tail=last)


def regularized_kummer(a: float, b: float, x: float, max_terms: int | None = None) -> float:
    """
    Regularized confluent hypergeometric function.

    Sums M(a, b, x) = sum_n (a)_n x^n / (Gamma(b + n) n!) directly, so the value
    is entire in ``b`` and non-positive integer ``b`` needs no special casing.

    Args:
        a: Numerator parameter
        b: Denominator parameter
        x: Argument, x >= 0
        max_terms: Hard cap on the number of terms (defaults to settings)

    Returns:
        The series value

    Raises:
        InvalidArgumentError: On non-finite input or negative x
        AccuracyError: If the tail is still above tolerance at the cap
    """
    return _kummer_series(a, b, x, max_terms)[0]


def _gamma_ratio(num: float, den: float) -> float:
    """Gamma(num) / Gamma(den) via log-gamma with the sign tracked apart."""
    sign = gammasgn(num) * gammasgn(den)
    return float(sign * math.exp(gammaln(num) - gammaln(den)))


def laguerre_with_scale(args: LaguerreArgs) -> tuple[float, float]:
    """
    Laguerre value and the magnitude of the terms that produced it.

    A value far below its scale means the series cancelled down to a zero of
    the function; callers use the ratio to detect denominator poles.
    """
    nu, alpha, x = args.nu, args.alpha, args.x
    if nu == 0:
        return 1.0, 1.0
    if _is_nonpositive_integer(nu + 1) or _is_nonpositive_integer(nu + alpha + 1):
        raise PoleError(f"Laguerre prefactor has a pole at nu={nu}, alpha={alpha}")

    prefactor = _gamma_ratio(nu + alpha + 1, nu + 1)
    value, magnitude = _kummer_series(-nu, alpha + 1, x, None)
    return prefactor * value, abs(prefactor) * magnitude


def laguerre(args: LaguerreArgs) -> float:
    """
    Generalized Laguerre function of real degree.

    L_nu^(alpha)(x) = Gamma(nu + alpha + 1) / Gamma(nu + 1) * M(-nu, alpha + 1, x)
    with M the regularized Kummer function. Negative integer ``alpha`` is fine.
    """
    return laguerre_with_scale(args)[0]


def genlaguerre(nu: float, alpha: float, x: float) -> float:
    """Shorthand for ``laguerre(LaguerreArgs(nu, alpha, x))``."""
    return laguerre(LaguerreArgs(nu, alpha, x))


def laguerre_dx(args: LaguerreArgs) -> float:
    """Derivative in x, computed as -L_{nu-1}^(alpha+1)(x)."""
    nu, alpha, x = args.nu, args.alpha, args.x
    # 1/Gamma(nu) vanishes here, and so does the derivative.
    if _is_nonpositive_integer(nu) and not _is_nonpositive_integer(nu + alpha + 1):
        return 0.0
    return -laguerre(LaguerreArgs(nu - 1, alpha + 1, x))


def exp_taylor_partial(k: int, t: float) -> float:
    """Partial sum sum_{j<=k} t^j / j!."""
    term = 1.0
    terms = [term]
    for j in range(1, k + 1):
        term *= t / j
        terms.append(term)
    return math.fsum(terms)


def exp_taylor_remainder(k: int, t: float) -> float:
    """
    Remainder e^t - sum_{j<=k} t^j / j! of the exponential series.

    While |t| < k + 2 the tail sum_{j>k} t^j / j! converges from its first term
    and is summed directly, so tiny remainders near t = 0 keep full relative
    accuracy. Beyond that the remainder is comparable to the partial sum and the
    difference is formed with compensated summation.

    Raises:
        InvalidArgumentError: If k is outside [0, 170] or t is not finite
    """
    if not 0 <= k <= _MAX_FACTORIAL_INDEX:
        raise InvalidArgumentError(f"k must be in [0, {_MAX_FACTORIAL_INDEX}], got {k}")
    _require_finite(t=t)
    if t == 0:
        return 0.0

    if abs(t) < k + 2:
        term = 1.0
        for j in range(1, k + 2):
            term *= t / j
        terms = [term]
        j = k + 1
        while abs(term) > _REL_TAIL * abs(terms[0]) * 1e-2:
            j += 1
            term *= t / j
            terms.append(term)
        return math.fsum(terms)

    term = 1.0
    terms = [math.exp(t), -term]
    for j in range(1, k + 1):
        term *= t / j
        terms.append(-term)
    return math.fsum(terms)
