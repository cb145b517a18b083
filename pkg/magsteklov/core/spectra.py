"""
Closed-Form Spectra
===================
Magnetic Hodge Laplacian spectra on S1 and S3 and magnetic Steklov spectra on
1-forms of B2 and B4 for the rotation (Hopf) potential, with enumeration up to
a cutoff and first-eigenvalue selection.
"""

import math
from collections.abc import Callable
from typing import Literal

import structlog

from magsteklov.config import settings
from magsteklov.core.specfun import (
    LaguerreArgs,
    exp_taylor_remainder,
    laguerre_with_scale,
)
from magsteklov.errors import CutoffInsufficientError, InvalidArgumentError, PoleError
from magsteklov.schemas.reports import Domain, LowestEigenvalueReport
from magsteklov.schemas.spectrum import (
    EigenvalueRecord,
    ExcludedPoint,
    Family,
    MagneticParameter,
    ModeIndex,
    Spectrum,
)

logger = structlog.get_logger()

ExactVariant = Literal["TheoremStatement", "ProofQPrime"]
Sign = Literal[1, -1]

# Relative size below which a Laguerre denominator counts as a zero.
POLE_THRESHOLD = 1e-12


def _coupling(t: float | MagneticParameter) -> float:
    if isinstance(t, MagneticParameter):
        return t.t
    return MagneticParameter(t=t).t


def _check_kp(k: int, p: int, k_min: int = 1) -> None:
    if k < k_min:
        raise InvalidArgumentError(f"k must be >= {k_min}, got {k}")
    if not 0 <= p <= k:
        raise InvalidArgumentError(f"p must lie in [0, {k}], got {p}")


# S1


def s1_hodge_spectrum(t: float | MagneticParameter, k_max: int, degree: int = 0) -> Spectrum:
    """
    Spectrum {(k + t)^2, (k - t)^2 : 0 <= k <= k_max} of the magnetic Laplacian on S1.

    Degree 0 and degree 1 share the spectrum; k = 0 contributes the single
    eigenvalue t^2 (the constant function, or the volume form in degree 1).
    """
    tv = _coupling(t)
    if k_max < 0:
        raise InvalidArgumentError(f"k_max must be >= 0, got {k_max}")
    if degree not in (0, 1):
        raise InvalidArgumentError(f"degree must be 0 or 1, got {degree}")

    family = Family.S1_FUNCTION if degree == 0 else Family.S1_VOLUME_FORM
    records = [EigenvalueRecord(value=tv * tv, mode=ModeIndex(k=0, family=family), multiplicity=1)]
    for k in range(1, k_max + 1):
        for sign in (1, -1):
            records.append(
                EigenvalueRecord(
                    value=(k + sign * tv) ** 2,
                    mode=ModeIndex(k=k, family=family, sign=sign),
                    multiplicity=1,
                )
            )
    return Spectrum.from_records(records, cutoff=k_max, t=tv)


def magnetic_betti_s1(t: float | MagneticParameter) -> int:
    """Dimension of the kernel on 1-forms: one exactly when t is an integer."""
    tv = _coupling(t)
    return 1 if tv == math.floor(tv) else 0


# S3


def s3_function_eigenvalue(k: int, p: int, t: float | MagneticParameter) -> float:
    """k(k+2) + 2(2p-k)t + t^2."""
    _check_kp(k, p, k_min=0)
    tv = _coupling(t)
    return k * (k + 2) + 2 * (2 * p - k) * tv + tv * tv


def s3_coexact_eigenvalue(k: int, p: int, sign: Sign, t: float | MagneticParameter) -> float:
    """(k+1)^2 + 2t(2p - k +- 1) + t^2."""
    _check_kp(k, p)
    tv = _coupling(t)
    return (k + 1) ** 2 + 2 * tv * (2 * p - k + sign) + tv * tv


def s3_function_spectrum(t: float | MagneticParameter, k_max: int) -> Spectrum:
    """Function spectrum on S3, one record per (k, p) with multiplicity k + 1."""
    tv = _coupling(t)
    records = [
        EigenvalueRecord(
            value=s3_function_eigenvalue(k, p, tv),
            mode=ModeIndex(k=k, p=p, family=Family.S3_FUNCTION),
            multiplicity=k + 1,
        )
        for k in range(k_max + 1)
        for p in range(k + 1)
    ]
    return Spectrum.from_records(records, cutoff=k_max, t=tv)


def s3_oneform_spectrum(t: float | MagneticParameter, k_max: int) -> Spectrum:
    """
    1-form spectrum on S3: the exact family and both co-exact families.

    Every record carries its family multiplicity k(k+2) at index k, the
    total stated per family; it is not split across p.
    """
    tv = _coupling(t)
    if k_max < 1:
        raise InvalidArgumentError(f"k_max must be >= 1, got {k_max}")

    records: list[EigenvalueRecord] = []
    for k in range(1, k_max + 1):
        for p in range(k + 1):
            records.append(
                EigenvalueRecord(
                    value=s3_function_eigenvalue(k, p, tv),
                    mode=ModeIndex(k=k, p=p, family=Family.S3_EXACT),
                    multiplicity=k * (k + 2),
                )
            )
            for sign, family in ((1, Family.S3_COEXACT_PLUS), (-1, Family.S3_COEXACT_MINUS)):
                records.append(
                    EigenvalueRecord(
                        value=s3_coexact_eigenvalue(k, p, sign, tv),
                        mode=ModeIndex(k=k, p=p, family=family),
                        multiplicity=k * (k + 2),
                    )
                )
    return Spectrum.from_records(records, cutoff=k_max, t=tv)


def s3_zero_modes(t: float | MagneticParameter, k_max: int, atol: float = 1e-12) -> list[ModeIndex]:
    """Modes of the 1-form spectrum whose eigenvalue vanishes."""
    spectrum = s3_oneform_spectrum(t, k_max)
    return [r.mode for r in spectrum.records if abs(r.value) <= atol]


def s3_first_eigenvalue(t: float | MagneticParameter, k_max: int) -> tuple[float, ModeIndex]:
    """Lowest 1-form eigenvalue on S3 up to ``k_max``."""
    return _argmin(s3_oneform_spectrum(t, k_max))


def family_multiplicity(family: Family, k: int) -> int | None:
    """Total multiplicity of a family at index k; ``None`` where none is known."""
    if family in (Family.S1_FUNCTION, Family.S1_VOLUME_FORM):
        return 1
    if family == Family.S3_FUNCTION:
        return (k + 1) ** 2
    if family in (Family.S3_EXACT, Family.S3_COEXACT_PLUS, Family.S3_COEXACT_MINUS):
        return k * (k + 2)
    if family in (Family.B2_K_ZERO, Family.B2_PLUS, Family.B2_MINUS):
        return 1
    return None


# B2


def b2_steklov_eigenvalue(k: int, family: Family, t: float | MagneticParameter) -> float:
    """
    Steklov eigenvalue of the k-th Fourier mode on the unit disk.

    k = 0 gives t coth(t/2). For k >= 1 the Minus branch is
    (-t)^{k+1} / (k! R_k(-t)) and the Plus branch t^{k+1} / (k! R_k(t)), with
    R_k the exponential Taylor remainder. At t = 0 the analytic limits 2 and
    k + 1 are returned.
    """
    tv = _coupling(t)
    if family == Family.B2_K_ZERO:
        if k != 0:
            raise InvalidArgumentError("B2KZero requires k = 0")
        if tv == 0:
            return 2.0
        return tv / math.tanh(tv / 2)

    if family not in (Family.B2_PLUS, Family.B2_MINUS):
        raise InvalidArgumentError(f"not a disk family: {family}")
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if tv == 0:
        return float(k + 1)

    x = tv if family == Family.B2_PLUS else -tv
    # x^{k+1}/k! is carried as (k+1) x^{k+1}/(k+1)! so large k cannot overflow.
    leading = _power_over_factorial(x, k + 1)
    return (k + 1) * leading / exp_taylor_remainder(k, x)


def _power_over_factorial(x: float, n: int) -> float:
    """x^n / n! by running product."""
    value = 1.0
    for j in range(1, n + 1):
        value *= x / j
    return value


def b2_spectrum(t: float | MagneticParameter, k_max: int) -> Spectrum:
    """All disk families up to ``k_max`` (2 k_max + 1 records)."""
    tv = _coupling(t)
    records = [
        EigenvalueRecord(
            value=b2_steklov_eigenvalue(0, Family.B2_K_ZERO, tv),
            mode=ModeIndex(k=0, family=Family.B2_K_ZERO),
            multiplicity=1,
        )
    ]
    for k in range(1, k_max + 1):
        for family in (Family.B2_PLUS, Family.B2_MINUS):
            records.append(
                EigenvalueRecord(
                    value=b2_steklov_eigenvalue(k, family, tv),
                    mode=ModeIndex(k=k, family=family),
                    multiplicity=1,
                )
            )
    return Spectrum.from_records(records, cutoff=k_max, t=tv)


# B4


def _lag(nu: float, alpha: float, t: float) -> float:
    return laguerre_with_scale(LaguerreArgs(nu, alpha, t))[0]


def _lag_ratio(num: tuple[float, float], den: tuple[float, float], t: float) -> float:
    """L_{num}(t) / L_{den}(t) with a pole check on the denominator."""
    value, scale = laguerre_with_scale(LaguerreArgs(den[0], den[1], t))
    if abs(value) <= POLE_THRESHOLD * scale:
        raise PoleError(f"Laguerre denominator L_{den[0]}^({den[1]}) vanishes", t=t)
    return _lag(num[0], num[1], t) / value


def b4_steklov_exact(
    k: int,
    p: int,
    t: float | MagneticParameter,
    variant: ExactVariant = "ProofQPrime",
) -> float:
    """
    Exact-family Steklov eigenvalue on B4 for index (k, p).

    Two printed expressions exist and are evaluated independently:
    ``TheoremStatement`` is the bracketed formula and ``ProofQPrime`` is Q'(1)
    written out through the Laguerre solutions of the radial system. Both reduce
    to k(k+2)/(k+1) at t = 0.

    Raises:
        PoleError: If a Laguerre denominator vanishes at t
    """
    _check_kp(k, p)
    tv = _coupling(t)
    if tv == 0:
        return k * (k + 2) / (k + 1)

    if variant == "TheoremStatement":
        first = _lag_ratio((k - 0.5 - p, -(k + 2)), (k + 0.5 - p, -(k + 2)), tv)
        second = _lag_ratio((k - 1.5 - p, -k), (k - 0.5 - p, -k), tv)
        bracket = (
            k * (p + 1.5) * first
            + (k + 2) * (p + 0.5) * second
            + k * k
            - (2 * p + tv) * (k + 1)
            - 1
        )
        return bracket / (k + 1)

    if variant == "ProofQPrime":
        first = _lag_ratio((k - 1.5 - p, 1 - k), (k - 0.5 - p, -k), tv)
        second = _lag_ratio((k - 0.5 - p, -(k + 1)), (k + 0.5 - p, -(k + 2)), tv)
        return (
            -(k + 2) * tv * first / (k + 1)
            - k * tv * second / (k + 1)
            - (k * k + k * tv + 2 * k + tv) / (k + 1)
        )

    raise InvalidArgumentError(f"unknown variant {variant!r}")


def b4_steklov_coexact(k: int, p: int, sign: Sign, t: float | MagneticParameter) -> float:
    """
    Co-exact Steklov eigenvalue on B4.

    ``sign`` is the sign in the radial potential 2t(2p - k +- 1):
    "+" gives -2t L^(-k)_{k-3/2-p} / L^(-(k+1))_{k-1/2-p} - (k+t+1) and
    "-" gives -2t L^(-k)_{k-1/2-p} / L^(-(k+1))_{k+1/2-p} - (k+t+1).
    So ``sign=+1`` takes the lower Laguerre degrees and ``sign=-1`` the upper
    ones; labelling by the degree shift instead reads the other way round.
    """
    _check_kp(k, p)
    tv = _coupling(t)
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign}")
    if tv == 0:
        return float(k + 1)

    shift = -1.0 if sign == 1 else 0.0
    ratio = _lag_ratio((k - 0.5 - p + shift, -k), (k + 0.5 - p + shift, -(k + 1)), tv)
    return -2 * tv * ratio - (k + tv + 1)


def b4_printed_lowest(t: float | MagneticParameter) -> float:
    """The printed lowest-eigenvalue expression on B4, read with k = 1."""
    tv = _coupling(t)
    if tv == 0:
        return 1.5
    first = _lag_ratio((-0.5, 0.0), (-0.5, -1.0), tv)
    second = _lag_ratio((0.5, -2.0), (1.5, -3.0), tv)
    return -1.5 * tv * first - 0.5 * tv * second - (2 * tv + 3) / 2


def b4_spectrum(
    t: float | MagneticParameter,
    k_max: int,
    variant: ExactVariant | None = None,
) -> Spectrum:
    """
    All B4 families up to ``k_max``; poles are reported as excluded points.

    Multiplicities are unspecified.
    """
    tv = _coupling(t)
    variant = variant or settings.b4_exact_variant
    records: list[EigenvalueRecord] = []
    excluded: list[ExcludedPoint] = []

    def add(mode: ModeIndex, evaluate: Callable[[], float]) -> None:
        try:
            value = evaluate()
        except PoleError as e:
            logger.warning("Excluded pole point", mode=mode.label(), t=tv, error=str(e))
            excluded.append(ExcludedPoint(mode=mode, t=tv, reason=str(e)))
            return
        if value < 0:
            logger.warning("Negative Steklov value on B4", mode=mode.label(), t=tv, value=value)
        records.append(EigenvalueRecord(value=value, mode=mode))

    for k in range(1, k_max + 1):
        for p in range(k + 1):
            add(
                ModeIndex(k=k, p=p, family=Family.B4_EXACT),
                lambda k=k, p=p: b4_steklov_exact(k, p, tv, variant),
            )
            add(
                ModeIndex(k=k, p=p, family=Family.B4_COEXACT_PLUS),
                lambda k=k, p=p: b4_steklov_coexact(k, p, 1, tv),
            )
            add(
                ModeIndex(k=k, p=p, family=Family.B4_COEXACT_MINUS),
                lambda k=k, p=p: b4_steklov_coexact(k, p, -1, tv),
            )
    return Spectrum.from_records(records, cutoff=k_max, t=tv, excluded=excluded)


def b4_lowest_eigenvalue(
    t: float | MagneticParameter,
    k_max: int | None = None,
) -> LowestEigenvalueReport:
    """
    Printed lowest-eigenvalue expression next to the exact (1, 0) branch and
    the enumerated minimum over all B4 families.
    """
    tv = _coupling(t)
    spectrum = b4_spectrum(tv, k_max or settings.b4_k_max)
    return LowestEigenvalueReport(
        t=tv,
        printed=b4_printed_lowest(tv),
        exact_branch=b4_steklov_exact(1, 0, tv, "ProofQPrime"),
        enumerated_min=spectrum.lowest.value,
        enumerated_mode=spectrum.lowest.mode,
    )


# Front end


def spectrum(domain: Domain, t: float | MagneticParameter, k_max: int | None = None) -> Spectrum:
    """Spectrum of the 1-form operator on the given model space."""
    if domain == "s1":
        return s1_hodge_spectrum(t, settings.k_max if k_max is None else k_max, degree=1)
    if domain == "s3":
        return s3_oneform_spectrum(t, k_max or settings.k_max)
    if domain == "b2":
        return b2_spectrum(t, k_max or settings.k_max)
    if domain == "b4":
        return b4_spectrum(t, k_max or settings.b4_k_max)
    raise InvalidArgumentError(f"unknown domain {domain!r}")


def _argmin(spec: Spectrum) -> tuple[float, ModeIndex]:
    lowest = spec.lowest
    if lowest.mode.k == spec.cutoff and spec.cutoff > 0:
        raise CutoffInsufficientError(spec.cutoff, lowest.mode.label())
    return lowest.value, lowest.mode


def first_eigenvalue(
    domain: Domain,
    t: float | MagneticParameter,
    k_max: int | None = None,
) -> tuple[float, ModeIndex]:
    """
    Lowest eigenvalue and its mode.

    Raises:
        CutoffInsufficientError: If the minimizing mode sits at the cutoff
    """
    return _argmin(spectrum(domain, t, k_max))
