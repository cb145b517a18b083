"""
Radial Systems
==============
Specifications of the radial boundary-value systems behind the Steklov spectra
on B2 and B4, their truncated power-series profiles and closed-form profiles.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Protocol

import numpy as np
from mpmath import mp

from magsteklov.errors import InvalidArgumentError, TruncationError

RadialDomain = Literal["B2", "B4Exact", "B4Coexact"]

_TAIL_TOLERANCE = 1e-14


class RadialValues(NamedTuple):
    """P, Q and their first two r-derivatives at one radius."""

    P: float
    dP: float
    d2P: float
    Q: float
    dQ: float
    d2Q: float


class Profile(Protocol):
    def derivatives(self, r: float) -> RadialValues: ...


@dataclass(frozen=True)
class RadialSystemSpec:
    """
    One radial system.

    ``conjugate`` selects the e^{-ik theta} system on B2 (linear coefficient -2kt)
    and the "-" co-exact family on B4 (potential 2t(2p - k - 1)). It must be
    False for the B4 exact family.
    """

    domain: RadialDomain
    k: int
    t: float
    p: int = 0
    conjugate: bool = False

    def __post_init__(self) -> None:
        if self.domain not in ("B2", "B4Exact", "B4Coexact"):
            raise InvalidArgumentError(f"unknown radial domain {self.domain!r}")
        if not np.isfinite(self.t) or self.t < 0:
            raise InvalidArgumentError(f"t must be finite and >= 0, got {self.t}")
        if self.domain == "B2":
            if self.k < 0:
                raise InvalidArgumentError(f"k must be >= 0, got {self.k}")
        else:
            if self.k < 1 or not 0 <= self.p <= self.k:
                raise InvalidArgumentError(
                    f"need k >= 1 and 0 <= p <= k, got k={self.k}, p={self.p}"
                )
        if self.domain == "B4Exact" and self.conjugate:
            raise InvalidArgumentError("the exact family has no conjugate variant")

    @property
    def coexact_sign(self) -> int:
        return -1 if self.conjugate else 1

    @property
    def disk_orientation(self) -> int:
        """+1 for the e^{ik theta} system, -1 for its conjugate."""
        return -1 if self.conjugate else 1

    def residuals(self, r: float, v: RadialValues) -> tuple[float, float]:
        """
        Left-hand sides of the radial equations at r, each divided by the
        largest term that enters it.
        """
        k, t = self.k, self.t
        if self.domain == "B2":
            eps = self.disk_orientation
            potential = 2 * k * eps * t + t * t * r * r
            q_terms = (
                k * k * v.Q / r**2,
                -v.d2Q,
                v.dQ / r,
                -2 * eps * k * v.P / r,
                potential * v.Q,
            )
            p_terms = (
                k * k * v.P / r**2,
                -v.d2P,
                -v.dP / r,
                v.P / r**2,
                -2 * eps * k * v.Q / r**3,
                potential * v.P,
            )
            return _scaled(q_terms), _scaled(p_terms)

        if self.domain == "B4Exact":
            potential = 2 * (2 * self.p - k) * t + t * t * r * r
            q_terms = (
                k * (k + 2) * v.Q / r**2,
                -v.d2Q,
                -v.dQ / r,
                -2 * v.P / r,
                potential * v.Q,
            )
            p_terms = (
                k * (k + 2) * v.P / r**2,
                -v.d2P,
                -3 * v.dP / r,
                3 * v.P / r**2,
                -2 * k * (k + 2) * v.Q / r**3,
                potential * v.P,
            )
            return _scaled(q_terms), _scaled(p_terms)

        potential = 2 * t * (2 * self.p - k + self.coexact_sign) + t * t * r * r
        q_terms = (v.d2Q, v.dQ / r, -((k + 1) ** 2) * v.Q / r**2, -potential * v.Q)
        return _scaled(q_terms), 0.0

    def second_derivatives(
        self, r: float, P: float, dP: float, Q: float, dQ: float
    ) -> tuple[float, float]:
        """Solve the radial equations for (P'', Q'')."""
        k, t = self.k, self.t
        if self.domain == "B2":
            eps = self.disk_orientation
            potential = 2 * k * eps * t + t * t * r * r
            d2Q = dQ / r + k * k * Q / r**2 - 2 * eps * k * P / r + potential * Q
            d2P = -dP / r + P / r**2 + k * k * P / r**2 - 2 * eps * k * Q / r**3 + potential * P
            return d2P, d2Q
        if self.domain == "B4Exact":
            potential = 2 * (2 * self.p - k) * t + t * t * r * r
            d2Q = -dQ / r + k * (k + 2) * Q / r**2 - 2 * P / r + potential * Q
            d2P = (
                -3 * dP / r
                + 3 * P / r**2
                + k * (k + 2) * P / r**2
                - 2 * k * (k + 2) * Q / r**3
                + potential * P
            )
            return d2P, d2Q
        potential = 2 * t * (2 * self.p - k + self.coexact_sign) + t * t * r * r
        return 0.0, -dQ / r + ((k + 1) ** 2 / r**2 + potential) * Q


def _scaled(terms: tuple[float, ...]) -> float:
    scale = max(abs(x) for x in terms)
    if scale == 0:
        return 0.0
    return abs(sum(terms)) / scale


@dataclass(frozen=True)
class RadialProfile:
    """
    Factored power series P = r^{eP} sum a_j r^{2j}, Q = r^{eQ} sum b_j r^{2j}.

    An empty coefficient array stands for the zero function.
    """

    indicial_exponent_P: int
    indicial_exponent_Q: int
    coeffs_P: np.ndarray = field(repr=False)
    coeffs_Q: np.ndarray = field(repr=False)

    @property
    def n_terms(self) -> int:
        return max(len(self.coeffs_P), len(self.coeffs_Q))

    def scaled(self, factor: float) -> "RadialProfile":
        return RadialProfile(
            self.indicial_exponent_P,
            self.indicial_exponent_Q,
            factor * self.coeffs_P,
            factor * self.coeffs_Q,
        )

    def __add__(self, other: "RadialProfile") -> "RadialProfile":
        if (self.indicial_exponent_P, self.indicial_exponent_Q) != (
            other.indicial_exponent_P,
            other.indicial_exponent_Q,
        ):
            raise InvalidArgumentError("profiles with different indicial exponents")
        return RadialProfile(
            self.indicial_exponent_P,
            self.indicial_exponent_Q,
            _padded_sum(self.coeffs_P, other.coeffs_P),
            _padded_sum(self.coeffs_Q, other.coeffs_Q),
        )

    def hat_P(self, r: float) -> float:
        return _series(self.coeffs_P, 0, r)[0]

    def hat_Q(self, r: float) -> float:
        return _series(self.coeffs_Q, 0, r)[0]

    def derivatives(self, r: float) -> RadialValues:
        P, dP, d2P = _series(self.coeffs_P, self.indicial_exponent_P, r)
        Q, dQ, d2Q = _series(self.coeffs_Q, self.indicial_exponent_Q, r)
        return RadialValues(P, dP, d2P, Q, dQ, d2Q)

    def check_converged(self) -> None:
        """Raise if the last two terms at r = 1 exceed 1e-14 of the partial sum."""
        for coeffs in (self.coeffs_P, self.coeffs_Q):
            if len(coeffs) < 2 or not np.any(coeffs):
                continue
            tail = float(abs(coeffs[-1]) + abs(coeffs[-2]))
            total = float(abs(np.sum(coeffs)))
            if tail > _TAIL_TOLERANCE * max(total, float(np.max(np.abs(coeffs)))):
                raise TruncationError("radial series not converged at r = 1", tail=tail)


def _padded_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = max(len(a), len(b))
    out = np.zeros(size)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def _series(coeffs: np.ndarray, exponent: int, r: float) -> tuple[float, float, float]:
    """Value and first two derivatives of r^e sum c_j r^{2j}."""
    if len(coeffs) == 0:
        return 0.0, 0.0, 0.0
    powers = exponent + 2 * np.arange(len(coeffs), dtype=float)
    # Terms whose coefficient is zero may carry negative powers; mask them.
    live = coeffs != 0
    c, m = coeffs[live], powers[live]
    value = float(np.sum(c * r**m))
    first = float(np.sum(c * m * r ** (m - 1)))
    second = float(np.sum(c * m * (m - 1) * r ** (m - 2)))
    return value, first, second


@dataclass(frozen=True)
class ClosedFormProfile:
    """
    Radial profile given by mpmath callables, differentiated in high precision.

    Either callable may be ``None`` for an identically zero component.
    """

    P: Callable[[object], object] | None
    Q: Callable[[object], object] | None
    dps: int = 40

    def derivatives(self, r: float) -> RadialValues:
        with mp.workdps(self.dps):
            p = _mp_derivatives(self.P, r)
            q = _mp_derivatives(self.Q, r)
        return RadialValues(*p, *q)


def _mp_derivatives(f: Callable[[object], object] | None, r: float) -> tuple[float, float, float]:
    if f is None:
        return 0.0, 0.0, 0.0
    x = mp.mpf(r)
    return (
        float(f(x)),  # type: ignore[arg-type]
        float(mp.diff(f, x, 1)),
        float(mp.diff(f, x, 2)),
    )
