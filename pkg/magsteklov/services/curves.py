"""
Curve Service
=============
Branch and first-eigenvalue curves over t grids, fanned out over a thread pool,
and the data behind the published figures.
"""

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import structlog

from magsteklov.config import settings
from magsteklov.core.spectra import (
    b2_steklov_eigenvalue,
    b4_steklov_coexact,
    b4_steklov_exact,
    first_eigenvalue,
    s3_coexact_eigenvalue,
    s3_function_eigenvalue,
)
from magsteklov.errors import InvalidArgumentError, PoleError
from magsteklov.schemas.reports import Domain, FigureName
from magsteklov.schemas.spectrum import Family, ModeIndex

logger = structlog.get_logger()

Branch = tuple[ModeIndex, Callable[[float], float]]


def column_name(mode: ModeIndex) -> str:
    """Stable column header for a branch, e.g. ``S3Exact_k1_p0``."""
    name = f"{mode.family.value}_k{mode.k}"
    if mode.p is not None:
        name += f"_p{mode.p}"
    if mode.sign is not None:
        name += "_plus" if mode.sign > 0 else "_minus"
    return name


def _s1_branches(k_max: int) -> list[Branch]:
    found: list[Branch] = [(ModeIndex(k=0, family=Family.S1_VOLUME_FORM), lambda t: t * t)]
    for k in range(1, k_max + 1):
        for sign in (1, -1):
            found.append(
                (
                    ModeIndex(k=k, family=Family.S1_VOLUME_FORM, sign=sign),
                    lambda t, k=k, sign=sign: (k + sign * t) ** 2,
                )
            )
    return found


def _s3_branches(k_max: int) -> list[Branch]:
    found: list[Branch] = []
    for k in range(1, k_max + 1):
        for p in range(k + 1):
            found.append(
                (
                    ModeIndex(k=k, p=p, family=Family.S3_EXACT),
                    lambda t, k=k, p=p: s3_function_eigenvalue(k, p, t),
                )
            )
            for sign, family in ((1, Family.S3_COEXACT_PLUS), (-1, Family.S3_COEXACT_MINUS)):
                found.append(
                    (
                        ModeIndex(k=k, p=p, family=family),
                        lambda t, k=k, p=p, sign=sign: s3_coexact_eigenvalue(k, p, sign, t),
                    )
                )
    return found


def _b2_branches(k_max: int) -> list[Branch]:
    found: list[Branch] = [
        (
            ModeIndex(k=0, family=Family.B2_K_ZERO),
            lambda t: b2_steklov_eigenvalue(0, Family.B2_K_ZERO, t),
        )
    ]
    for k in range(1, k_max + 1):
        for family in (Family.B2_PLUS, Family.B2_MINUS):
            found.append(
                (
                    ModeIndex(k=k, family=family),
                    lambda t, k=k, family=family: b2_steklov_eigenvalue(k, family, t),
                )
            )
    return found


def _b4_branches(k_max: int) -> list[Branch]:
    found: list[Branch] = []
    for k in range(1, k_max + 1):
        for p in range(k + 1):
            found.append(
                (
                    ModeIndex(k=k, p=p, family=Family.B4_EXACT),
                    lambda t, k=k, p=p: b4_steklov_exact(k, p, t, settings.b4_exact_variant),
                )
            )
            for sign, family in ((1, Family.B4_COEXACT_PLUS), (-1, Family.B4_COEXACT_MINUS)):
                found.append(
                    (
                        ModeIndex(k=k, p=p, family=family),
                        lambda t, k=k, p=p, sign=sign: b4_steklov_coexact(k, p, sign, t),
                    )
                )
    return found


_BRANCHES: dict[str, Callable[[int], list[Branch]]] = {
    "s1": _s1_branches,
    "s3": _s3_branches,
    "b2": _b2_branches,
    "b4": _b4_branches,
}


def branches(domain: Domain, k_max: int) -> list[Branch]:
    """Every 1-form branch of a domain up to ``k_max``."""
    if domain not in _BRANCHES:
        raise InvalidArgumentError(f"unknown domain {domain!r}")
    return _BRANCHES[domain](k_max)


def _nan_on_pole(fn: Callable[[float], float], t: float) -> float:
    try:
        return fn(t)
    except PoleError:
        return math.nan


def branch_curves(domain: Domain, t_grid: Sequence[float], k_max: int) -> dict[str, list[float]]:
    """
    Branch values on a t grid, one column per branch after a leading ``t``.

    Pole points are NaN so plotted polylines break there.
    """
    selected = branches(domain, k_max)

    def row(t: float) -> list[float]:
        return [_nan_on_pole(fn, t) for _mode, fn in selected]

    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        rows = list(pool.map(row, t_grid))
    columns: dict[str, list[float]] = {"t": list(t_grid)}
    for i, (mode, _fn) in enumerate(selected):
        columns[column_name(mode)] = [r[i] for r in rows]
    logger.info("Branch curves computed", domain=domain, points=len(t_grid), branches=len(selected))
    return columns


def first_eigenvalue_curve(
    domain: Domain,
    t_grid: Sequence[float],
    k_max: int | None = None,
) -> list[tuple[float, float, ModeIndex]]:
    """(t, first eigenvalue, minimizing mode) for each grid point."""

    def row(t: float) -> tuple[float, float, ModeIndex]:
        value, mode = first_eigenvalue(domain, t, k_max)
        return t, value, mode

    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        rows = list(pool.map(row, t_grid))
    logger.info("First eigenvalue curve computed", domain=domain, points=len(t_grid))
    return rows


@dataclass
class FigureData:
    """Columns of one figure together with its axis labels."""

    name: FigureName
    x_label: str
    y_label: str
    columns: dict[str, list[float]] = field(default_factory=dict)


def sample_grid(start: float, stop: float, samples: int | None = None) -> list[float]:
    return np.linspace(start, stop, samples or settings.figure_samples).tolist()


def figure_data(
    name: FigureName,
    k_max: int | None = None,
    samples: int | None = None,
) -> FigureData:
    """
    Data behind a figure.

    fig1-left: S3 1-form branches over [0, 5]. fig1-right: the first S3
    1-form eigenvalue over [0, 12]. fig2: disk branches over
    [0, settings.fig2_t_stop].
    """
    branch_k = k_max or settings.figure_k_max
    if name == "fig1-left":
        columns = branch_curves("s3", sample_grid(0.0, 5.0, samples), branch_k)
        return FigureData(name, "t", "eigenvalue", columns)
    if name == "fig1-right":
        rows = first_eigenvalue_curve("s3", sample_grid(0.0, 12.0, samples), k_max)
        columns = {"t": [t for t, _v, _m in rows], "first": [v for _t, v, _m in rows]}
        return FigureData(name, "t", "first eigenvalue", columns)
    if name == "fig2":
        grid = sample_grid(0.0, settings.fig2_t_stop, samples)
        return FigureData(name, "t", "Steklov eigenvalue", branch_curves("b2", grid, branch_k))
    raise InvalidArgumentError(f"unknown figure {name!r}")
