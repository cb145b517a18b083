"""
Services
========
Parameter sweeps and figure data.
"""

from magsteklov.services.curves import (
    FigureData,
    branch_curves,
    figure_data,
    first_eigenvalue_curve,
)

__all__ = ["FigureData", "branch_curves", "figure_data", "first_eigenvalue_curve"]
