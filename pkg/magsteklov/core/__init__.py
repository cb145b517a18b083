"""
Core Engines
============
Special functions, closed-form spectra, radial oracle and diamagnetic bounds.
"""

from magsteklov.core.spectra import first_eigenvalue, spectrum

__all__ = ["first_eigenvalue", "spectrum"]
