"""
Magnetic Steklov Spectra
========================
Closed-form magnetic Hodge and Steklov spectra on model spaces, with
independent radial and variational verification.
"""

__version__ = "1.0.0"
