"""Numerical lab for multilinear Hörmander multipliers with Lorentz-Sobolev conditions."""

__version__ = "0.1.0"
