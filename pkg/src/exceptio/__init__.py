"""Toolkit for exceptional polynomials: scanning, certifying, constructing."""

__version__ = "0.1.0"
