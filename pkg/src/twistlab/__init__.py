"""Exact verification of the Jordanian quasi-Hopf deformation of sl(2)."""

__version__ = "0.1.0"
