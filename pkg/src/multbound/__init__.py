"""Multiplicity bounds for finite reductive groups acting on spherical spaces."""

__version__ = "0.1.0"
