"""Exact standard resolutions of torsion-free sheaves on projective space."""

__version__ = "0.1.0"
