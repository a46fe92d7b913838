"""Exact Bredon homology of representation spheres for the Klein four group and C2."""

__version__ = "0.1.0"
