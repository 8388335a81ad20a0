"""Grothendieck residues and multipoint interpolation over zero-dimensional ideals."""

__version__ = "0.1.0"
