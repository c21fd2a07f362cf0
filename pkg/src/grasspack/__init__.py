"""Grassmannian subspace packings from orbits of 2-transitive permutation groups."""

__version__ = "0.1.0"
