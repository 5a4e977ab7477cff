"""Exact computations with H-pairs: local algebras with a generating hyperplane
of the maximal ideal, and the projective hypersurfaces they define."""

__version__ = "0.1.0"
SCHEMA = "addax/1"
