"""Exact computational algebra for the variety of 4-dimensional Lie algebras.

Modules: arith (exact linear algebra), poly (sparse polynomials), groebner,
hilbert, lie4 (structure constants and charts), discover (component ideals
from sampled points), chow (Segre-class degrees), cli.
"""

__version__ = "0.1.0"
