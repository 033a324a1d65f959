"""
flagalg: exact computations with Weyl group combinatorics, point counts
of intersections of opposite Bruhat cells, coinvariant-algebra
endomorphism algebras, graded module categories and dg-algebra formality,
all over small prime fields and l-local integers.
"""

__version__ = "0.1.0"
