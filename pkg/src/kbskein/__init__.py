"""Exact Kauffman bracket skein algebras of surfaces with boundary.

Curves are handled combinatorially through a cutting system that opens the
surface into a polygon.  The package computes brackets of stacked products,
rewrites multicurves as polynomials in a finite generating set, and finds
the low-degree relations among those generators.
"""

__version__ = "0.1.0"
