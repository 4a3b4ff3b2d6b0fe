"""Exact computer-algebra workbench for simple surface singularities.

Builds root systems, Klein invariants, McKay quiver moment maps, flat
coordinates and the explicit deformation families of the inhomogeneous
simple singularities (types B, C, F4, G2), together with their quotient
families, and verifies every construction exactly.
"""

__version__ = "0.1.0"
