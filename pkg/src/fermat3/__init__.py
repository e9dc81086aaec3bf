"""Cubic Fermat points in ring class fields, via 3-adic periodic points.

The library computes iterated resultants of the correspondence
g(x, y) = (y^2+3y+9)x^3 - (y+6)^3, the polynomials p_d, q_d, m_d attached
to discriminants -d with d = 2 mod 3, ring class polynomials, traces of
Heegner-type points on E: Y^2 - 9Y = X^3 - 27, and the formal group of E.
"""

__version__ = "0.1.0"
