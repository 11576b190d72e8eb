"""Oriented swap process, staircase tableaux and last passage percolation.

Exact check of the generating-function identity behind ``U_n = V_n`` in
distribution, and samplers for comparing the oriented swap process, corner
growth and dual last passage percolation.
"""

__version__ = "0.1.0"
