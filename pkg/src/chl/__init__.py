"""Coupled Hall-Littlewood functions, vertex operators and the two-site q-boson model.

All arithmetic is exact over Q(s) with t = s**2 (and q = t, q**(1/2) = s).
"""

__version__ = "0.1.0"

from chl.coeff import RatCoeff, S, T, ONE, ZERO  # noqa: F401
from chl.partitions import Partition  # noqa: F401
