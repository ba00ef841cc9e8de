"""Certified real-root coverings and isolation for sparse polynomials."""

from .dyadic import Dyadic
from .numeric import CoeffOracle, SparsePoly, approx_eval, estimate_tau, make_rational_oracle
from .cover import Covering, isolate, l_covering

__version__ = "0.1.0"
