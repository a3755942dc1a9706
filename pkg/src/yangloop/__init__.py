"""Exact truncated-series toolkit for the correspondence between the current
(Yangian-type) and loop (quantum-affine-type) presentations of the special
linear superalgebra family, with machine checks of its defining identities.
"""

from .gaussian import Coeff
from .series import Series, VarSpec, borel, exp, inverse, inverse_borel, log, sqrt
from .cartan import CartanDatum, build, q_binomial, q_i_series, q_number
from .yangian import NodeRoots, YContext
from .qloop import NodeRootsU
from .drinfeld import DrinfeldResult, HighestWeight, classify
from .suites import SUITES, Report

__all__ = [
    "Coeff", "Series", "VarSpec", "borel", "exp", "inverse", "inverse_borel",
    "log", "sqrt", "CartanDatum", "build", "q_binomial", "q_i_series",
    "q_number", "NodeRoots", "YContext", "NodeRootsU", "DrinfeldResult",
    "HighestWeight", "classify", "SUITES", "Report",
]
