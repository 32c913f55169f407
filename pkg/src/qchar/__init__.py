"""Exact symbolic toolkit for quantum product and character computations.

Everything runs over the rationals with explicit Novikov-variable
truncation; no floating point anywhere.
"""

__version__ = "0.1.0"

from .core import NovikovSeries, Polynomial, VariableSet
from .quotient import AlgebraElement, PresentedAlgebra
from .catalog import ring
from .chern import QuantumChernMap, build_qch
from .parse import ParseError, parse_element, parse_expression

__all__ = [
    "__version__",
    "AlgebraElement",
    "NovikovSeries",
    "ParseError",
    "Polynomial",
    "PresentedAlgebra",
    "QuantumChernMap",
    "VariableSet",
    "build_qch",
    "parse_element",
    "parse_expression",
    "ring",
]
