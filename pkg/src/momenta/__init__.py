"""Exact symbolic verification of classical, infinitesimal and quantum momentum maps."""

from .errors import MomentaError
from .hscalar import HScalar
from .liebialg import Cobracket, LieAlgebra, LieBialgebra
from .poissongeo import OneForm, PoissonStructure, TwoForm, VectorField
from .quantumgroup import DeformedCoproduct, Presentation, TensorElement, UElement
from .report import CheckResult, Report
from .starprod import BidiffOperator, ExplicitStar, HbarSeries, MoyalStar, StarProduct
from .symexpr import Polynomial, Rational, RatFunc, parse_expr

__all__ = [
    "BidiffOperator",
    "CheckResult",
    "Cobracket",
    "DeformedCoproduct",
    "ExplicitStar",
    "HScalar",
    "HbarSeries",
    "LieAlgebra",
    "LieBialgebra",
    "MomentaError",
    "MoyalStar",
    "OneForm",
    "Polynomial",
    "PoissonStructure",
    "Presentation",
    "RatFunc",
    "Rational",
    "Report",
    "StarProduct",
    "TensorElement",
    "TwoForm",
    "UElement",
    "VectorField",
    "parse_expr",
]

__version__ = "0.1.0"
