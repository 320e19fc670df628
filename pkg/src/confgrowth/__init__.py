"""Exact computations for finite growth representations of infinite rank
subalgebras of the general Lie conformal algebra gc1."""

from .characters import BCWeight, GenWeight, NegPartition, Partition
from .conformal import SubalgebraTag, lambda_bracket
from .diffops import DdtForm, DiffOp
from .exact_poly import Poly, QSeries, UnivarPoly, XSeries
from .glinf import BandedMat, FinMat, RmPoly

__all__ = [
    "BCWeight",
    "BandedMat",
    "DdtForm",
    "DiffOp",
    "FinMat",
    "GenWeight",
    "NegPartition",
    "Partition",
    "Poly",
    "QSeries",
    "RmPoly",
    "SubalgebraTag",
    "UnivarPoly",
    "XSeries",
    "lambda_bracket",
]
__version__ = "0.1.0"
