"""Surfaces in the Heisenberg group and their Gans-valued Gauss map."""
from ._backend import BACKEND
from .expr import Expression, Jet3, eval_jet3, parse
from .gans import GansPoint
from .heis import FrameVector, HeisIsometry, HeisPoint
from .surface import catalog

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Expression", "Jet3", "eval_jet3", "parse", "GansPoint",
    "FrameVector", "HeisIsometry", "HeisPoint", "catalog", "__version__",
]
