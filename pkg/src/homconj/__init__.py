"""Word problems and conjugacy in homogeneous and multihomogeneous monoids."""

from .kernels import BACKEND
from .words import Alphabet, format_word, parse_word

__version__ = "0.1.0"

__all__ = ["Alphabet", "BACKEND", "format_word", "parse_word", "__version__"]
