"""Exact incremental Open CAD with Lazard projection."""

from .engine import CadState, add, build, dumps, load, loads, locate, save, sign_vector
from .errors import CadError
from .poly import Polynomial, PolySet, VarOrder, parse_polynomial

__all__ = [
    "CadState",
    "CadError",
    "Polynomial",
    "PolySet",
    "VarOrder",
    "add",
    "build",
    "dumps",
    "load",
    "loads",
    "locate",
    "parse_polynomial",
    "save",
    "sign_vector",
]
