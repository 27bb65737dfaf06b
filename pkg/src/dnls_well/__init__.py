"""Soliton and potential-well toolkit for a derivative NLS with quintic term."""

from .field import Field, Grid, load_field, make_grid, save_field
from .solitons import ModelParams, RegionError, SolitonParams

__all__ = [
    "Field",
    "Grid",
    "load_field",
    "make_grid",
    "save_field",
    "ModelParams",
    "RegionError",
    "SolitonParams",
]

__version__ = "0.1.0"
