"""Quadrature on curved domains through signed cell decompositions."""

import json
import os

import numpy as np

from . import _foldquad
from ._foldquad import GeometryError, NumericalError, SchemaError, gauss_legendre, min_points_exact, presets, set_jobs

__all__ = [
    "GeometryError",
    "NumericalError",
    "SchemaError",
    "decompose",
    "gauss_legendre",
    "integrate",
    "measure",
    "min_points_exact",
    "presets",
    "quadrature",
    "set_jobs",
    "verify",
]


def _source(geometry):
    # Preset names, file paths and JSON text go through unchanged; dicts are serialized.
    if isinstance(geometry, dict):
        return json.dumps(geometry)
    if isinstance(geometry, os.PathLike):
        return os.fspath(geometry)
    return geometry


def _seed(seed):
    return None if seed is None else [float(c) for c in seed]


def decompose(geometry, strategy="min-cells", seed=None):
    """Cells and sign classes of a decomposition, as a dict (a list of them for element files)."""
    return json.loads(_foldquad.decompose(_source(geometry), strategy, _seed(seed)))


def quadrature(geometry, n, grid=8, strategy="min-cells", seed=None):
    """Points and signed weights. 2D regions are immersed in a grid x grid background mesh."""
    return _foldquad.quadrature(_source(geometry), n, grid, strategy, _seed(seed))


def integrate(geometry, f, n, grid=8, strategy="min-cells", seed=None):
    """Integral of a vectorized f(x, y[, z]) using the exported rule."""
    q = quadrature(geometry, n, grid, strategy, seed)
    return float(np.dot(f(*q["points"].T), q["weights"]))


def verify(geometry, samples=500, max_degree=4):
    return json.loads(_foldquad.verify(_source(geometry), samples, max_degree))


def measure(geometry):
    return _foldquad.measure(_source(geometry))
