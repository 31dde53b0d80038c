"""Recognition, construction and drawing of xyz graphs."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import XYZError
from .graph import CubicGraph, OpenCubicGraph
from .recognize import planar_recognize, recognize_xyz
from .surface import ColoredSurface, FaceSet, check_xyz_surface

__all__ = [
    "ColoredSurface",
    "CubicGraph",
    "FaceSet",
    "OpenCubicGraph",
    "XYZError",
    "__version__",
    "check_xyz_surface",
    "planar_recognize",
    "recognize_xyz",
]
