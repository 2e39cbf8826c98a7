"""Exact computational topology of curves and multicurve graphs on surfaces.

Curves on a surface are handled as conjugacy classes of fundamental-group
words; the geometry (intersection numbers, cutting, projections) is computed
by tracing geodesic representatives through a hyperbolically realized
triangulation of the surface.  Surfaces with punctures use exact rational
arithmetic; closed surfaces are modeled exactly through the hyperelliptic
double cover of a punctured sphere.
"""

__version__ = "0.1.0"

ATLAS_VERSION = 1

from .surface import (  # noqa: E402
    ATLAS_TYPES, SurfaceType, Surface, Curve, Multicurve, Subsurface,
    CurvePool, FillsSurface, UnknownGenerator, BudgetExceeded,
    as_multicurve, get_surface,
)
from .normal import MatchingViolation, PeripheralComponent  # noqa: E402

__all__ = [
    "ATLAS_VERSION", "ATLAS_TYPES", "SurfaceType", "Surface", "Curve",
    "Multicurve", "Subsurface", "CurvePool", "FillsSurface",
    "UnknownGenerator", "BudgetExceeded", "MatchingViolation",
    "PeripheralComponent", "as_multicurve", "get_surface",
]

