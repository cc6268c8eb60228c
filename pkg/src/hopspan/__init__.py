"""Sparse k-hop spanners of unit disk graphs."""
from .geometry import Point2D, PointSet, SpannerGraph, UnitDiskGraph, udg_build
from .spanners import BUILDERS, build_circle_hop4, build_hop2, build_hop3, build_hop5
from .verify import audit_bounds, hop_stretch, is_plane

__version__ = "0.1.0"
__all__ = ["Point2D", "PointSet", "SpannerGraph", "UnitDiskGraph", "udg_build", "BUILDERS",
           "build_hop5", "build_hop3", "build_hop2", "build_circle_hop4", "audit_bounds",
           "hop_stretch", "is_plane"]
