"""Hilbert geometry on properly convex projective domains."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .projlin import (
    ProjPoint,
    ProjHyperplane,
    ProjMap,
    Spectrum,
    cross_ratio,
    spectrum,
    attracting_subspaces,
    dual_action,
    incidence,
)
from .domain import (
    ConvexBody,
    Chord,
    Frame,
    contains,
    chord,
    supporting_cone,
    boundary_probe,
    space_of_directions,
    benzecri_chart,
    make_example,
)
from .metric import (
    hilbert_distance,
    finsler_norm,
    metric_ball,
    busemann_volume,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "ProjPoint", "ProjHyperplane", "ProjMap", "Spectrum",
    "cross_ratio", "spectrum", "attracting_subspaces", "dual_action", "incidence",
    "ConvexBody", "Chord", "Frame", "contains", "chord", "supporting_cone",
    "boundary_probe", "space_of_directions", "benzecri_chart", "make_example",
    "hilbert_distance", "finsler_norm", "metric_ball", "busemann_volume",
]
