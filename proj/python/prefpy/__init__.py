"""Observer placement and diffusion-source localization.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it.
"""

from ._core import (
    Graph,
    erdos_renyi,
    evaluate,
    evaluate_sequence,
    grid,
    hub_removal_threshold,
    hub_sequence,
    jordan_center,
    localize,
    optimize,
    order_parameter,
    path,
    random_removal_threshold,
    removal_profile,
    ring,
    scale_free,
    simulate,
    star,
)

__all__ = [
    "Graph",
    "erdos_renyi",
    "evaluate",
    "evaluate_sequence",
    "grid",
    "hub_removal_threshold",
    "hub_sequence",
    "jordan_center",
    "localize",
    "optimize",
    "order_parameter",
    "path",
    "random_removal_threshold",
    "removal_profile",
    "ring",
    "scale_free",
    "simulate",
    "star",
]
