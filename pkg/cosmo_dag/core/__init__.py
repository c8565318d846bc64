"""
Core components of cosmo_dag - graphs, orientations and errors
"""

from .errors import (
    CosmoError,
    CyclicGraphError,
    InvalidConfigError,
    InvalidInputError,
    NumericalAbortError,
    ShapeMismatchError,
    UndefinedMetricError,
)
from .graph import (
    TopologicalSort,
    arcs,
    expm_taylor,
    from_arcs,
    is_dag,
    notears_h,
    support,
    threshold,
    topological_order,
)
from .orientation import (
    OrientationConfig,
    acyclicity_upper_bound,
    compose,
    direct_gradient,
    hard_orientation,
    init_priority,
    priority_differences,
    priority_from_order,
    priority_gradient,
    relu_orientation,
    smooth_orientation,
    tempered_sigmoid,
)

__all__ = [
    "CosmoError",
    "CyclicGraphError",
    "InvalidConfigError",
    "InvalidInputError",
    "NumericalAbortError",
    "ShapeMismatchError",
    "UndefinedMetricError",
    "TopologicalSort",
    "arcs",
    "expm_taylor",
    "from_arcs",
    "is_dag",
    "notears_h",
    "support",
    "threshold",
    "topological_order",
    "OrientationConfig",
    "acyclicity_upper_bound",
    "compose",
    "direct_gradient",
    "hard_orientation",
    "init_priority",
    "priority_differences",
    "priority_from_order",
    "priority_gradient",
    "relu_orientation",
    "smooth_orientation",
    "tempered_sigmoid",
]
