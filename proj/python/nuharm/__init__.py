from ._core import (
    GroupElement,
    GroupTag,
    IncompatibleGroups,
    alpha_threshold,
    haar_density,
    identity,
    inverse,
    lower_bound_B,
    modular_function,
    multiply,
    oscillatory_C,
    oscillatory_C_limit,
    parse_group_tag,
    plancherel_sides,
    predicted_exponent,
    schatten_norm,
    sweep_divergence,
)

__all__ = [
    "GroupElement",
    "GroupTag",
    "IncompatibleGroups",
    "alpha_threshold",
    "haar_density",
    "identity",
    "inverse",
    "lower_bound_B",
    "modular_function",
    "multiply",
    "oscillatory_C",
    "oscillatory_C_limit",
    "parse_group_tag",
    "plancherel_sides",
    "predicted_exponent",
    "schatten_norm",
    "sweep_divergence",
]
