"""General position sets in Cartesian products of graphs.

Thin wrapper over the compiled ``_core`` module. Graphs are given as spec
strings such as ``"P5xC7"`` or ``"K2^10"``; vertices are coordinate lists.
"""

from fractions import Fraction

from . import _core
from ._core import (
    CapExceeded,
    Graph,
    SpecError,
    check,
    choose_M,
    count_maximum_sets,
    cycle_triple,
    cylinder_gp_value,
    cylinder_witness,
    gp,
    gp_box_lower_bound,
    grid_gp_count,
    hamming_lower_bound,
    power_sample,
    torus_gp_bounds,
    torus_witness6,
    torus_witness7,
    verify_paper,
)

__all__ = [
    "CapExceeded",
    "Graph",
    "SpecError",
    "check",
    "choose_M",
    "count_maximum_sets",
    "cycle_triple",
    "cylinder_gp_value",
    "cylinder_witness",
    "gp",
    "gp_box_lower_bound",
    "grid_gp_count",
    "hamming_lower_bound",
    "p_exact",
    "power_sample",
    "torus_gp_bounds",
    "torus_witness6",
    "torus_witness7",
    "verify_paper",
]


def p_exact(spec: str) -> Fraction:
    """Exact probability that a random ordered vertex triple is bad."""
    num, den = _core.p_exact(spec)
    return Fraction(num, den)
