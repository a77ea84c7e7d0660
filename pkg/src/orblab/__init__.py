"""Crossing-free boundary labeling of point features in a disk."""

from .geometry import LeaderStyle, PolarPoint, Port
from .instance import Distribution, Feature, GeneratorConfig, Instance, generate, generate_corpus, validate
from .labeling import Labeling, SolveReport, count_crossings, place_from_order, total_leader_length
from .model_export import build_model, build_or_mip, build_sl_qip
from .render import RenderStyle, render_svg
from .solver_nonuniform import (
    HeuristicConfig,
    HeuristicFailure,
    Infeasible,
    TimedOut,
    solve_exact,
    solve_heuristic,
)
from .solver_uniform import solve_uniform

__all__ = [
    "Distribution",
    "Feature",
    "GeneratorConfig",
    "HeuristicConfig",
    "HeuristicFailure",
    "Infeasible",
    "Instance",
    "Labeling",
    "LeaderStyle",
    "PolarPoint",
    "Port",
    "RenderStyle",
    "SolveReport",
    "TimedOut",
    "build_model",
    "build_or_mip",
    "build_sl_qip",
    "count_crossings",
    "generate",
    "generate_corpus",
    "place_from_order",
    "render_svg",
    "solve_exact",
    "solve_heuristic",
    "solve_uniform",
    "total_leader_length",
    "validate",
]
