"""Subpath planning via an SPP-to-TSP transform, triangle repair and a 2-approximation."""

from .cspp import run_cspp, solve_cspp
from .exact import enumerate_all, solve_exact
from .ga import GaConfig, run_ga
from .solution import Orientation, SppSolution
from .workspace import Point, Subpath, Workspace, generate_random_workspace, load_workspace, save_workspace

__all__ = [
    "Orientation",
    "Point",
    "SppSolution",
    "Subpath",
    "Workspace",
    "GaConfig",
    "enumerate_all",
    "generate_random_workspace",
    "load_workspace",
    "run_cspp",
    "run_ga",
    "save_workspace",
    "solve_cspp",
    "solve_exact",
]
