"""Quantum harmonic analysis on a finite phase-space lattice."""
from .grid import GridFunction, LineGrid, PhaseFunction, PhaseGrid
from .op_core import OperatorMatrix
from .report import ExperimentReport

__all__ = ["GridFunction", "LineGrid", "PhaseFunction", "PhaseGrid", "OperatorMatrix", "ExperimentReport"]
__version__ = "0.1.0"
