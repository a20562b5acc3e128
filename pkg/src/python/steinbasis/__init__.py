"""
steinbasis imports
"""

from .feasibility import BudgetError, CoeffSolution, Feasibility, InfeasibleError, SlabSelection
from .levi import FlatPerturbation, Levi, LeviMatrix
from .planes import PlaneUnion, Planes
from .poly import ComplexPoly, Poly4, Scalar
from .retract import FlowTrace, Retract
