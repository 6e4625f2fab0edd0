"""Graph sandwich problems solved, reduced and cross-checked as CSPs."""

from .core import (
    NO,
    ColouredGraph,
    CompletionYes,
    FiniteStructure,
    Graph,
    HomYes,
    No,
    SandwichInstance,
    StructureInstance,
    is_yes,
    make_instance,
    undetermined_pairs,
)
from .errors import (
    BudgetExceeded,
    OverlapError,
    ParseError,
    RangeError,
    SandwichError,
    SignatureError,
    SizeError,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NO",
    "BudgetExceeded",
    "ColouredGraph",
    "CompletionYes",
    "FiniteStructure",
    "Graph",
    "HomYes",
    "No",
    "OverlapError",
    "ParseError",
    "RangeError",
    "SandwichError",
    "SandwichInstance",
    "SignatureError",
    "SizeError",
    "StructureInstance",
    "is_yes",
    "make_instance",
    "undetermined_pairs",
]
