"""Multigraph toolkit for W4-immersion structure: immersion search, edge cuts,
important separators, edge-sum decomposition and treewidth."""

__version__ = "0.1.0"

from .multigraph import GraphError, Multigraph, is_isomorphic  # noqa: E402
from .formats import GraphFormatError, format_graph, parse_graph  # noqa: E402
from .immersion import (BudgetExhausted, ImmersionModel, contains_w4, find_immersion,  # noqa: E402
                        find_w4, verify_model)

__all__ = [
    "__version__", "GraphError", "GraphFormatError", "Multigraph", "is_isomorphic",
    "format_graph", "parse_graph", "BudgetExhausted", "ImmersionModel", "contains_w4",
    "find_immersion", "find_w4", "verify_model",
]
