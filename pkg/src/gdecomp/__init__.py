"""gdecomp: a workbench for edge-decomposing dense graphs into copies of
a fixed small graph, with verifiable gadget constructions, randomized
near-optimal decomposition, absorption, and exact/fractional/greedy
packing engines."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    degree_gcd,
    is_divisible,
    path_graph,
    rooted_degeneracy,
)

__all__ = [
    "Graph",
    "complete_bipartite",
    "complete_graph",
    "cycle_graph",
    "degree_gcd",
    "is_divisible",
    "path_graph",
    "rooted_degeneracy",
    "__version__",
]
