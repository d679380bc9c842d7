"""
Certified edge decompositions of graphs into paths and cycles.

Every driver returns a decomposition that has already passed the checker
and meets its bound: floor(n/2) paths or floor((n-1)/2) cycles.
"""

from edgedecomp.gallai_tw3 import decompose_paths_tw3
from edgedecomp.graph import Decomposition, Graph, VertexCycle, VertexPath, verify_decomposition
from edgedecomp.hajos_tw3 import decompose_cycles_tw3
from edgedecomp.maxdeg4 import decompose_cycles_maxdeg4, decompose_paths_maxdeg4
from edgedecomp.planar6 import decompose_paths_planar6

__all__ = [
    "Decomposition",
    "Graph",
    "VertexCycle",
    "VertexPath",
    "decompose_cycles_maxdeg4",
    "decompose_cycles_tw3",
    "decompose_paths_maxdeg4",
    "decompose_paths_planar6",
    "decompose_paths_tw3",
    "verify_decomposition",
]
