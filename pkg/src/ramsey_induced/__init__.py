"""Induced-subgraph richness versus homogeneous sets, as an executable pipeline.

Given a finite graph, either certify that it has exponentially many pairwise
non-isomorphic induced subgraphs, or extract a large clique / independent set.
Exact small-scale oracles (I(G), Rm(G), Bipartite(G)) back every claim.
"""

from .graph import Graph, build_graph, complement, dif, dif_set, induced_subgraph, random_graph
from .graph import graph6_decode, graph6_encode

__all__ = [
    "Graph",
    "build_graph",
    "complement",
    "dif",
    "dif_set",
    "induced_subgraph",
    "random_graph",
    "graph6_decode",
    "graph6_encode",
]

__version__ = "0.1.0"
