"""Blow-ups of Ramsey graphs and random search for Ramsey witnesses."""

from __future__ import annotations

from . import rng
from .graph import Graph, complement, from_pair_bits
from .ramsey import has_homogeneous, max_clique


def blowup(h: Graph, m: int) -> Graph:
    """Replace node i of ``h`` by the independent fiber {m*i, ..., m*i + m - 1}.

    Two nodes are adjacent iff their fibers come from adjacent base nodes.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"multiplicity must be a positive integer, got {m!r}")
    fiber = (1 << m) - 1
    rows = []
    for i in range(h.n):
        r = 0
        for j in h.neighbors(i):
            r |= fiber << (m * j)
        rows.extend([r] * m)
    return Graph(h.n * m, tuple(rows))


def fiber_of(node: int, m: int) -> int:
    return node // m


def blowup_iso_bound(h: Graph, m: int) -> int:
    """(m + 1) ** n: an induced subgraph is fixed up to isomorphism by its fiber sizes."""
    return (m + 1) ** h.n


def fiber_profile(mask: int, n: int, m: int) -> tuple[int, ...]:
    fiber = (1 << m) - 1
    return tuple(((mask >> (m * i)) & fiber).bit_count() for i in range(n))


def blowup_rm_transfer(h: Graph, m: int, r1: int, r2: int) -> bool:
    """True iff blowup(h, m) has no clique on r1 nodes and no independent set on m*r2 nodes."""
    g = blowup(h, m)
    no_clique = len(max_clique(g, target=r1)) < r1
    no_indep = len(max_clique(complement(g), target=m * r2)) < m * r2
    return no_clique and no_indep


def search_ramsey_witness(n: int, r: int, trials: int, seed: int) -> tuple[Graph, int] | None:
    """First G(n, 1/2) sample with Rm(G) < r, as ``(graph, trial index)``; None if none found.

    Trial ``t`` draws from stream ``(seed, WITNESS_SEARCH, t)``.
    """
    pairs = n * (n - 1) // 2
    for t in range(trials):
        bits = rng.coins(rng.generator(seed, rng.WITNESS_SEARCH, t), pairs, 0.5)
        g = from_pair_bits(n, bits.tolist())
        if not has_homogeneous(g, r):
            return g, t
    return None
