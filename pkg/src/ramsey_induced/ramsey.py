"""Homogeneous sets: exact Rm(G) and Bipartite(G), Ramsey thresholds, greedy extraction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import Graph, complement, induced_by_mask, members

CLIQUE = "clique"
INDEPENDENT = "independent"

DEFAULT_RM_CAP = 512
DEFAULT_BIPARTITE_CAP = 16
EXHAUSTIVE_BLOCK_LIMIT = 20

# exhaustively verified minimal m2 with m2 -> (m)^2_2
EXACT_DIAGONAL = {1: 1, 2: 2, 3: 6}


class SearchCapError(ValueError):
    pass


@dataclass(frozen=True)
class HomogeneousSet:
    kind: str
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in (CLIQUE, INDEPENDENT):
            raise ValueError(f"unknown kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.members)

    def holds_in(self, g: Graph) -> bool:
        """Re-check homogeneity from the graph alone."""
        if len(set(self.members)) != len(self.members):
            return False
        if any(not (isinstance(v, int) and 0 <= v < g.n) for v in self.members):
            return False
        want = self.kind == CLIQUE
        return all(g.has_edge(x, y) == want for x, y in itertools.combinations(self.members, 2))


def _greedy_color_order(rows: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Vertices of ``cand`` grouped into colour classes; returns (order, colour numbers)."""
    order: list[int] = []
    colors: list[int] = []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~rows[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique(g: Graph, within: int | None = None, target: int | None = None) -> list[int]:
    """A maximum clique of ``g`` (restricted to the node mask ``within``).

    Branch and bound with greedy-colouring bounds. With ``target`` the search
    stops as soon as a clique of that size is found.
    """
    cand = g.full_mask if within is None else within
    if not cand:
        return []
    # relabel by descending degree inside cand so low bits are pivots of high degree
    verts = members(cand)
    verts.sort(key=lambda v: (-(g.rows[v] & cand).bit_count(), v))
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for u in members(g.rows[v] & cand):
            r |= 1 << pos[u]
        rows.append(r)

    best: list[int] = [0]
    stop = target if target is not None else len(verts) + 1
    if stop <= 1:
        return [verts[0]]
    current: list[int] = []

    def expand(p: int) -> bool:
        nonlocal best
        order, colors = _greedy_color_order(rows, p)
        for k in range(len(order) - 1, -1, -1):
            if len(current) + colors[k] <= len(best):
                return False
            v = order[k]
            current.append(v)
            np_ = p & rows[v]
            if np_:
                if expand(np_):
                    return True
            elif len(current) > len(best):
                best = list(current)
                if len(best) >= stop:
                    return True
            current.pop()
            p &= ~(1 << v)
        return False

    expand((1 << len(verts)) - 1)
    return sorted(verts[i] for i in best)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    return len(max_clique(complement(g)))


def rm_number(g: Graph, cap: int = DEFAULT_RM_CAP) -> tuple[int, HomogeneousSet]:
    """Rm(G) = max(clique number, independence number), with a witness (ties go to the clique)."""
    if g.n > cap:
        raise SearchCapError(f"exact Rm search is capped at n={cap}, got n={g.n}")
    clique = max_clique(g)
    indep = max_clique(complement(g))
    if len(clique) >= len(indep):
        return len(clique), HomogeneousSet(CLIQUE, tuple(clique))
    return len(indep), HomogeneousSet(INDEPENDENT, tuple(indep))


def has_homogeneous(g: Graph, r: int) -> bool:
    """True iff ``g`` has a clique or an independent set on ``r`` nodes."""
    if r <= 0:
        return True
    return len(max_clique(g, target=r)) >= r or len(max_clique(complement(g), target=r)) >= r


def bipartite_rm(g: Graph, cap: int = DEFAULT_BIPARTITE_CAP) -> tuple[int, frozenset[int], frozenset[int]]:
    """Largest k with disjoint k-sets A1, A2 whose cross pairs are all edges or all non-edges."""
    if g.n > cap:
        raise SearchCapError(f"Bipartite(G) brute force is capped at n={cap}, got n={g.n}")
    full = g.full_mask
    for k in range(g.n // 2, 0, -1):
        for a1 in itertools.combinations(range(g.n), k):
            a1mask = 0
            common = full
            common_non = full
            for v in a1:
                a1mask |= 1 << v
                common &= g.rows[v]
                common_non &= ~g.rows[v]
            for pool in (common & ~a1mask, common_non & full & ~a1mask):
                if pool.bit_count() >= k:
                    return k, frozenset(a1), frozenset(members(pool)[:k])
    return 0, frozenset(), frozenset()


def es_bound(r1: int, r2: int) -> int:
    """C(r1+r2-2, r1-1): every graph on this many nodes has a K_r1 or an independent r2-set."""
    if not (isinstance(r1, int) and isinstance(r2, int)) or r1 < 1 or r2 < 1:
        raise ValueError(f"es_bound needs integers r1, r2 >= 1, got {r1!r}, {r2!r}")
    return math.comb(r1 + r2 - 2, r1 - 1)


def diagonal_ramsey(m: int, table: Mapping[int, int] | None = None) -> int:
    """A valid m2 with m2 -> (m)^2_2: exact for m <= 3, the Erdős–Szekeres bound beyond.

    ``table`` entries take precedence and are trusted as given.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"diagonal_ramsey needs an integer m >= 1, got {m!r}")
    if table and m in table:
        return int(table[m])
    if m in EXACT_DIAGONAL:
        return EXACT_DIAGONAL[m]
    return es_bound(m, m)


def ramsey_extract(g: Graph, r1: int, r2: int) -> HomogeneousSet | None:
    """Clique of size r1 or independent set of size r2 by iterated pivoting, or None.

    The lowest remaining node is the pivot; the search continues in its
    neighbourhood (pivot joins the clique side) or its non-neighbourhood
    (pivot joins the independent side), whichever meets its Erdős–Szekeres
    budget. Below the threshold the side with the larger budget ratio wins,
    ties to the neighbourhood. Never fails when n >= es_bound(r1, r2).
    """
    if r1 < 1 or r2 < 1:
        raise ValueError("budgets must be >= 1")
    clique: list[int] = []
    indep: list[int] = []
    cand = g.full_mask
    while True:
        if len(clique) >= r1:
            return HomogeneousSet(CLIQUE, tuple(sorted(clique)))
        if len(indep) >= r2:
            return HomogeneousSet(INDEPENDENT, tuple(sorted(indep)))
        if not cand:
            return None
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        nbr = cand & g.rows[v]
        non = cand & ~g.rows[v]
        a = r1 - len(clique)
        b = r2 - len(indep)
        if a == 1:
            go_clique = True
        elif b == 1:
            go_clique = False
        else:
            t_nbr = es_bound(a - 1, b)
            t_non = es_bound(a, b - 1)
            s_nbr, s_non = nbr.bit_count(), non.bit_count()
            if s_nbr >= t_nbr:
                go_clique = True
            elif s_non >= t_non:
                go_clique = False
            else:
                go_clique = s_nbr * t_non >= s_non * t_nbr
        if go_clique:
            clique.append(v)
            cand = nbr
        else:
            indep.append(v)
            cand = non


def homogeneous_block(g: Graph, nodes: Iterable[int] | int, m: int, exhaustive: bool = False) -> HomogeneousSet | None:
    """An m-subset of ``nodes`` that is homogeneous in ``g``, or None.

    Greedy extraction first; exact search when it fails and either the pool
    has at most 20 nodes or ``exhaustive`` is requested.
    """
    if m < 1:
        raise ValueError("block size must be >= 1")
    mask = nodes if isinstance(nodes, int) else g.node_mask(nodes)
    pool = members(mask)
    if len(pool) < m:
        return None
    if m == 1:
        return HomogeneousSet(CLIQUE, (pool[0],))
    sub = induced_by_mask(g, mask)
    found = ramsey_extract(sub, m, m)
    if found is None and (len(pool) <= EXHAUSTIVE_BLOCK_LIMIT or exhaustive):
        c = max_clique(sub, target=m)
        if len(c) >= m:
            found = HomogeneousSet(CLIQUE, tuple(c))
        else:
            i = max_clique(complement(sub), target=m)
            if len(i) >= m:
                found = HomogeneousSet(INDEPENDENT, tuple(i))
    if found is None:
        return None
    picked = sorted(found.members)[:m]
    return HomogeneousSet(found.kind, tuple(pool[k] for k in picked))


def alon_hajnal_log2(n: float, t: float) -> float:
    """log2 of the baseline 2^(n / (2 * t^(20 * log2(2t))))."""
    if n < 1 or t < 1:
        raise ValueError("n and t must be >= 1")
    log2_den = 1.0 + 20.0 * math.log2(2 * t) * math.log2(t)
    return n * 2.0 ** -log2_den  # underflows quietly to 0.0


def alon_hajnal_bound(n: float, t: float) -> float:
    """Evaluate the comparison bound on I(G); 1.0 once the exponent underflows, inf on overflow."""
    e = alon_hajnal_log2(n, t)
    try:
        return 2.0 ** e
    except OverflowError:
        return math.inf
