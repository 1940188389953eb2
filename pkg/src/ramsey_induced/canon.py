"""Canonical forms, pinned (vertex-coloured) isomorphism and the exact I(G) oracle.

Canonical labelling is individualization-refinement: an ordered partition is
refined to an equitable one, the first non-singleton cell is individualized
vertex by vertex, and the lexicographically largest relabelled adjacency
among the leaves is the certificate. Automorphisms discovered at equal leaves
prune the tree (orbit pruning plus the usual jump back to the divergence
node), which keeps highly symmetric inputs such as empty graphs, cliques or
blow-ups polynomial.

Forms are ``bytes``: a one-byte tag (``G`` plain, ``P`` pinned), the node
count, the pin count for pinned forms, then the upper-triangle adjacency bits
of the canonical relabelling. Plain and pinned forms never collide.
"""

from __future__ import annotations

import struct
import sys
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import rng
from .graph import Graph, induced_by_mask, members, pair_order

DEFAULT_ENUMERATION_CAP = 16

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class PinnedGraph:
    """A graph with an ordered tuple of distinguished nodes.

    Isomorphisms between pinned graphs must send pin ``k`` to pin ``k``.
    """

    graph: Graph
    pins: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.pins)) != len(self.pins):
            raise ValueError("pins must be distinct")
        for p in self.pins:
            self.graph.check_node(p)


class _Cell:
    __slots__ = ("verts", "alive")

    def __init__(self, verts: list[int]):
        self.verts = verts
        self.alive = True


def refine(rows: Sequence[int], cells: list[list[int]], splitters: Iterable[int] | None = None) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    ``splitters`` lists indices of the cells to use as initial splitters
    (all cells when omitted). Fragments of a split cell keep the cell's
    position and are ordered by ascending neighbour count, so the result
    depends only on the structure, never on vertex names.
    """
    part = [_Cell(list(c)) for c in cells]
    n = sum(len(c.verts) for c in part)
    idx = range(len(part)) if splitters is None else splitters
    queue = deque(part[i] for i in idx)
    while queue and len(part) < n:
        w = queue.popleft()
        if not w.alive:
            continue
        wmask = 0
        for v in w.verts:
            wmask |= 1 << v
        new_part = []
        for x in part:
            if len(x.verts) == 1:
                new_part.append(x)
                continue
            buckets: dict[int, list[int]] = {}
            for v in x.verts:
                buckets.setdefault((rows[v] & wmask).bit_count(), []).append(v)
            if len(buckets) == 1:
                new_part.append(x)
                continue
            x.alive = False
            for k in sorted(buckets):
                frag = _Cell(buckets[k])
                new_part.append(frag)
                queue.append(frag)
        part = new_part
    return [c.verts for c in part]


def _leaf_certificate(rows: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    cert = []
    for v in order:
        r = 0
        for u in members(rows[v]):
            r |= 1 << pos[u]
        cert.append(r)
    return tuple(cert)


class _Search:
    def __init__(self, rows: Sequence[int]):
        self.rows = rows
        self.first: tuple[tuple[int, ...], list[int]] | None = None
        self.best: tuple[tuple[int, ...], list[int], list[int]] | None = None
        self.auts: list[dict[int, int]] = []

    @staticmethod
    def _common_prefix(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def _leaf(self, cells: list[list[int]], path: list[int]) -> int | None:
        order = [c[0] for c in cells]
        cert = _leaf_certificate(self.rows, order)
        if self.first is None:
            self.first = (cert, list(path))
            self.best = (cert, order, list(path))
            self._first_order = order
            return None
        assert self.best is not None
        if cert == self.first[0]:
            self.auts.append(dict(zip(self._first_order, order)))
            return self._common_prefix(path, self.first[1])
        if cert == self.best[0]:
            self.auts.append(dict(zip(self.best[1], order)))
            return self._common_prefix(path, self.best[2])
        if cert > self.best[0]:
            self.best = (cert, order, list(path))
        return None

    def _orbit_closure(self, seeds: set[int], path: list[int]) -> set[int]:
        gens = [g for g in self.auts if all(g.get(v, v) == v for v in path)]
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            v = stack.pop()
            for g in gens:
                w = g.get(v, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def _uniform(self, cells: list[list[int]]) -> bool:
        """Every cell pair (and every cell) is all-edges or no-edges.

        Then individualizing never splits anything again, every leaf below
        has the same certificate, and one of them stands for the subtree.
        """
        masks = [sum(1 << v for v in c) for c in cells]
        for c in cells:
            if len(c) == 1:
                continue
            row = self.rows[c[0]]
            for d, dm in zip(cells, masks):
                k = (row & dm).bit_count()
                full = len(d) - 1 if d is c else len(d)
                if k not in (0, full):
                    return False
        return True

    def run(self, cells: list[list[int]], path: list[int]) -> int | None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._leaf(cells, path)
        if self._uniform(cells):
            return self._leaf([[v] for c in cells for v in sorted(c)], path)
        depth = len(path)
        explored: set[int] = set()
        for v in sorted(cells[target]):
            if explored and v in self._orbit_closure(explored, path):
                continue
            explored.add(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            child = refine(self.rows, child, [target])
            jump = self.run(child, path + [v])
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_labeling(g: Graph, cells: list[list[int]] | None = None) -> tuple[tuple[int, ...], list[int]]:
    """Return ``(certificate, order)``. ``order[i]`` is the node placed at position ``i``."""
    if g.n == 0:
        return (), []
    if cells is None:
        cells = [list(range(g.n))]
    cells = [c for c in cells if c]
    start = refine(g.rows, cells)
    search = _Search(g.rows)
    search.run(start, [])
    assert search.best is not None
    return search.best[0], search.best[1]


def _pack(tag: bytes, n: int, extra: int | None, cert: tuple[int, ...]) -> bytes:
    head = tag + struct.pack(">I", n) + (b"" if extra is None else struct.pack(">I", extra))
    acc = 0
    nbits = 0
    for i, j in pair_order(n):
        acc = (acc << 1) | (cert[i] >> j & 1)
        nbits += 1
    if nbits % 8:
        acc <<= 8 - nbits % 8
    return head + acc.to_bytes((nbits + 7) // 8, "big")


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    cert, _ = canonical_labeling(g)
    return _pack(b"G", g.n, None, cert)


def pinned_canonical_form(pg: PinnedGraph) -> bytes:
    """Form equal iff an isomorphism exists sending pin ``k`` to pin ``k`` for every ``k``."""
    g = pg.graph
    pinned = set(pg.pins)
    cells = [[p] for p in pg.pins] + [[v for v in range(g.n) if v not in pinned]]
    cert, _ = canonical_labeling(g, cells)
    return _pack(b"P", g.n, len(pg.pins), cert)


def form_hex(form: bytes) -> str:
    return form.hex()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(map(int.bit_count, g.rows)) != sorted(map(int.bit_count, h.rows)):
        return False
    return canonical_form(g) == canonical_form(h)


class EnumerationCapError(ValueError):
    pass


def count_induced_iso_classes(g: Graph, cap: int = DEFAULT_ENUMERATION_CAP, with_representatives: bool = False):
    """Exact I(G): isomorphism classes among all 2**n induced subgraphs.

    The empty subgraph counts as one class. With ``with_representatives`` a
    pair ``(count, reps)`` is returned where ``reps`` holds one node set per
    class (the first in increasing bitmask order).
    """
    if g.n > cap:
        raise EnumerationCapError(
            f"exact I(G) enumerates 2**n subsets; n={g.n} exceeds the cap {cap}. "
            "Use sampled_iso_lower_bound for a lower bound instead."
        )
    seen: dict[bytes, int] = {}
    memo: dict[tuple[int, ...], bytes] = {}  # many subsets induce the same labelled graph
    for mask in range(1 << g.n):
        h = induced_by_mask(g, mask)
        form = memo.get(h.rows)
        if form is None:
            form = memo[h.rows] = canonical_form(h)
        if form not in seen:
            seen[form] = mask
    if with_representatives:
        return len(seen), [frozenset(members(m)) for m in seen.values()]
    return len(seen)


def sampled_iso_lower_bound(g: Graph, samples: int, seed: int) -> int:
    """Lower bound on I(G) from canonical forms of uniformly random node subsets.

    This is a bound, never an estimate of I(G) itself.
    """
    gen = rng.generator(seed, rng.SUBSET_SAMPLING)
    seen = set()
    for _ in range(samples):
        seen.add(canonical_form(induced_by_mask(g, rng.random_bits(gen, g.n))))
    return len(seen)
