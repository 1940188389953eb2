"""Finite simple undirected graphs on nodes ``0..n-1``.

Adjacency is stored row-wise as Python integers used as bitsets: bit ``y`` of
``rows[x]`` is set iff ``x`` and ``y`` are adjacent. The neighbourhood
difference ``Dif(x, y)`` is then ``rows[x] ^ rows[y]`` and ``dif`` a popcount.

Node counts are capped at ``MAX_NODES`` (2**16).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import rng

MAX_NODES = 1 << 16

GRAPH6_HEADER = ">>graph6<<"


class GraphFormatError(ValueError):
    """Raised for malformed graph6 / edge-list input."""


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Ascending list of the set bits of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise ValueError("rows must have length n")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def neighbors(self, x: int) -> list[int]:
        return members(self.rows[x])

    def degree(self, x: int) -> int:
        return self.rows[x].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for x, row in enumerate(self.rows):
            for y in members(row >> (x + 1)):
                yield x, x + 1 + y

    def check_node(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.n):
            raise ValueError(f"node {x!r} out of range for graph on {self.n} nodes")

    def node_mask(self, nodes: Iterable[int]) -> int:
        m = 0
        for v in nodes:
            self.check_node(v)
            m |= 1 << v
        return m

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"node count must be a non-negative integer, got {n!r}")
    if n > MAX_NODES:
        raise ValueError(f"node count {n} exceeds the supported maximum {MAX_NODES}")


def build_graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Graph on ``n`` nodes with the given unordered pairs; duplicates collapse."""
    _check_n(n)
    rows = [0] * n
    for pair in edges:
        x, y = tuple(pair)
        for v in (x, y):
            if not (isinstance(v, (int, np.integer)) and 0 <= v < n):
                raise ValueError(f"edge {pair!r} has node outside 0..{n - 1}")
        x, y = int(x), int(y)
        if x == y:
            raise ValueError(f"loop edge {{{x},{x}}} is not allowed")
        rows[x] |= 1 << y
        rows[y] |= 1 << x
    return Graph(n, tuple(rows))


def from_rows(rows: Iterable[int]) -> Graph:
    """Graph from adjacency bitsets, validating symmetry and irreflexivity."""
    rows = tuple(int(r) for r in rows)
    n = len(rows)
    _check_n(n)
    for x, r in enumerate(rows):
        if r >> n:
            raise ValueError(f"row {x} has bits outside 0..{n - 1}")
        if r >> x & 1:
            raise ValueError(f"row {x} has a loop")
        for y in members(r):
            if not rows[y] >> x & 1:
                raise ValueError(f"adjacency not symmetric at ({x},{y})")
    return Graph(n, rows)


def empty_graph(n: int) -> Graph:
    _check_n(n)
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    _check_n(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << x) for x in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _compress(row: int, nodes: list[int]) -> int:
    out = 0
    for k, v in enumerate(nodes):
        if row >> v & 1:
            out |= 1 << k
    return out


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """``g`` restricted to ``nodes``, relabelled 0.. in ascending original order."""
    order = members(g.node_mask(nodes))
    return Graph(len(order), tuple(_compress(g.rows[v], order) for v in order))


def induced_by_mask(g: Graph, mask: int) -> Graph:
    order = members(mask)
    return Graph(len(order), tuple(_compress(g.rows[v] & mask, order) for v in order))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full ^ r ^ (1 << x) for x, r in enumerate(g.rows)))


def dif_mask(g: Graph, x: int, y: int) -> int:
    return g.rows[x] ^ g.rows[y]


def dif_set(g: Graph, x: int, y: int) -> frozenset[int]:
    """Nodes adjacent to exactly one of ``x``, ``y`` (``x``, ``y`` themselves included)."""
    g.check_node(x)
    g.check_node(y)
    return frozenset(members(g.rows[x] ^ g.rows[y]))


def dif(g: Graph, x: int, y: int) -> int:
    g.check_node(x)
    g.check_node(y)
    return (g.rows[x] ^ g.rows[y]).bit_count()


def pair_order(n: int) -> Iterator[tuple[int, int]]:
    """Upper-triangle pairs in column-major order: (0,1), (0,2), (1,2), (0,3), ..."""
    for j in range(1, n):
        for i in range(j):
            yield i, j


def from_pair_bits(n: int, bits: Iterable[bool]) -> Graph:
    rows = [0] * n
    for (i, j), b in zip(pair_order(n), bits):
        if b:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): one uniform per pair, pairs in column-major upper-triangle order."""
    _check_n(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p!r}")
    gen = rng.generator(seed, rng.GRAPH)
    bits = rng.coins(gen, n * (n - 1) // 2, p)
    return from_pair_bits(n, bits.tolist())


# graph6

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"graph6 size field cannot hold {n}")


def graph6_encode(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for i, j in pair_order(g.n):
        acc = (acc << 1) | (g.rows[i] >> j & 1)
        nbits += 1
        if nbits == 6:
            out.append(chr(acc + 63))
            acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    vals = []
    for ch in s:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
        vals.append(c - 63)
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            raise GraphFormatError("graph6 8-byte size form exceeds the supported node count")
        if len(vals) < 4:
            raise GraphFormatError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        if n <= 62:
            raise GraphFormatError("graph6 long size form used for a small graph")
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    _check_n(n)
    total = n * (n - 1) // 2
    need = (total + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 body has {len(body)} characters, expected {need} for n={n}"
        )
    pad = need * 6 - total
    if pad and body[-1] & ((1 << pad) - 1):
        raise GraphFormatError("nonzero graph6 padding bits")

    def bits() -> Iterator[bool]:
        for v in body:
            for s in range(5, -1, -1):
                yield bool(v >> s & 1)

    return from_pair_bits(n, bits())


def edge_list_decode(text: str) -> Graph:
    """Parse ``"n\\nx y\\n..."``; blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n = int(lines[0])
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphFormatError(f"edge line {ln!r} must have two fields")
            pairs.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(str(exc)) from exc
    try:
        return build_graph(n, pairs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def edge_list_encode(g: Graph) -> str:
    return "".join([f"{g.n}\n"] + [f"{x} {y}\n" for x, y in g.edges()])


def parse_graphs(text: str) -> list[Graph]:
    """Graphs from a file body: an edge list, or graph6 with one graph per line."""
    body = [ln.strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    if not body:
        raise GraphFormatError("no graph found")
    if body[0].split("#", 1)[0].strip().isdigit():
        return [edge_list_decode(text)]
    return [graph6_decode(ln) for ln in body]
