"""Distinguishing sets and the neighbourhood-trace partition they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .. import rng
from ..canon import PinnedGraph
from ..graph import Graph, induced_by_mask, mask_of, members
from .constants import Constants


@dataclass(frozen=True)
class NeighborhoodPartition:
    """Classes of V \\ A under equal A-neighbourhood trace, ordered by smallest member."""

    A: frozenset[int]
    classes: tuple[frozenset[int], ...]

    @property
    def ell(self) -> int:
        return len(self.classes)

    @property
    def a_mask(self) -> int:
        return mask_of(self.A)

    def class_masks(self) -> list[int]:
        return [mask_of(c) for c in self.classes]


@dataclass
class SamplingAttempt:
    index: int
    size: int
    size_ok: bool
    max_dif: int
    dif_ok: bool

    @property
    def ok(self) -> bool:
        return self.size > 0 and self.size_ok and self.dif_ok


@dataclass
class SamplingResult:
    A: frozenset[int] | None
    size_limit: int
    dif_limit: float
    attempts: list[SamplingAttempt] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.A is not None


def size_limit(c: Constants, n: int) -> int:
    return math.ceil(float(c.c3) * n / math.log2(n))


def dif_limit(c: Constants, n: int) -> float:
    return float(c.c4) * math.log2(n) ** 2


def trace_groups(g: Graph, a_mask: int, nodes: int | None = None) -> dict[int, list[int]]:
    """Nodes (of ``nodes``, default all) keyed by their A-neighbourhood trace."""
    groups: dict[int, list[int]] = {}
    for v in members(g.full_mask if nodes is None else nodes):
        groups.setdefault(g.rows[v] & a_mask, []).append(v)
    return groups


def max_equivalent_dif(g: Graph, a_mask: int) -> int:
    """Largest dif(x, y) over pairs x != y with the same A-trace (0 if none)."""
    worst = 0
    for group in trace_groups(g, a_mask).values():
        for i, x in enumerate(group):
            rx = g.rows[x]
            for y in group[i + 1:]:
                d = (rx ^ g.rows[y]).bit_count()
                if d > worst:
                    worst = d
    return worst


def _size_weights(n: int, p: float, limit: int) -> list[float]:
    """Binomial(n, p) masses of sizes 1..limit, scaled so the largest is 1."""
    top = min(limit, n)
    if top < 1 or p <= 0.0:
        return []
    if p >= 1.0:
        return [0.0] * (top - 1) + [1.0] if top == n else []
    logs = [
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        + k * math.log(p) + (n - k) * math.log1p(-p)
        for k in range(1, top + 1)
    ]
    peak = max(logs)
    return [math.exp(x - peak) for x in logs]


def conditioned_coin_set(n: int, p: float, limit: int, bitgen) -> int:
    """Mask distributed as independent Bernoulli(p) coins on n nodes, conditioned on 1 <= size <= limit.

    Draws the size from the conditioned binomial with one uniform, then a
    uniform subset of that size by partial Fisher-Yates (one uniform per
    pick). Returns 0 when the condition has probability zero.
    """
    weights = _size_weights(n, p, limit)
    total = sum(weights)
    if total <= 0.0:
        return 0
    u = rng.uniforms(bitgen, 1)[0] * total
    size = len(weights)
    acc = 0.0
    for k, w in enumerate(weights, start=1):
        acc += w
        if u < acc:
            size = k
            break
    pool = list(range(n))
    picks = rng.uniforms(bitgen, size).tolist()
    for i, x in enumerate(picks):
        j = i + min(int(x * (n - i)), n - i - 1)
        pool[i], pool[j] = pool[j], pool[i]
    return mask_of(pool[:size])


def sample_distinguishing_set(g: Graph, c: Constants, seed: int, max_attempts: int = 64) -> SamplingResult:
    """Random A from per-node coins of bias c3/log2 n, retried until both postconditions hold.

    Accepted A is nonempty, has at most ceil(c3 n / log2 n) nodes, and any
    two nodes with equal A-trace differ on at most c4 (log2 n)^2 nodes.
    Each attempt draws the coins already conditioned on the size bounds,
    which is the law plain rejection on size would reach; only the dif
    condition is retried. Attempt ``k`` uses stream ``(seed, DISTINGUISHING_SET, k)``.
    """
    n = g.n
    if n < 2:
        raise ValueError("sampling a distinguishing set needs n >= 2")
    p = float(c.c3) / math.log2(n)
    res = SamplingResult(None, size_limit(c, n), dif_limit(c, n))
    for k in range(max_attempts):
        a_mask = conditioned_coin_set(n, p, res.size_limit, rng.generator(seed, rng.DISTINGUISHING_SET, k))
        size = a_mask.bit_count()
        size_ok = 0 < size <= res.size_limit
        worst = max_equivalent_dif(g, a_mask) if size_ok else -1
        att = SamplingAttempt(k, size, size_ok, worst, 0 <= worst <= res.dif_limit)
        res.attempts.append(att)
        if att.ok:
            res.A = frozenset(members(a_mask))
            break
    return res


def neighborhood_classes(g: Graph, A) -> NeighborhoodPartition:
    a_mask = g.node_mask(A)
    groups = trace_groups(g, a_mask, g.full_mask & ~a_mask)
    return NeighborhoodPartition(frozenset(members(a_mask)), tuple(frozenset(v) for v in groups.values()))


def class_lower_bound(ell: int, a: int, n: int) -> float:
    """Lower bound ell - a*log2(n) on log2 I(G) from 2^ell <= n^a * I(G)."""
    return ell - a * math.log2(n)


def family_index_sets(ell: int, budget: int) -> list[int]:
    """Class-index subsets (as bitmasks) used for the pinned family, in ascending order."""
    return list(range(min(1 << ell, budget)))


def family_member(g: Graph, part: NeighborhoodPartition, u: int, class_masks: list[int] | None = None) -> PinnedGraph:
    """G restricted to A plus the classes indexed by ``u``, with A pinned in ascending order."""
    masks = class_masks if class_masks is not None else part.class_masks()
    a_mask = part.a_mask
    nodes = a_mask
    for i in members(u):
        nodes |= masks[i]
    order = members(nodes)
    pins = tuple(k for k, v in enumerate(order) if a_mask >> v & 1)
    return PinnedGraph(induced_by_mask(g, nodes), pins)


def iso_rich_family(g: Graph, part: NeighborhoodPartition, budget: int) -> list[PinnedGraph]:
    masks = part.class_masks()
    return [family_member(g, part, u, masks) for u in family_index_sets(part.ell, budget)]
