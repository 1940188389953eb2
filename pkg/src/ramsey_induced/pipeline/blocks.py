"""Homogeneous blocks inside trace classes, their conflict sets, and the greedy W."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from ..graph import Graph, mask_of
from ..ramsey import CLIQUE, INDEPENDENT, homogeneous_block
from .constants import Constants
from .partition import NeighborhoodPartition


@dataclass(frozen=True)
class BlockFamily:
    """Disjoint homogeneous blocks; ``blocks[i][0]`` is the representative x_{i,0}.

    ``remainders[c]`` is the number of nodes of class ``c`` left uncovered
    and ``exhausted[c]`` is False when the class stopped because extraction
    failed rather than because the remainder fell below m2.
    """

    blocks: tuple[tuple[int, ...], ...]
    colors: tuple[str, ...]
    class_of: tuple[int, ...]
    remainders: tuple[int, ...]
    exhausted: tuple[bool, ...]
    conflicts: tuple[frozenset[int], ...] | None = None

    @property
    def i_star(self) -> int:
        return len(self.blocks)

    def rep(self, i: int) -> int:
        return self.blocks[i][0]


def build_blocks(g: Graph, part: NeighborhoodPartition, c: Constants) -> BlockFamily:
    blocks, colors, class_of, remainders, exhausted = [], [], [], [], []
    for ci, cls in enumerate(part.classes):
        rem = mask_of(cls)
        ok = True
        while rem.bit_count() >= c.m2:
            hb = homogeneous_block(g, rem, c.m1)
            if hb is None:
                hb = homogeneous_block(g, rem, c.m1, exhaustive=True)
            if hb is None:
                ok = False
                break
            blocks.append(tuple(sorted(hb.members)))
            colors.append(hb.kind)
            class_of.append(ci)
            rem &= ~mask_of(hb.members)
        remainders.append(rem.bit_count())
        exhausted.append(ok)
    return BlockFamily(tuple(blocks), tuple(colors), tuple(class_of), tuple(remainders), tuple(exhausted))


def conflict_sets(g: Graph, fam: BlockFamily) -> BlockFamily:
    """u_i: blocks j != i meeting some Dif(x_{i,0}, x_{i,l}) with l >= 1."""
    owner = {v: j for j, b in enumerate(fam.blocks) for v in b}
    out = []
    for i, b in enumerate(fam.blocks):
        r0 = g.rows[b[0]]
        sep = 0
        for x in b[1:]:
            sep |= r0 ^ g.rows[x]
        u = set()
        while sep:
            low = sep & -sep
            j = owner.get(low.bit_length() - 1)
            if j is not None and j != i:
                u.add(j)
            sep ^= low
        out.append(frozenset(u))
    return replace(fam, conflicts=tuple(out))


def greedy_independent(u: Sequence[Iterable[int]]) -> list[int]:
    """Indices W with j not in u_i for all distinct i, j in W.

    Ascending pass, then a descending pass over the survivors. Each kept
    index removes at most D = max |u_i| others per pass, so
    ``len(W) >= len(u) / (D + 1)**2``.
    """
    sets = [frozenset(s) for s in u]
    kept: list[int] = []
    blocked: set[int] = set()  # union of u_i over kept i
    for j in range(len(sets)):
        if j not in blocked:
            kept.append(j)
            blocked |= sets[j]
    w: list[int] = []
    blocked = set()
    for i in reversed(kept):
        if i not in blocked:
            w.append(i)
            blocked |= sets[i]
    return sorted(w)


def majority_color(fam: BlockFamily, w: Iterable[int]) -> tuple[list[int], str]:
    """The larger single-colour part of W; ties (and empty W) go to cliques."""
    w = sorted(w)
    cl = [i for i in w if fam.colors[i] == CLIQUE]
    ind = [i for i in w if fam.colors[i] == INDEPENDENT]
    if len(cl) >= len(ind):
        return cl, CLIQUE
    return ind, INDEPENDENT


def uniformity_violations(g: Graph, fam: BlockFamily, w: Sequence[int], limit: int = 5) -> list[tuple[int, int, int, int]]:
    """Quadruples (i1, l1, i2, l2) where x_{i1,l1} ~ x_{i2,l2} disagrees with x_{i1,0} ~ x_{i2,0}."""
    bad = []
    for a, i1 in enumerate(w):
        b1 = fam.blocks[i1]
        for i2 in w[a + 1:]:
            b2 = fam.blocks[i2]
            want = g.has_edge(b1[0], b2[0])
            for l1, x in enumerate(b1):
                for l2, y in enumerate(b2):
                    if g.has_edge(x, y) != want:
                        bad.append((i1, l1, i2, l2))
                        if len(bad) >= limit:
                            return bad
    return bad
