"""The full dichotomy: distinguishing set, trace classes, then either a richness
certificate or blocks -> conflicts -> W -> W' -> Ramsey extraction on the
block representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ..canon import pinned_canonical_form
from ..graph import Graph, complement, induced_subgraph
from ..ramsey import (
    CLIQUE,
    DEFAULT_RM_CAP,
    INDEPENDENT,
    HomogeneousSet,
    max_clique,
    ramsey_extract,
    rm_number,
)
from .blocks import (
    BlockFamily,
    build_blocks,
    conflict_sets,
    greedy_independent,
    majority_color,
    uniformity_violations,
)
from .certificate import Certificate, Homogeneous, IsoRich, target_size
from .constants import Constants
from .partition import (
    NeighborhoodPartition,
    class_lower_bound,
    family_index_sets,
    family_member,
    sample_distinguishing_set,
    neighborhood_classes,
)

DEFAULT_EVIDENCE_BUDGET = 256
DEFAULT_MAX_ATTEMPTS = 64


class PipelineInvariantError(AssertionError):
    """An inequality the construction guarantees was found violated."""


@dataclass
class Check:
    name: str
    asserted: bool
    holds: bool
    detail: str = ""


@dataclass
class Trace:
    n: int
    seed: int
    constants: dict[str, str]
    status: str = ""
    branch: str = ""
    attempts: int = 0
    a_size: int | None = None
    ell: int | None = None
    ell_threshold: float | None = None
    i_star: int | None = None
    w: int | None = None
    w_prime: int | None = None
    w_dprime: int | None = None
    color: str | None = None
    budgets: tuple[int, int] | None = None
    max_conflict: int | None = None
    checks: list[Check] = field(default_factory=list)

    def check(self, name: str, holds: bool, detail: str = "", asserted: bool = True) -> None:
        self.checks.append(Check(name, asserted, bool(holds), detail))

    def failed_assertions(self) -> list[Check]:
        return [c for c in self.checks if c.asserted and not c.holds]

    def lines(self) -> list[str]:
        out = [f"trace n {self.n}", f"trace seed {self.seed}"]
        for k, v in self.constants.items():
            out.append(f"trace const.{k} {v}")
        for k in ("status", "branch", "attempts", "a_size", "ell", "ell_threshold", "i_star",
                  "w", "w_prime", "w_dprime", "color", "budgets", "max_conflict"):
            v = getattr(self, k)
            if v is None or v == "":
                continue
            if isinstance(v, tuple):
                v = " ".join(map(str, v))
            out.append(f"trace {k} {v}")
        for c in self.checks:
            tag = "pass" if c.holds else "FAIL"
            kind = "assert" if c.asserted else "info"
            out.append(f"trace check {c.name} {kind} {tag} {c.detail}".rstrip())
        return out


@dataclass
class PipelineResult:
    certificate: Certificate | None
    trace: Trace
    partition: NeighborhoodPartition | None = None
    blocks: BlockFamily | None = None


def iso_rich_certificate(g: Graph, part: NeighborhoodPartition, c: Constants, budget: int) -> IsoRich:
    masks = part.class_masks()
    evidence = tuple(
        (u, pinned_canonical_form(family_member(g, part, u, masks)).hex())
        for u in family_index_sets(part.ell, budget)
    )
    return IsoRich(
        A=tuple(sorted(part.A)),
        ell=part.ell,
        log2_bound=class_lower_bound(part.ell, len(part.A), g.n),
        c3=c.c3,
        c4=c.c4,
        evidence=evidence,
    )


def _expand(fam: BlockFamily, idx: list[int]) -> tuple[int, ...]:
    return tuple(sorted(v for i in idx for v in fam.blocks[i]))


def run_pipeline(
    g: Graph,
    c: Constants,
    seed: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    evidence_budget: int = DEFAULT_EVIDENCE_BUDGET,
) -> PipelineResult:
    """Certify many induced subgraphs or produce a large homogeneous set.

    Returns a result whose ``certificate`` is None only when no acceptable
    distinguishing set was sampled within ``max_attempts``.
    """
    n = g.n
    if n < 4:
        raise ValueError("run_pipeline needs n >= 4")
    logn = math.log2(n)
    tr = Trace(n=n, seed=seed, constants=c.as_dict())
    tr.constants["c5_printed"] = str(c.c5_printed)

    # distinguishing set
    samp = sample_distinguishing_set(g, c, seed, max_attempts)
    tr.attempts = len(samp.attempts)
    if samp.A is None:
        tr.status = "sampling_failed"
        sizes = [a.size for a in samp.attempts]
        tr.check("sampling", False, f"no acceptable A in {len(sizes)} attempts; sizes {sizes[:16]}", asserted=False)
        return PipelineResult(None, tr)
    A = samp.A
    last = samp.attempts[-1]
    tr.a_size = len(A)
    tr.check("a_size", len(A) > 0 and len(A) <= samp.size_limit, f"|A|={len(A)} <= {samp.size_limit}")
    tr.check("a_dif", last.max_dif <= samp.dif_limit, f"max dif={last.max_dif} <= {samp.dif_limit:.4g}")

    part = neighborhood_classes(g, A)
    tr.ell = part.ell
    threshold = float(c.c2 + c.c3) * n
    tr.ell_threshold = threshold
    if part.ell >= threshold:
        cert = iso_rich_certificate(g, part, c, evidence_budget)
        tr.status = "iso_rich"
        tr.branch = "classes"
        tr.check("class_bound", True, f"log2 I >= {cert.log2_bound:.6g}", asserted=False)
        return PipelineResult(cert, tr, part)

    fam = conflict_sets(g, build_blocks(g, part, c))
    tr.i_star = fam.i_star
    premise = all(fam.exhausted) and len(A) <= float(c.c3) * n / logn
    need = (n / c.m1) * (c.m2 * float(c.c5) - float(c.c3) / logn)
    tr.check("block_count", fam.i_star >= need, f"i*={fam.i_star} >= {need:.4g}", asserted=premise)

    conflicts = fam.conflicts or ()
    dmax = max((len(u) for u in conflicts), default=0)
    tr.max_conflict = dmax
    bound5 = c.m1 * (c.m1 - 1) * float(c.c4) * logn ** 2
    tr.check("conflict_size", dmax <= bound5, f"max |u_i|={dmax} <= {bound5:.4g}")

    W = greedy_independent(conflicts)
    tr.w = len(W)
    clean = all(j not in conflicts[i] for i in W for j in W if i != j)
    tr.check("w_independent", clean, "no j in u_i for distinct i, j in W")
    tr.check("greedy_bound", len(W) * (dmax + 1) ** 2 >= fam.i_star, f"|W|={len(W)} >= i*/(D+1)^2")
    ratio_need = fam.i_star / bound5 if bound5 else math.inf
    tr.check("w_ratio", len(W) >= ratio_need, f"|W|={len(W)} >= {ratio_need:.4g}", asserted=False)
    if not clean:
        raise PipelineInvariantError("greedy W violates its independence condition")

    Wp, color = majority_color(fam, W)
    tr.w_prime = len(Wp)
    tr.color = color
    tr.check("majority", 2 * len(Wp) >= len(W), f"|W'|={len(Wp)} >= |W|/2")
    bad = uniformity_violations(g, fam, Wp)
    tr.check("block_uniformity", not bad, "" if not bad else f"violations {bad}")
    if bad:
        raise PipelineInvariantError(f"block uniformity fails on W': {bad}")

    a = math.ceil(float(c.c1) / c.m1 * logn)
    b = math.ceil(float(c.c1) * logn)
    tr.budgets = (a, b)
    target = target_size(c.c1, n)
    reps = sorted((fam.rep(i), i) for i in Wp)
    block_of = [i for _, i in reps]
    H = induced_subgraph(g, [v for v, _ in reps])
    # "view" turns independent-coloured blocks into cliques, so one endgame serves both colours
    view = H if color == CLIQUE else complement(H)
    other = INDEPENDENT if color == CLIQUE else CLIQUE

    found = ramsey_extract(view, a, b) if Wp else None
    if found is not None:
        idx = [block_of[k] for k in found.members]
        tr.w_dprime = len(idx)
        if found.kind == CLIQUE:
            tr.branch = "blocks"
            hset = HomogeneousSet(color, _expand(fam, idx))
        else:
            tr.branch = "reps"
            hset = HomogeneousSet(other, tuple(sorted(fam.rep(i) for i in idx)))
        tr.status = "homogeneous"
        return PipelineResult(Homogeneous(hset, c.c1, target, len(hset) < target - 1e-9), tr, part, fam)

    # below the Ramsey threshold: best effort, with the class bound attached
    candidates: list[tuple[int, HomogeneousSet, str, int]] = []
    if Wp:
        cl = [block_of[k] for k in max_clique(view)]
        candidates.append((len(cl) * c.m1, HomogeneousSet(color, _expand(fam, cl)), "blocks_short", len(cl)))
        ind = [block_of[k] for k in max_clique(complement(view))]
        candidates.append((len(ind), HomogeneousSet(other, tuple(sorted(fam.rep(i) for i in ind))), "reps_short", len(ind)))
    if not candidates and n <= DEFAULT_RM_CAP:
        size, hs = rm_number(g)
        candidates.append((size, hs, "direct", 0))
    if not candidates:
        candidates.append((1, HomogeneousSet(CLIQUE, (0,)), "trivial", 0))
    size, hset, branch, wd = max(candidates, key=lambda t: t[0])
    tr.branch = branch
    tr.w_dprime = wd
    iso = IsoRich(tuple(sorted(A)), part.ell, class_lower_bound(part.ell, len(A), n), c.c3, c.c4)
    short = len(hset) < target - 1e-9
    tr.status = "below_target" if short else "homogeneous"
    return PipelineResult(Homogeneous(hset, c.c1, target, short, iso), tr, part, fam)


def result_summary(res: PipelineResult) -> dict[str, Any]:
    cert = res.certificate
    out: dict[str, Any] = {"status": res.trace.status, "branch": res.trace.branch}
    if isinstance(cert, IsoRich):
        out.update(kind="iso_rich", bound=cert.log2_bound)
    elif isinstance(cert, Homogeneous):
        out.update(kind=cert.hset.kind, size=len(cert.hset), target=cert.target)
    return out
