"""Certificates for the dichotomy and their checker.

A certificate is either

* ``IsoRich``: a node set A whose trace partition has ``ell`` classes, so
  ``log2 I(G) >= ell - |A| log2 n``; optionally with pinned canonical forms
  of the first induced structures G_u as evidence, or
* ``Homogeneous``: an explicit clique or independent set, with the target
  size c1 * log2 n it was meant to reach.

``verify_certificate`` recomputes everything from the graph and never
trusts a stored number. Certificates round-trip through a line-oriented
text form (``format_certificate`` / ``parse_certificate``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..canon import pinned_canonical_form
from ..graph import Graph, graph6_decode, graph6_encode
from ..ramsey import CLIQUE, INDEPENDENT, HomogeneousSet
from .partition import family_member, max_equivalent_dif, neighborhood_classes

HEADER = "ramsey-induced certificate v1"
TOL = 1e-9


@dataclass(frozen=True)
class IsoRich:
    A: tuple[int, ...]
    ell: int
    log2_bound: float
    c3: Fraction
    c4: Fraction
    evidence: tuple[tuple[int, str], ...] = ()

    kind = "iso_rich"


@dataclass(frozen=True)
class Homogeneous:
    hset: HomogeneousSet
    c1: Fraction
    target: float
    below_target: bool = False
    iso: IsoRich | None = None

    kind = "homogeneous"


Certificate = Union[IsoRich, Homogeneous]


def target_size(c1: Fraction, n: int) -> float:
    return float(c1) * math.log2(n)


def _verify_iso(g: Graph, cert: IsoRich, report: list[str]) -> bool:
    ok = True
    n = g.n
    if n < 2:
        report.append("iso_rich: need n >= 2")
        return False
    a = list(cert.A)
    if len(set(a)) != len(a) or any(not (isinstance(v, int) and 0 <= v < n) for v in a):
        report.append("iso_rich: A has repeated or out-of-range nodes")
        return False
    if not a:
        report.append("iso_rich: A is empty")
        ok = False
    limit = math.ceil(float(cert.c3) * n / math.log2(n))
    if len(a) > limit:
        report.append(f"iso_rich: |A|={len(a)} exceeds ceil(c3 n/log n)={limit}")
        ok = False
    if cert.c3 * cert.c4 != 4:
        report.append("iso_rich: c3 * c4 != 4")
        ok = False
    part = neighborhood_classes(g, a)
    if part.ell != cert.ell:
        report.append(f"iso_rich: stored ell={cert.ell}, recomputed {part.ell}")
        ok = False
    worst = max_equivalent_dif(g, part.a_mask)
    dl = float(cert.c4) * math.log2(n) ** 2
    if worst > dl:
        report.append(f"iso_rich: equivalent pair with dif={worst} > c4 log^2 n={dl:.3f}")
        ok = False
    bound = part.ell - len(a) * math.log2(n)
    if not math.isclose(bound, cert.log2_bound, rel_tol=0, abs_tol=TOL):
        report.append(f"iso_rich: stored bound {cert.log2_bound}, recomputed {bound}")
        ok = False
    if cert.evidence:
        us = [u for u, _ in cert.evidence]
        if len(set(us)) != len(us) or any(not 0 <= u < (1 << part.ell) for u in us):
            report.append("iso_rich: evidence index sets repeated or out of range")
            return False
        masks = part.class_masks()
        forms = []
        for u, stored in cert.evidence:
            form = pinned_canonical_form(family_member(g, part, u, masks)).hex()
            if form != stored:
                report.append(f"iso_rich: evidence form for u={u} does not match recomputation")
                ok = False
            forms.append(form)
        if len(set(forms)) != len(forms):
            report.append("iso_rich: evidence forms are not pairwise distinct")
            ok = False
    if ok:
        report.append(f"iso_rich: ell={part.ell} |A|={len(a)} log2 I >= {bound:.6g}")
    return ok


def _verify_homogeneous(g: Graph, cert: Homogeneous, report: list[str]) -> bool:
    ok = True
    if not cert.hset.holds_in(g):
        report.append(f"homogeneous: members are not a {cert.hset.kind} in the graph")
        ok = False
    target = target_size(cert.c1, g.n)
    if not math.isclose(target, cert.target, rel_tol=0, abs_tol=TOL):
        report.append(f"homogeneous: stored target {cert.target}, recomputed {target}")
        ok = False
    short = len(cert.hset) < target - TOL
    if short != cert.below_target:
        report.append(f"homogeneous: below_target flag {cert.below_target} but size {len(cert.hset)} vs target {target:.6g}")
        ok = False
    if cert.iso is not None and not _verify_iso(g, cert.iso, report):
        ok = False
    if ok:
        report.append(f"homogeneous: {cert.hset.kind} of size {len(cert.hset)} (target {target:.6g})")
    return ok


def verify_certificate(g: Graph, cert: Certificate) -> tuple[bool, list[str]]:
    report: list[str] = []
    if isinstance(cert, IsoRich):
        ok = _verify_iso(g, cert, report)
    elif isinstance(cert, Homogeneous):
        ok = _verify_homogeneous(g, cert, report)
    else:
        return False, [f"unknown certificate type {type(cert).__name__}"]
    return ok, report


# text form

def _iso_lines(cert: IsoRich, prefix: str = "") -> list[str]:
    lines = [
        f"{prefix}A {' '.join(map(str, cert.A))}".rstrip(),
        f"{prefix}ell {cert.ell}",
        f"{prefix}log2_bound {cert.log2_bound!r}",
        f"{prefix}c3 {cert.c3}",
        f"{prefix}c4 {cert.c4}",
    ]
    lines += [f"{prefix}evidence {u} {h}" for u, h in cert.evidence]
    return lines


def format_certificate(cert: Certificate, g: Graph | None = None) -> str:
    lines = [HEADER, f"kind {cert.kind}"]
    if g is not None:
        lines += [f"n {g.n}", f"graph6 {graph6_encode(g)}"]
    if isinstance(cert, IsoRich):
        lines += _iso_lines(cert)
    else:
        lines += [
            f"color {cert.hset.kind}",
            f"members {' '.join(map(str, cert.hset.members))}".rstrip(),
            f"c1 {cert.c1}",
            f"target {cert.target!r}",
            f"below_target {int(cert.below_target)}",
        ]
        if cert.iso is not None:
            lines += _iso_lines(cert.iso, "iso.")
    lines.append("end")
    return "\n".join(lines) + "\n"


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(t) for t in s.split())


def _parse_iso(fields: dict[str, str], evidence: list[tuple[int, str]], prefix: str = "") -> IsoRich:
    return IsoRich(
        A=_ints(fields.get(prefix + "A", "")),
        ell=int(fields[prefix + "ell"]),
        log2_bound=float(fields[prefix + "log2_bound"]),
        c3=Fraction(fields[prefix + "c3"]),
        c4=Fraction(fields[prefix + "c4"]),
        evidence=tuple(evidence),
    )


def parse_certificate(text: str) -> tuple[Certificate, Graph | None]:
    """Inverse of ``format_certificate``; also returns the embedded graph if present."""
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != HEADER:
        raise ValueError("not a certificate: missing header line")
    fields: dict[str, str] = {}
    evidence: dict[str, list[tuple[int, str]]] = {"": [], "iso.": []}
    for ln in lines[1:]:
        if ln.strip() == "end":
            break
        key, _, value = ln.partition(" ")
        if key.endswith("evidence"):
            u, h = value.split()
            evidence[key[: -len("evidence")]].append((int(u), h))
        else:
            fields[key] = value.strip()
    else:
        raise ValueError("certificate is missing its 'end' line")
    g = graph6_decode(fields["graph6"]) if "graph6" in fields else None
    kind = fields.get("kind")
    if kind == IsoRich.kind:
        return _parse_iso(fields, evidence[""]), g
    if kind == Homogeneous.kind:
        color = fields["color"]
        if color not in (CLIQUE, INDEPENDENT):
            raise ValueError(f"unknown color {color!r}")
        iso = _parse_iso(fields, evidence["iso."], "iso.") if "iso.ell" in fields else None
        cert = Homogeneous(
            hset=HomogeneousSet(color, _ints(fields.get("members", ""))),
            c1=Fraction(fields["c1"]),
            target=float(fields["target"]),
            below_target=fields.get("below_target", "0") == "1",
            iso=iso,
        )
        return cert, g
    raise ValueError(f"unknown certificate kind {kind!r}")
