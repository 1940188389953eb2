"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in ``RESULTS`` and printed at the end of the pytest
run (see conftest). Running this file as a script prints them directly.
"""

import random
import time

from ramsey_induced.canon import count_induced_iso_classes, pinned_canonical_form
from ramsey_induced.constructions import blowup, blowup_iso_bound, blowup_rm_transfer
from ramsey_induced.graph import build_graph, cycle_graph, graph6_decode, graph6_encode, random_graph
from ramsey_induced.harness import ExperimentConfig, experiment_sweep, generate
from ramsey_induced.pipeline import (
    derive_constants,
    desk_constants,
    greedy_independent,
    neighborhood_classes,
    run_pipeline,
    verify_certificate,
)
from ramsey_induced.pipeline.partition import dif_limit, family_member, max_equivalent_dif
from ramsey_induced.ramsey import diagonal_ramsey, ramsey_extract, rm_number

import oracles
from conftest import random_edges

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
    assert ok, detail


def test_1_iso_count_matches_permutation_oracle():
    start = time.time()
    checked = mismatches = 0
    for n in range(6):
        for e in oracles.all_labeled_graphs(n):
            checked += 1
            mismatches += count_induced_iso_classes(build_graph(n, e)) != oracles.brute_iso_count(n, e)
    for n in (6, 7):
        for e in oracles.nonisomorphic_graphs(n):
            checked += 1
            mismatches += count_induced_iso_classes(build_graph(n, e)) != oracles.brute_iso_count(n, e)
    # pairwise permutation testing (no codes at all) on every labeled graph with n <= 4
    for n in range(5):
        for e in oracles.all_labeled_graphs(n):
            reps: list[tuple[int, frozenset]] = []
            for mask in range(1 << n):
                sub = oracles.restrict(e, [v for v in range(n) if mask >> v & 1])
                if not any(oracles.brute_isomorphic(*sub, *r) for r in reps):
                    reps.append(sub)
            checked += 1
            mismatches += count_induced_iso_classes(build_graph(n, e)) != len(reps)
    elapsed = time.time() - start
    report(1, "I(G) oracle equivalence, n <= 7", mismatches == 0 and elapsed < 300,
           f"{checked} graphs, {mismatches} mismatches, {elapsed:.1f}s (limit 300s)")


def test_2_ramsey_exactness():
    classes = oracles.nonisomorphic_graphs(6)
    ok6 = 0
    for e in classes:
        g = build_graph(6, e)
        hs = ramsey_extract(g, 3, 3)
        ok6 += hs is not None and hs.holds_in(g) and len(hs) == 3
    c5 = cycle_graph(5)
    fails_c5 = ramsey_extract(c5, 3, 3) is None
    rm_c5 = rm_number(c5)[0]
    ok = len(classes) == 156 and ok6 == 156 and fails_c5 and rm_c5 == 2 and diagonal_ramsey(3) == 6
    report(2, "R(3,3) exactness", ok,
           f"{ok6}/{len(classes)} six-node classes give a triple; C5 fails={fails_c5}; Rm(C5)={rm_c5}")


def test_3_blowup_ceiling():
    start = time.time()
    checked = violations = 0
    worst = 0.0
    for n in range(1, 5):
        for e in oracles.nonisomorphic_graphs(n):
            h = build_graph(n, e)
            for m in (1, 2, 3):
                if m * n > 12:
                    continue
                i = count_induced_iso_classes(blowup(h, m))
                bound = blowup_iso_bound(h, m)
                checked += 1
                violations += i > bound
                worst = max(worst, i / bound)
    transfer = blowup_rm_transfer(cycle_graph(5), 2, 3, 3)
    elapsed = time.time() - start
    report(3, "blow-up ceiling I <= (m+1)^n", violations == 0 and transfer and elapsed < 600,
           f"{checked} (H, m) pairs, {violations} violations, max I/bound {worst:.3f}; "
           f"transfer(C5,2,3,3)={transfer}; {elapsed:.1f}s")


def test_4_key_inequality():
    start = time.time()
    r = random.Random(2024)
    c = desk_constants(1)
    pairs_done = ineq_fail = distinct_fail = family_checks = 0
    while pairs_done < 200:
        n = r.randint(4, 12)
        g = build_graph(n, random_edges(r, n, r.choice([0.2, 0.5, 0.8])))
        a = set(r.sample(range(n), r.randint(1, min(4, n - 1))))
        if max_equivalent_dif(g, sum(1 << v for v in a)) > dif_limit(c, n):
            continue
        pairs_done += 1
        part = neighborhood_classes(g, a)
        ineq_fail += 2 ** part.ell > n ** len(a) * count_induced_iso_classes(g)
        if part.ell <= 10:
            family_checks += 1
            masks = part.class_masks()
            forms = [pinned_canonical_form(family_member(g, part, u, masks)) for u in range(1 << part.ell)]
            distinct_fail += len(set(forms)) != len(forms)
    elapsed = time.time() - start
    ok = ineq_fail == 0 and distinct_fail == 0 and elapsed < 600
    report(4, "2^ell <= n^|A| I(G) and distinct pinned families", ok,
           f"{pairs_done} pairs, {ineq_fail} inequality failures, {family_checks} full families, "
           f"{distinct_fail} with repeated forms; {elapsed:.1f}s")


FAMILIES = ["empty:{n}", "complete:{n}", "gnp:{n}:0.5", "c5blowup:{n}"]


def test_5_pipeline_soundness():
    start = time.time()
    combos = [(f, n, mode) for f in FAMILIES for n in (32, 64, 128) for mode in ("desk", "theoretical")]
    constants = {"desk": desk_constants(1), "theoretical": derive_constants(1)}
    runs = certs = bad_certs = bad_checks = other_failed = 0
    kinds: dict[str, int] = {}
    for k in range(100):
        fam, n, mode = combos[k % len(combos)]
        seed = k
        g = generate(fam.format(n=n), seed)
        res = run_pipeline(g, constants[mode], seed)
        runs += 1
        kinds[res.trace.status] = kinds.get(res.trace.status, 0) + 1
        for chk in res.trace.checks:
            if chk.asserted and chk.name in ("a_size", "a_dif", "conflict_size") and not chk.holds:
                bad_checks += 1
        other_failed += sum(1 for chk in res.trace.failed_assertions() if chk.name not in ("a_size", "a_dif", "conflict_size"))
        if res.certificate is not None:
            certs += 1
            bad_certs += not verify_certificate(g, res.certificate)[0]
    elapsed = time.time() - start
    ok = bad_certs == 0 and bad_checks == 0 and other_failed == 0 and elapsed < 900
    report(5, "pipeline certificates verify", ok,
           f"{runs} runs, {certs} certificates, {bad_certs} rejected, {bad_checks} failed size/dif/conflict checks, {other_failed} other failed assertions, "
           f"statuses {dict(sorted(kinds.items()))}; {elapsed:.1f}s")


def test_6_random_graph_rm_bound():
    start = time.time()
    rm128 = [rm_number(random_graph(128, 0.5, s))[0] for s in range(100)]
    rm64 = [rm_number(random_graph(64, 0.5, s))[0] for s in range(100)]
    good128 = sum(v <= 14 for v in rm128)
    good64 = sum(v <= 12 for v in rm64)
    elapsed = time.time() - start
    report(6, "Rm(G(n,1/2)) <= 2 log2 n", good128 >= 95 and good64 >= 95 and elapsed < 600,
           f"n=128: {good128}/100 <= 14 (max {max(rm128)}); n=64: {good64}/100 <= 12 (max {max(rm64)}); {elapsed:.1f}s")


def test_7_constants():
    c1 = derive_constants(1)
    c05 = derive_constants(0.5)
    ok = c1.m1 == 11 and c05.m1 == 4 and all(c.c3 * c.c4 == 4 and c.c5 > 0 for c in (c1, c05, desk_constants(1)))
    report(7, "constants derivation", ok,
           f"m1(1)={c1.m1}, m1(0.5)={c05.m1}, c3*c4={c1.c3 * c1.c4} and {c05.c3 * c05.c4}")


def test_8_greedy_bound():
    r = random.Random(8)
    start = time.time()
    bad_pairs = bad_bound = 0
    for _ in range(1000):
        size = r.randint(1, 1000)
        d = r.randint(0, 30)
        u = []
        for i in range(size):
            k = r.randint(0, min(d, size - 1))
            u.append({j + (j >= i) for j in r.sample(range(size - 1), k)})
        w = greedy_independent(u)
        wset = set(w)
        bad_pairs += any(j in wset and j != i for i in w for j in u[i])
        dmax = max(len(s) for s in u)
        bad_bound += len(w) * (dmax + 1) ** 2 < size
    elapsed = time.time() - start
    report(8, "greedy W is conflict-free and |W| >= i*/(D+1)^2", bad_pairs == 0 and bad_bound == 0,
           f"1000 instances, {bad_pairs} independence failures, {bad_bound} bound failures; {elapsed:.1f}s")


def test_9_determinism():
    cfg = ExperimentConfig(families=["gnp:{n}:0.5", "c5blowup:{n}", "empty:{n}"], sizes=[16, 32], trials=4,
                           seed=11, overrides={"m1": 2, "m2": 2})
    first = experiment_sweep(cfg)
    again = experiment_sweep(ExperimentConfig.from_json(cfg.to_json()))
    r = random.Random(9)
    trips = 0
    for _ in range(1000):
        n = r.randint(0, 12)
        g = build_graph(n, random_edges(r, n, r.random()))
        trips += graph6_decode(graph6_encode(g)) == g
    report(9, "sweep determinism and graph6 round trip", first == again and trips == 1000,
           f"sweep of {len(first.splitlines()) - 1} rows byte-identical={first == again}; {trips}/1000 round trips")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
