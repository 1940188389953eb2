import itertools

import pytest

from ramsey_induced.canon import canonical_form, count_induced_iso_classes, is_isomorphic
from ramsey_induced.constructions import (
    blowup,
    blowup_iso_bound,
    blowup_rm_transfer,
    fiber_of,
    fiber_profile,
    search_ramsey_witness,
)
from ramsey_induced.graph import build_graph, complete_bipartite, complete_graph, cycle_graph, induced_by_mask
from ramsey_induced.ramsey import clique_number, independence_number, rm_number

import oracles

K2 = complete_graph(2)
C5 = cycle_graph(5)


def small_classes(max_n):
    for n in range(1, max_n + 1):
        for e in oracles.nonisomorphic_graphs(n):
            yield build_graph(n, e)


def test_blowup_examples():
    assert blowup(C5, 1) == C5
    assert is_isomorphic(blowup(K2, 2), complete_bipartite(2, 2))
    assert blowup(C5, 3).n == 15


def test_blowup_edges_match_definition():
    h = build_graph(4, [(0, 1), (1, 2), (1, 3)])
    m = 3
    g = blowup(h, m)
    want = {tuple(sorted((m * i1 + l1, m * i2 + l2))) for i1, i2 in h.edges() for l1 in range(m) for l2 in range(m)}
    assert set(g.edges()) == want
    assert fiber_of(7, 3) == 2


@pytest.mark.parametrize("m", [0, -1, 1.5])
def test_blowup_rejects(m):
    with pytest.raises(ValueError):
        blowup(K2, m)


def test_fibers_independent():
    for h in small_classes(4):
        for m in (1, 2, 3):
            g = blowup(h, m)
            for i in range(h.n):
                fiber = range(m * i, m * i + m)
                assert not any(g.has_edge(x, y) for x, y in itertools.combinations(fiber, 2))


def test_iso_bound_examples():
    assert blowup_iso_bound(K2, 2) == 9
    assert count_induced_iso_classes(complete_bipartite(2, 2)) == 6
    assert blowup_iso_bound(C5, 3) == 1024
    assert blowup_iso_bound(C5, 1) == 32 >= count_induced_iso_classes(C5)
    assert blowup_iso_bound(complete_graph(40), 9) == 10 ** 40


def test_profile_collapse():
    for h in small_classes(4):
        for m in (1, 2, 3):
            g = blowup(h, m)
            by_profile = {}
            for mask in range(1 << g.n):
                by_profile.setdefault(fiber_profile(mask, h.n, m), set()).add(canonical_form(induced_by_mask(g, mask)))
            assert all(len(forms) == 1 for forms in by_profile.values())
            assert len(by_profile) == (m + 1) ** h.n


def test_iso_bound_five_node_bases():
    for h in small_classes(5):
        if h.n != 5:
            continue
        for m in (1, 2, 3):
            bound = blowup_iso_bound(h, m)
            assert count_induced_iso_classes(blowup(h, m)) <= bound


def test_transfer_examples():
    assert blowup_rm_transfer(C5, 2, 3, 3)
    g = blowup(C5, 2)
    assert clique_number(g) == 2 and independence_number(g) == 4
    assert blowup_rm_transfer(K2, 2, 3, 2)
    assert blowup_rm_transfer(C5, 1, 3, 3) == (rm_number(C5)[0] < 3)


def test_transfer_follows_from_witness():
    for h in small_classes(5):
        for r1, r2 in [(2, 2), (3, 2), (2, 3), (3, 3)]:
            witness = clique_number(h) < r1 and independence_number(h) < r2
            if witness:
                for m in (1, 2, 3):
                    assert blowup_rm_transfer(h, m, r1, r2)


def test_witness_search_examples():
    found = search_ramsey_witness(5, 3, 500, 0)
    assert found is not None
    g, t = found
    assert rm_number(g)[0] == 2
    assert search_ramsey_witness(5, 3, 500, 0) == found
    assert search_ramsey_witness(6, 3, 200, 0) is None


def test_witness_search_n128():
    found = search_ramsey_witness(128, 15, 100, 7)
    assert found is not None
    assert rm_number(found[0])[0] < 15
