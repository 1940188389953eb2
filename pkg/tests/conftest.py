import hypothesis.strategies as st
from hypothesis import settings

from ramsey_induced.graph import build_graph

import oracles

settings.register_profile("repo", deadline=None, max_examples=100)
settings.load_profile("repo")


def to_graph(n, edges):
    return build_graph(n, edges)


def random_edges(rng, n, p=0.5):
    return frozenset(pr for pr in oracles.pairs(n) if rng.random() < p)


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    ps = oracles.pairs(n)
    bits = draw(st.lists(st.booleans(), min_size=len(ps), max_size=len(ps)))
    return build_graph(n, [p for p, b in zip(ps, bits) if b])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
