import random

import pytest
from hypothesis import strategies as st

from divforge.graph import Divisor, WeightedMultigraph


@st.composite
def graphs(draw, max_vertices=5, max_extra=4, max_weight=1):
    n = draw(st.integers(1, max_vertices))
    names = [f"v{i}" for i in range(n)]
    edges = [(names[i], names[draw(st.integers(0, i - 1))]) for i in range(1, n)]
    if n > 1:
        for _ in range(draw(st.integers(0, max_extra))):
            a, b = draw(st.permutations(names))[:2]
            edges.append((a, b))
    weights = {v: draw(st.integers(0, max_weight)) for v in names}
    return WeightedMultigraph(names, edges, weights)


@st.composite
def graph_divisors(draw, spread=3, **kw):
    g = draw(graphs(**kw))
    chips = [draw(st.integers(-spread, spread)) for _ in g.vertices]
    return g, Divisor(g, chips)


@pytest.fixture
def rng():
    return random.Random(7)


def path(weights=None):
    return WeightedMultigraph(["u", "v", "w"], [("u", "v"), ("v", "w")], weights)
