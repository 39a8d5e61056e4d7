import random

import pytest

from hyperising import (
    IsingActivity,
    SchemaError,
    induced_insect,
    is_connected,
    ising_ly_range,
    suzuki_fisher_check,
)
from hyperising.instances import (
    in_range_beta,
    random_connected_hypergraph,
    random_regular_graph,
    random_symmetric_table,
)


def test_generator_respects_caps_and_connectivity():
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(2, 14)
        dcap = rng.choice([2, 3, 4])
        kcap = rng.choice([2, 3, 4, 5])
        g = random_connected_hypergraph(rng, n, dcap, kcap,
                                        activity="in-range")
        assert g.n == n
        assert g.max_degree <= dcap
        assert g.max_edge_size <= kcap
        assert is_connected(induced_insect(g, range(n)))


def test_generator_in_range_activities():
    rng = random.Random(7)
    for _ in range(10):
        g = random_connected_hypergraph(rng, 10, 4, 5, activity="in-range")
        for e in g.edges:
            r = ising_ly_range(e.size)
            assert r.lo < e.activity.beta < r.hi


def test_in_range_beta_keeps_margin():
    rng = random.Random(0)
    for k in (2, 3, 4, 5):
        r = ising_ly_range(k)
        width = r.hi - r.lo
        for _ in range(50):
            b = in_range_beta(rng, k)
            assert r.lo + 0.049 * width <= b <= r.hi - 0.049 * width


def test_symmetric_tables_pass_suzuki_fisher():
    rng = random.Random(3)
    for size in (2, 3, 4):
        for _ in range(10):
            act = random_symmetric_table(rng, size)
            assert act.is_symmetric(size)
            assert act.values[0] == 1
            from hyperising import Hyperedge
            assert suzuki_fisher_check(Hyperedge(tuple(range(size)), act))


def test_unit_activity_scheme():
    rng = random.Random(1)
    g = random_connected_hypergraph(rng, 6, 4, 3, activity="unit")
    assert all(e.activity == IsingActivity(1.0) for e in g.edges)


def test_regular_graph_is_simple_and_regular():
    rng = random.Random(12)
    g = random_regular_graph(rng, 20, 3, 0.5)
    degrees = [0] * 20
    seen = set()
    for e in g.edges:
        assert e.vertices not in seen
        seen.add(e.vertices)
        for v in e.vertices:
            degrees[v] += 1
    assert all(d == 3 for d in degrees)


def test_regular_graph_rejects_odd_product():
    with pytest.raises(SchemaError):
        random_regular_graph(random.Random(0), 5, 3, 0.5)


def test_generator_rejects_bad_caps():
    with pytest.raises(SchemaError):
        random_connected_hypergraph(random.Random(0), 5, 1, 3)
    with pytest.raises(SchemaError):
        random_connected_hypergraph(random.Random(0), 0, 3, 3)
