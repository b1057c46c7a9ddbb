import random

from ekrlab.clique import (
    degeneracy_order,
    graph_from_predicate,
    greedy_colour,
    max_clique,
)

from .conftest import bk_max_clique


def random_graph(rng, nv, density):
    edges = {(a, b) for a in range(nv) for b in range(a + 1, nv) if rng.random() < density}
    adj = lambda a, b: (min(a, b), max(a, b)) in edges  # noqa: E731
    return graph_from_predicate(list(range(nv)), adj), adj


def brute_exhaustive(graph):
    adj = graph.adjacency
    best = 0
    for mask in range(1 << len(adj)):
        c = mask.bit_count()
        if c > best and all(not (mask & ~(1 << v) & ~adj[v])
                            for v in range(len(adj)) if mask >> v & 1):
            best = c
    return best


def test_matches_exhaustive_small():
    rng = random.Random(1)
    for _ in range(30):
        g, _ = random_graph(rng, rng.randint(0, 14), rng.random())
        res = max_clique(g)
        assert res.optimal
        assert res.value == brute_exhaustive(g)
        assert g.is_clique(res.witness) and len(res.witness) == res.value or len(g) == 0


def test_matches_bron_kerbosch():
    rng = random.Random(2)
    for _ in range(40):
        g, adj = random_graph(rng, rng.randint(20, 60), rng.uniform(0.3, 0.9))
        assert max_clique(g).value == bk_max_clique(range(len(g)), lambda a, b: a == b or adj(a, b))


def test_empty_and_edgeless():
    assert max_clique(graph_from_predicate([], lambda a, b: True)).value == 0
    g = graph_from_predicate([1, 2, 3], lambda a, b: False)
    res = max_clique(g)
    assert res.value == 1 and res.witness == [0]


def test_self_check_drops_vertices():
    g = graph_from_predicate([1, 2, 3, 4], lambda a, b: True, self_check=lambda x: x % 2 == 0)
    assert g.vertices == (2, 4) and g.dropped == 2


def test_colouring_is_proper():
    rng = random.Random(4)
    g, _ = random_graph(rng, 30, 0.5)
    P = (1 << 30) - 1
    order, colours = greedy_colour(g.adjacency, P)
    assert sorted(order) == list(range(30))
    colour_of = dict(zip(order, colours))
    for a in range(30):
        for b in range(30):
            if g.has_edge(a, b):
                assert colour_of[a] != colour_of[b]


def test_degeneracy_order_is_permutation():
    rng = random.Random(6)
    g, _ = random_graph(rng, 25, 0.4)
    assert sorted(degeneracy_order(g.adjacency)) == list(range(25))


def test_node_budget_truncates():
    rng = random.Random(7)
    g, _ = random_graph(rng, 80, 0.8)
    res = max_clique(g, node_budget=3)
    assert not res.optimal
    assert g.is_clique(res.witness)


def test_time_budget_truncates():
    rng = random.Random(8)
    g, _ = random_graph(rng, 150, 0.9)
    res = max_clique(g, time_budget=0.0)
    assert not res.optimal and g.is_clique(res.witness)


def test_threads_agree():
    rng = random.Random(9)
    for _ in range(5):
        g, _ = random_graph(rng, 50, 0.7)
        a, b = max_clique(g), max_clique(g, threads=2)
        assert (a.value, a.optimal) == (b.value, b.optimal)
        assert g.is_clique(b.witness)


def test_parallel_witness_is_maximum():
    rng = random.Random(10)
    g, _ = random_graph(rng, 45, 0.6)
    want = max_clique(g).value
    for threads in (2, 3):
        res = max_clique(g, threads=threads)
        assert res.value == len(res.witness) == want
        assert res.witness == sorted(res.witness) and g.is_clique(res.witness)


def test_metadata_keys():
    g = graph_from_predicate([1, 2], lambda a, b: True)
    md = max_clique(g).metadata()
    assert set(md) == {"nodes", "elapsed_ms", "optimal"}
