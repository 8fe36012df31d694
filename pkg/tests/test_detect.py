import random

import pytest

from chibound.certificates import (BicliqueWitness, EliminationOrder,
                                   InducedCycle, verify_certificate)
from chibound.detect import (BudgetExceeded, chromatic_number_exact,
                             clique_number, degeneracy,
                             find_biclique_subgraph, find_long_induced_cycle,
                             find_induced_subdivided_star, has_induced_path,
                             longest_induced_cycle, longest_induced_path,
                             max_independent_set, max_independent_subset)
from chibound.graph import (Graph, complete_bipartite, complete_graph,
                            cycle_graph, empty_graph, path_graph)
from conftest import random_graph
import oracles


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def grotzsch() -> Graph:
    # Mycielski construction applied to C5
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    edges = list(c5)
    for u, v in c5:
        edges.append((u, 5 + v))
        edges.append((v, 5 + u))
    edges += [(5 + i, 10) for i in range(5)]
    return Graph.from_edges(11, edges)


def test_biclique_c4():
    w = find_biclique_subgraph(cycle_graph(4), 2, 2)
    assert w == BicliqueWitness((0, 2), (1, 3))
    assert verify_certificate(cycle_graph(4), w)


def test_biclique_absent():
    assert find_biclique_subgraph(cycle_graph(6), 2, 2) is None
    assert find_biclique_subgraph(petersen(), 2, 2) is None
    assert oracles.brute_has_biclique(petersen(), 2, 2) is False


def test_biclique_asymmetric_sides():
    star = complete_bipartite(1, 4)
    w = find_biclique_subgraph(star, 1, 3)
    assert len(w.left) == 1 and len(w.right) == 3
    assert verify_certificate(star, w)
    w2 = find_biclique_subgraph(star, 3, 1)
    assert len(w2.left) == 3 and len(w2.right) == 1
    assert verify_certificate(star, w2)


def test_longest_induced_path_examples():
    assert len(longest_induced_path(path_graph(6))) == 6
    assert len(longest_induced_path(complete_graph(4))) == 2
    assert len(longest_induced_path(cycle_graph(7))) == 6
    assert len(longest_induced_path(empty_graph(0))) == 0
    assert has_induced_path(cycle_graph(7), 6) is not None
    assert has_induced_path(cycle_graph(7), 7) is None


def test_long_induced_cycle_examples():
    w = find_long_induced_cycle(cycle_graph(7), 7)
    assert w is not None and len(w.vertices) == 7
    assert verify_certificate(cycle_graph(7), w)
    assert find_long_induced_cycle(complete_graph(4), 4) is None
    # C7 plus a chord: largest induced cycle is 5
    g = Graph.from_edges(7, [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)])
    assert oracles.brute_longest_induced_cycle(g) == 5
    assert find_long_induced_cycle(g, 6) is None
    w5 = find_long_induced_cycle(g, 5)
    assert w5 is not None and verify_certificate(g, w5)
    best = longest_induced_cycle(g)
    assert len(best.vertices) == 5


def test_triangle_found():
    tri = complete_graph(3)
    w = longest_induced_cycle(tri)
    assert len(w.vertices) == 3


def test_subdivided_star():
    p5 = path_graph(5)
    w = find_induced_subdivided_star(p5, 2)
    assert w is not None and w.center == 2
    assert verify_certificate(p5, w)
    assert find_induced_subdivided_star(cycle_graph(5), 2) is None
    # spider S'_3: center 0, middles 1,2,3, leaves 4,5,6
    spider = Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
    w3 = find_induced_subdivided_star(spider, 3)
    assert w3 is not None and verify_certificate(spider, w3)


def test_mis_examples():
    assert len(max_independent_set(cycle_graph(5)).vertices) == 2
    assert len(max_independent_set(complete_bipartite(3, 3)).vertices) == 3
    assert len(max_independent_set(petersen()).vertices) == 4
    assert oracles.brute_mis_size(petersen()) == 4
    sub = max_independent_subset(cycle_graph(6), frozenset({0, 1, 2}))
    assert set(sub.vertices) == {0, 2}


def test_degeneracy_examples():
    assert degeneracy(cycle_graph(5))[0] == 2
    assert degeneracy(complete_bipartite(3, 3))[0] == 3
    tree = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    d, order = degeneracy(tree)
    assert d == 1
    assert verify_certificate(tree, order)


def test_degeneracy_exhaustive_small(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        assert degeneracy(g)[0] == oracles.brute_degeneracy(g)


def test_chromatic_and_clique():
    assert clique_number(cycle_graph(5)) == 2
    assert chromatic_number_exact(cycle_graph(5)) == 3
    assert clique_number(complete_graph(5)) == 5
    assert chromatic_number_exact(complete_graph(5)) == 5
    gz = grotzsch()
    assert clique_number(gz) == 2
    assert chromatic_number_exact(gz) == 4
    assert oracles.brute_chromatic(gz) == 4


def test_soundness_random(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        w = find_biclique_subgraph(g, 2, 2)
        if w is not None:
            assert verify_certificate(g, w)
        c = longest_induced_cycle(g)
        if c is not None:
            assert verify_certificate(g, c)
        s = find_induced_subdivided_star(g, 2)
        if s is not None:
            assert verify_certificate(g, s)
        assert verify_certificate(g, max_independent_set(g))
        assert verify_certificate(g, degeneracy(g)[1])


def test_completeness_small_sample(rng):
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        assert len(max_independent_set(g).vertices) == oracles.brute_mis_size(g)
        assert clique_number(g) == oracles.brute_clique_size(g)
        assert len(longest_induced_path(g)) == oracles.brute_longest_induced_path(g)
        got = longest_induced_cycle(g)
        assert (len(got.vertices) if got else 0) == \
            oracles.brute_longest_induced_cycle(g)
        assert (find_biclique_subgraph(g, 2, 2) is not None) == \
            oracles.brute_has_biclique(g, 2, 2)
        assert (find_induced_subdivided_star(g, 2) is not None) == \
            oracles.brute_has_subdivided_star(g, 2)
        assert chromatic_number_exact(g) == oracles.brute_chromatic(g)


def test_monotone_under_edge_addition(rng):
    for _ in range(60):
        n = 8
        g = random_graph(rng, n, 0.3)
        non_edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if not g.has_edge(i, j)]
        if not non_edges:
            continue
        extra = rng.choice(non_edges)
        g2 = Graph.from_edges(n, list(g.edges()) + [extra])
        assert degeneracy(g2)[0] >= degeneracy(g)[0]
        assert clique_number(g2) >= clique_number(g)
        assert oracles.brute_max_balanced_biclique(g2) >= \
            oracles.brute_max_balanced_biclique(g)


def test_budget_exhaustion_is_explicit():
    g = random_graph(random.Random(7), 14, 0.5)
    with pytest.raises(BudgetExceeded):
        longest_induced_path(g, budget=5)
    try:
        max_independent_set(g, budget=3)
    except BudgetExceeded as e:
        assert e.best is not None
    else:
        pytest.fail("expected BudgetExceeded")


def test_verify_certificate_rows():
    c4 = cycle_graph(4)
    assert verify_certificate(c4, InducedCycle((0, 1, 2, 3)))
    bad = BicliqueWitness((0, 1), (2, 3))  # 0-2 missing in C4
    assert not verify_certificate(c4, bad)
    c5 = cycle_graph(5)
    _, order = degeneracy(c5)
    assert order.bound == 2
    assert verify_certificate(c5, order)
    assert not verify_certificate(c5, EliminationOrder(order.order, 1))
