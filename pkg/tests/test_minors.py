import random

import pytest

from chibound.certificates import InducedCycle, verify_certificate
from chibound.detect import BudgetExceeded
from chibound.graph import Graph, complete_graph, cycle_graph, path_graph
from chibound.minors import (CliqueMinor, check_branch_diameter,
                             find_clique_minor, find_high_adjacency_sets,
                             full_vertex_minor, full_vertices, minimize_minor,
                             validate_minor)
from conftest import random_graph


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def star_ring(t: int) -> tuple[Graph, CliqueMinor]:
    """t branch sets, each a star; pairwise adjacency via leaf-leaf edges.

    Every vertex touches at most one foreign set, so no vertex passes any
    high-adjacency threshold above 1.
    """
    def leaf(i: int, j: int) -> int:
        return t + i * (t - 1) + (j if j < i else j - 1)

    edges = []
    for i in range(t):
        for j in range(t):
            if i != j:
                edges.append((i, leaf(i, j)))
                if i < j:
                    edges.append((leaf(i, j), leaf(j, i)))
    g = Graph.from_edges(t + t * (t - 1), edges)
    sets = [frozenset({i} | {leaf(i, j) for j in range(t) if j != i})
            for i in range(t)]
    return g, CliqueMinor(tuple(sets))


def test_validate_examples():
    k4 = complete_graph(4)
    singletons = CliqueMinor.from_sets([{i} for i in range(4)])
    assert validate_minor(k4, singletons)
    disconnected = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not validate_minor(disconnected,
                              CliqueMinor.from_sets([{0}, {1, 2}]))
    no_cross = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not validate_minor(no_cross, CliqueMinor.from_sets([{0, 1}, {2, 3}]))
    overlapping = CliqueMinor.from_sets([{0, 1}, {1, 2}])
    assert not validate_minor(k4, overlapping)


def test_find_minor_small_p():
    k5 = complete_graph(5)
    m = find_clique_minor(k5, 5)
    assert m is not None and all(len(s) == 1 for s in m.branch_sets)
    tree = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    assert find_clique_minor(tree, 3) is None
    assert find_clique_minor(tree, 2) is not None
    assert find_clique_minor(Graph.from_edges(1, []), 1) is not None
    assert find_clique_minor(Graph.from_edges(2, []), 2) is None
    c5 = cycle_graph(5)
    m3 = find_clique_minor(c5, 3)
    assert m3 is not None and validate_minor(c5, m3)
    assert find_clique_minor(c5, 4) is None  # series-parallel


def test_find_minor_petersen():
    m = find_clique_minor(petersen(), 5)
    assert m is not None
    assert validate_minor(petersen(), m)
    assert len(m) == 5


def test_find_minor_k4_route():
    # K4 subdivision: min degree 3 after reduction
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 2), (1, 5),
                             (5, 3), (2, 3)])
    m = find_clique_minor(g, 4)
    assert m is not None and validate_minor(g, m)


def test_minimize_examples():
    k4 = complete_graph(4)
    singles = CliqueMinor.from_sets([{i} for i in range(4)])
    assert minimize_minor(k4, singles) == singles

    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    grown = CliqueMinor.from_sets([{0}, {1}, {2, 3}])
    slim = minimize_minor(g, grown)
    assert slim == CliqueMinor.from_sets([{0}, {1}, {2}])

    # path branch set with a redundant tail
    g2 = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    slim2 = minimize_minor(g2, CliqueMinor.from_sets([{0}, {1}, {2, 3, 4}]))
    assert slim2 == CliqueMinor.from_sets([{0}, {1}, {2}])


def _removable_exists(g, minor) -> bool:
    for idx, k in enumerate(minor.branch_sets):
        for v in k:
            if len(k) == 1:
                continue
            rest = frozenset(k - {v})
            if not g.is_connected_subset(rest):
                continue
            private = False
            for j, other in enumerate(minor.branch_sets):
                if j == idx:
                    continue
                from chibound.minors import sets_adjacent
                if g.adj(v) & other and not sets_adjacent(g, rest, other):
                    private = True
                    break
            if not private:
                return True
    return False


def test_minimize_invariants_random(rng):
    built = 0
    while built < 30:
        g = random_graph(rng, 10, 0.5)
        m = None
        try:
            m = find_clique_minor(g, 3)
        except BudgetExceeded:
            continue
        if m is None:
            continue
        built += 1
        slim = minimize_minor(g, m)
        assert len(slim) == len(m)
        assert validate_minor(g, slim)
        assert not _removable_exists(g, slim)


def test_branch_diameter_examples():
    k4 = complete_graph(4)
    singles = CliqueMinor.from_sets([{i} for i in range(4)])
    assert check_branch_diameter(k4, singles, 3) is None

    # planted long branch set with private endpoint sets
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 0), (6, 4),
                             (5, 6)])
    minor = CliqueMinor.from_sets([{0, 1, 2, 3, 4}, {5}, {6}])
    assert validate_minor(g, minor)
    cert = check_branch_diameter(g, minor, 5)
    assert cert is not None and len(cert.vertices) >= 5
    assert verify_certificate(g, cert)
    assert check_branch_diameter(g, minor, 100) is None

    with pytest.raises(ValueError):
        check_branch_diameter(k4, CliqueMinor.from_sets([{0}, {1}]), 3)


def test_high_adjacency_examples():
    k9 = complete_graph(9)
    singles = CliqueMinor.from_sets([{i} for i in range(9)])
    sel, cyc = find_high_adjacency_sets(k9, singles, 2, 4)
    assert cyc is None and len(sel) == 2

    # p = 1: any branch set adjacent to >= 1 other always qualifies
    g2 = Graph.from_edges(2, [(0, 1)])
    sel, cyc = find_high_adjacency_sets(
        g2, CliqueMinor.from_sets([{0}, {1}]), 1, 4)
    assert cyc is None and len(sel) == 1


def test_high_adjacency_cycle_branch():
    t = 6
    g, minor = star_ring(t)
    assert validate_minor(g, minor)
    sel, cyc = find_high_adjacency_sets(g, minor, 2, t, seed=1)
    assert cyc is not None
    assert len(cyc.vertices) >= t
    assert verify_certificate(g, cyc)


def test_full_vertex_minor_on_clique():
    k12 = complete_graph(12)
    singles = CliqueMinor.from_sets([{i} for i in range(12)])
    out = full_vertex_minor(k12, singles, 3, 6)
    assert isinstance(out, CliqueMinor) and len(out) == 3
    assert validate_minor(k12, out)
    fulls = full_vertices(k12, out)
    assert all(v is not None for v in fulls)


def test_full_vertex_minor_p1():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    out = full_vertex_minor(g, CliqueMinor.from_sets([{0}, {1}, {2}]), 1, 4)
    assert isinstance(out, CliqueMinor) and len(out) == 1


def test_full_vertex_minor_dense_random(rng):
    n, k = 40, 20
    for attempt in range(30):
        extra = [(2 * i, 2 * i + 1) for i in range(k)]
        g = Graph.from_edges(n, list({(i, j) for i in range(n)
                                      for j in range(i + 1, n)
                                      if rng.random() < 0.8} | set(extra)))
        minor = CliqueMinor.from_sets([{2 * i, 2 * i + 1} for i in range(k)])
        if not validate_minor(g, minor):
            continue
        out = full_vertex_minor(g, minor, 2, 10)
        if isinstance(out, InducedCycle):
            assert verify_certificate(g, out)
            assert len(out.vertices) >= 10
        else:
            assert validate_minor(g, out)
            fulls = full_vertices(g, out)
            assert all(v is not None for v in fulls)
        return
    pytest.fail("no valid planted minor arose in 30 attempts")


def test_full_vertex_minor_cycle_shortcut():
    # long-diameter branch set: the cycle reconstruction fires
    g = Graph.from_edges(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 0),
                             (7, 5), (6, 7), (6, 8), (7, 8), (8, 0)])
    minor = CliqueMinor.from_sets([{0, 1, 2, 3, 4, 5}, {6}, {7}, {8}])
    assert validate_minor(g, minor)
    out = full_vertex_minor(g, minor, 2, 5, seed=0)
    assert isinstance(out, InducedCycle)
    assert len(out.vertices) >= 5
    assert verify_certificate(g, out)
