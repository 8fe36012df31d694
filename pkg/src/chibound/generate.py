"""Graph family generators for the experiment harness.

Every family is deterministic for a fixed seed.  Class guarantees (split
graphs have no induced 5-vertex path, cographs no induced 4-vertex path,
chordal and interval graphs no induced cycle beyond triangles) follow from
the constructions and are re-checked by the detectors in the test suite.
"""
from __future__ import annotations

import random
from itertools import combinations, permutations, product
from typing import Iterator, Optional, Sequence

from .graph import Graph

FAMILIES = ("gnp", "tree", "split", "cograph", "chordal", "interval",
            "planted-cycle", "planted-biclique", "all-small")


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n <= 1:
        return Graph.from_edges(n, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_split(n: int, rng: random.Random) -> Graph:
    """Clique plus independent set with random cross edges."""
    k = rng.randint(0, n)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for i in range(k):
        for j in range(k, n):
            if rng.random() < 0.4:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def random_cograph(n: int, rng: random.Random) -> Graph:
    """Random cotree: recursive disjoint unions and joins."""
    edges: list[tuple[int, int]] = []

    def build(vs: list[int]) -> None:
        if len(vs) <= 1:
            return
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        if rng.random() < 0.5:
            edges.extend((a, b) for a in left for b in right)
        build(left)
        build(right)

    build(list(range(n)))
    return Graph.from_edges(n, edges)


def random_chordal(n: int, rng: random.Random) -> Graph:
    """Intersection graph of random subtrees of a random tree."""
    if n == 0:
        return Graph.from_edges(0, [])
    host = random_tree(max(n, 2), rng)
    subtrees = []
    for _ in range(n):
        size = rng.randint(1, max(1, host.n // 2))
        start = rng.randrange(host.n)
        chosen = {start}
        frontier = [start]
        while frontier and len(chosen) < size:
            v = frontier.pop(rng.randrange(len(frontier)))
            for w in sorted(host.adj(v)):
                if w not in chosen and len(chosen) < size:
                    chosen.add(w)
                    frontier.append(w)
        subtrees.append(chosen)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if subtrees[i] & subtrees[j]]
    return Graph.from_edges(n, edges)


def random_interval(n: int, rng: random.Random) -> Graph:
    points = [(rng.random(), rng.random()) for _ in range(n)]
    spans = [(min(a, b), max(a, b)) for a, b in points]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if spans[i][0] <= spans[j][1] and spans[j][0] <= spans[i][1]]
    return Graph.from_edges(n, edges)


def planted_cycle(n: int, t: int, rng: random.Random) -> Graph:
    """A chordless cycle on max(t, 3) vertices with pendant trees hung off
    it, so the largest induced cycle length is known exactly."""
    m = max(t, 3)
    if n < m:
        raise ValueError("n must be at least t")
    edges = [(i, (i + 1) % m) for i in range(m)]
    for v in range(m, n):
        edges.append((v, rng.randrange(v)))
    g = Graph.from_edges(n, edges)
    return g


def planted_biclique(n: int, ell: int, rng: random.Random) -> Graph:
    """K_{ell,ell} on the first 2*ell vertices plus sparse random noise."""
    if n < 2 * ell:
        raise ValueError("n must be at least 2*ell")
    edges = {(i, ell + j) for i in range(ell) for j in range(ell)}
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < 0.1:
                edges.add((i, j))
    return Graph.from_edges(n, sorted(edges))


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _canonical_key(n: int, masks: list[int]) -> tuple:
    """Canonical form: degree-profile classes, then the minimum adjacency
    bitstring over class-respecting orderings."""
    degs = [masks[v].bit_count() for v in range(n)]
    inv = []
    for v in range(n):
        nd = tuple(sorted(degs[w] for w in _bits(masks[v])))
        inv.append((degs[v], nd))
    classes: dict[tuple, list[int]] = {}
    for v in range(n):
        classes.setdefault(inv[v], []).append(v)
    ordered = sorted(classes.items())
    signature = tuple((key, len(vs)) for key, vs in ordered)
    best: Optional[int] = None
    pools = [permutations(vs) for _, vs in ordered]
    for combo in product(*pools):
        order = [v for block in combo for v in block]
        pos = {v: i for i, v in enumerate(order)}
        bitstring = 0
        bit = 0
        for j in range(1, n):
            aj = masks[order[j]]
            for i in range(j):
                bitstring = (bitstring << 1) | ((aj >> order[i]) & 1)
                bit += 1
        if best is None or bitstring < best:
            best = bitstring
    return (n, signature, best)


def _graph_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def all_small(max_n: int) -> Iterator[Graph]:
    """Every graph up to isomorphism with 1..max_n vertices, by canonical
    augmentation: each level extends the previous one by a new vertex with
    every possible neighborhood, deduplicated on a canonical key.

    Feasible up to 7 vertices in reasonable time; 8 and 9 work but are slow.
    """
    level: dict[tuple, Graph] = {}
    single = Graph.from_edges(1, [])
    level[_canonical_key(1, [0])] = single
    for g in [single]:
        yield g
    for n in range(2, max_n + 1):
        nxt: dict[tuple, Graph] = {}
        for g in level.values():
            base = list(g.edges())
            for subset_mask in range(1 << g.n):
                edges = base + [(v, g.n) for v in _bits(subset_mask)]
                cand = Graph.from_edges(n, edges)
                key = _canonical_key(n, _graph_masks(cand))
                if key not in nxt:
                    nxt[key] = cand
        level = dict(sorted(nxt.items()))
        for key in sorted(level):
            yield level[key]


def pipeline_ideal_instance(t: int, copies: int = 1,
                            spine_len: Optional[int] = None) -> Graph:
    """Anchors joined pairwise by bundles of long internally-clean paths.

    Contracting the paths leaves a complete graph on the anchors; every
    cycle in the instance is long, so the pipeline's branch-diameter
    reconstruction recovers an induced cycle with at least t vertices.
    """
    m = t // 2
    if m < 3:
        raise ValueError("t must be at least 6")
    length = spine_len if spine_len is not None else 2 * t - 1
    edges: list[tuple[int, int]] = []
    nxt = m
    for i, j in combinations(range(m), 2):
        for _ in range(copies):
            spine = list(range(nxt, nxt + length))
            nxt += length
            edges.append((i, spine[0]))
            edges.append((j, spine[-1]))
            edges.extend((spine[k], spine[k + 1]) for k in range(length - 1))
    return Graph.from_edges(nxt, edges)


def pipeline_full_instance(t: int, copies: int = 2
                           ) -> tuple[Graph, list[frozenset[int]]]:
    """A planted full-vertex minor that drives steps 3-6 end to end.

    Anchor sets {a_i, s_i} are pairwise joined through the a-s biclique;
    each connector set is a single bridge vertex (adjacent to its
    designated anchor pair only) plus a tail making it adjacent to
    everything else.  Returns the graph and the branch sets, ordered so the
    round-robin group assignment matches the designated pairs.
    """
    m = t // 2
    if m < 3:
        raise ValueError("t must be at least 6")
    pair_seq = list(combinations(range(m), 2))
    a = list(range(m))
    s = list(range(m, 2 * m))
    edges: set[tuple[int, int]] = set()
    for i in a:
        for j in range(m):
            edges.add((i, s[j]))
    branch_sets: list[frozenset[int]] = [frozenset({a[i], s[i]}) for i in range(m)]
    connector_sets: list[frozenset[int]] = []
    tails: list[int] = []
    nxt = 2 * m
    for _ in range(copies):
        for (i, j) in pair_seq:
            x, gtail = nxt, nxt + 1
            nxt += 2
            edges.add((i, x))
            edges.add((j, x))
            edges.add((x, gtail))
            for k in range(m):
                edges.add((a[k], gtail))
                edges.add((s[k], gtail))
            for other in tails:
                edges.add((other, gtail))
            tails.append(gtail)
            connector_sets.append(frozenset({x, gtail}))
    g = Graph.from_edges(nxt, sorted(edges))
    return g, branch_sets + connector_sets


def pipeline_poison_instance(t: int, ell: int, per_pair: int
                             ) -> tuple[Graph, list[frozenset[int]]]:
    """A planted minor whose connector paths all carry overloaded vertices,
    so the step-4 trace check surfaces a biclique.

    Every bridge vertex is adjacent to all anchors; `per_pair` controls how
    many connector sets each anchor pair receives (enough of them defeats
    the trace bound).
    """
    m = t // 2
    pair_seq = list(combinations(range(m), 2))
    a = list(range(m))
    s = list(range(m, 2 * m))
    edges: set[tuple[int, int]] = set()
    for i in a:
        for j in range(m):
            edges.add((i, s[j]))
    branch_sets: list[frozenset[int]] = [frozenset({a[i], s[i]}) for i in range(m)]
    connector_sets: list[frozenset[int]] = []
    tails: list[int] = []
    nxt = 2 * m
    for _ in range(per_pair):
        for _pair in pair_seq:
            x, gtail = nxt, nxt + 1
            nxt += 2
            for k in range(m):
                edges.add((a[k], x))
                edges.add((s[k], gtail))
            edges.add((x, gtail))
            for other in tails:
                edges.add((other, gtail))
            tails.append(gtail)
            connector_sets.append(frozenset({x, gtail}))
    g = Graph.from_edges(nxt, sorted(edges))
    return g, branch_sets + connector_sets


def generate(family: str, params: Optional[dict] = None, seed: int = 0,
             count: int = 1) -> Iterator[Graph]:
    """Deterministic stream of graphs from one family."""
    params = dict(params or {})
    rng = random.Random(seed)
    if family == "all-small":
        max_n = int(params.get("max_n", params.get("n", 7)))
        yield from all_small(max_n)
        return
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    n = int(params.get("n", 10))
    for _ in range(count):
        if family == "gnp":
            yield gnp(n, float(params.get("p", 0.5)), rng)
        elif family == "tree":
            yield random_tree(n, rng)
        elif family == "split":
            yield random_split(n, rng)
        elif family == "cograph":
            yield random_cograph(n, rng)
        elif family == "chordal":
            yield random_chordal(n, rng)
        elif family == "interval":
            yield random_interval(n, rng)
        elif family == "planted-cycle":
            yield planted_cycle(n, int(params.get("t", 5)), rng)
        elif family == "planted-biclique":
            yield planted_biclique(n, int(params.get("ell", 2)), rng)
