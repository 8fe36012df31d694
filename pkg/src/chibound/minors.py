"""Clique minors: validation, search, minimization, and the constructions
that turn a large minimal minor into either a full-vertex minor or a long
induced cycle.

Path lengths are counted in vertices throughout (a single vertex is a path
of 1), matching how diameters and cycle lengths are compared against t.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .certificates import InducedCycle, verify_certificate
from .detect import BudgetExceeded, SearchBudget, max_clique
from .graph import Graph, VertexSet


@dataclass(frozen=True)
class CliqueMinor:
    """Pairwise disjoint connected branch sets, pairwise joined by an edge."""

    branch_sets: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.branch_sets)

    def to_json(self) -> list[list[int]]:
        return [sorted(s) for s in self.branch_sets]

    @classmethod
    def from_sets(cls, sets: Sequence) -> "CliqueMinor":
        return cls(tuple(frozenset(s) for s in sets))


def sets_adjacent(g: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    small, other = (a, b) if len(a) <= len(b) else (b, a)
    return any(g.adj(v) & other for v in small)


def validate_minor(g: Graph, minor: CliqueMinor) -> bool:
    """Disjointness, connectivity of each branch set, pairwise adjacency."""
    sets = minor.branch_sets
    seen: set[int] = set()
    for s in sets:
        if not s or (s & seen):
            return False
        seen |= s
        for v in s:
            if not (0 <= v < g.n):
                raise ValueError(f"vertex {v} out of range")
        if not g.is_connected_subset(s):
            return False
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not sets_adjacent(g, sets[i], sets[j]):
                return False
    return True


def _find_cycle(g: Graph) -> Optional[list[int]]:
    """Any cycle, via union-find: the first edge closing a component plus
    the forest path between its endpoints.  None in a forest."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            prev = {u: -1}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                if x == v:
                    break
                for w in sorted(forest[x]):
                    if w not in prev:
                        prev[w] = x
                        queue.append(w)
            path = [v]
            while prev[path[-1]] != -1:
                path.append(prev[path[-1]])
            return path
        parent[ru] = rv
        forest[u].add(v)
        forest[v].add(u)
    return None


def _split_cycle(cycle: list[int], parts: int) -> list[frozenset[int]]:
    n = len(cycle)
    bounds = [round(i * n / parts) for i in range(parts + 1)]
    return [frozenset(cycle[bounds[i]:bounds[i + 1]]) for i in range(parts)]


def _series_parallel_reducible(g: Graph) -> bool:
    """True iff g has no K4 minor: degree-<=1 deletions plus degree-2
    smoothing reduce such graphs to nothing."""
    adj = {v: set(g.adj(v)) for v in range(g.n)}
    alive = set(range(g.n))
    changed = True
    while changed and alive:
        changed = False
        for v in sorted(alive):
            dv = len(adj[v])
            if dv <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                adj[v].clear()
                alive.discard(v)
                changed = True
            elif dv == 2:
                a, b = sorted(adj[v])
                adj[a].discard(v)
                adj[b].discard(v)
                if a != b and b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                adj[v].clear()
                alive.discard(v)
                changed = True
    return not alive


def _quotient_nonadjacent(g: Graph, nodes: dict[int, set[int]]) -> set[frozenset[int]]:
    ids = sorted(nodes)
    out = set()
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if not sets_adjacent(g, frozenset(nodes[a]), frozenset(nodes[b])):
                out.add(frozenset((a, b)))
    return out


def _greedy_contraction(g: Graph, p: int,
                        rng: Optional[random.Random]) -> Optional[CliqueMinor]:
    """Contract the edge with the leanest merged neighborhood until p
    supernodes remain; succeed iff the quotient is complete."""
    nodes: dict[int, set[int]] = {v: {v} for v in range(g.n)}
    neigh: dict[int, set[int]] = {v: set(g.adj(v)) for v in range(g.n)}
    while len(nodes) > p:
        best_key = None
        best_edge = None
        candidates = []
        for a in sorted(nodes):
            for b in sorted(neigh[a]):
                if b <= a:
                    continue
                merged = (neigh[a] | neigh[b]) - {a, b}
                candidates.append((len(merged), a, b))
        if not candidates:
            return None
        candidates.sort()
        if rng is not None:
            cutoff = candidates[0][0]
            pool = [c for c in candidates if c[0] == cutoff]
            _, a, b = rng.choice(pool)
        else:
            _, a, b = candidates[0]
        nodes[a] |= nodes[b]
        neigh[a] = (neigh[a] | neigh[b]) - {a, b}
        for c in neigh[b]:
            if c != a:
                neigh[c].discard(b)
                neigh[c].add(a)
        del nodes[b], neigh[b]
    ids = sorted(nodes)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if b not in neigh[a]:
                return None
    return CliqueMinor.from_sets([nodes[a] for a in ids])


def _assignment_search(g: Graph, p: int, bud: SearchBudget) -> Optional[CliqueMinor]:
    """Complete enumeration: assign each vertex (in order) to a part or skip;
    parts open in vertex order, structure checked at the leaves."""
    parts: list[set[int]] = [set() for _ in range(p)]

    def ok() -> bool:
        for s in parts:
            if not g.is_connected_subset(s):
                return False
        for i in range(p):
            for j in range(i + 1, p):
                if not sets_adjacent(g, frozenset(parts[i]), frozenset(parts[j])):
                    return False
        return True

    def rec(i: int, opened: int) -> bool:
        bud.spend()
        if g.n - i < p - opened:
            return False
        if i == g.n:
            return opened == p and ok()
        for j in range(min(opened + 1, p)):
            parts[j].add(i)
            if rec(i + 1, max(opened, j + 1)):
                return True
            parts[j].remove(i)
        return rec(i + 1, opened)

    if rec(0, 0):
        return CliqueMinor.from_sets([set(s) for s in parts])
    return None


def find_clique_minor(g: Graph, p: int, budget: Optional[int] = None,
                      seed: int = 0, restarts: int = 16
                      ) -> Optional[CliqueMinor]:
    """A clique minor of size p, or None when absence is proven.

    Exact for p <= 4 (cycle detection, series-parallel reduction) and, on
    small graphs, by exhaustive assignment search.  Otherwise greedy edge
    contraction with randomized restarts; when those fail and the exact
    fallback is infeasible, raises BudgetExceeded (inconclusive, not absent).
    """
    if p < 1:
        raise ValueError("p must be positive")
    if p == 1:
        return CliqueMinor.from_sets([{0}]) if g.n else None
    if p == 2:
        for u in range(g.n):
            if g.adj(u):
                return CliqueMinor.from_sets([{u}, {min(g.adj(u))}])
        return None
    if p == 3:
        cycle = _find_cycle(g)
        if cycle is None:
            return None
        return CliqueMinor(tuple(_split_cycle(cycle, 3)))
    if p == 4 and _series_parallel_reducible(g):
        return None

    clique = max_clique(g, budget)
    if len(clique) >= p:
        return CliqueMinor.from_sets([{v} for v in clique[:p]])

    found = _greedy_contraction(g, p, None)
    rng = random.Random(seed)
    for _ in range(restarts):
        if found is not None:
            break
        found = _greedy_contraction(g, p, rng)
    if found is not None:
        assert validate_minor(g, found)
        return found

    bud = SearchBudget(budget)
    result = _assignment_search(g, p, bud)
    if result is not None:
        assert validate_minor(g, result)
        return result
    if p == 4:
        # reduction said a K4 minor exists; the search cannot conclude absence
        raise BudgetExceeded("K4 minor exists but no witness found in budget")
    return None


def minimize_minor(g: Graph, minor: CliqueMinor) -> CliqueMinor:
    """Remove branch-set vertices that are neither cutvertices nor hold a
    private adjacent branch set, until none is removable."""
    if not validate_minor(g, minor):
        raise ValueError("input is not a valid clique minor")
    sets = [set(s) for s in minor.branch_sets]

    def removable(idx: int, v: int) -> bool:
        k = sets[idx]
        if len(k) == 1:
            return False
        rest = frozenset(k - {v})
        if not g.is_connected_subset(rest):
            return False  # cutvertex
        for j, other in enumerate(sets):
            if j == idx:
                continue
            fo = frozenset(other)
            if g.adj(v) & fo and not sets_adjacent(g, rest, fo):
                return False  # private branch set
        return True

    changed = True
    while changed:
        changed = False
        for idx in range(len(sets)):
            for v in sorted(sets[idx], reverse=True):
                if removable(idx, v):
                    sets[idx].discard(v)
                    changed = True
    result = CliqueMinor.from_sets(sets)
    assert validate_minor(g, result)
    return result


def _bfs_path(g: Graph, allowed: frozenset[int], src: int, dst: int
              ) -> Optional[list[int]]:
    """Shortest src-dst path inside g[allowed]; deterministic parent choice."""
    if src == dst:
        return [src]
    prev = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in sorted(g.adj(v)):
            if w in allowed and w not in prev:
                prev[w] = v
                if w == dst:
                    path = [w]
                    while prev[path[-1]] != -1:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(w)
    return None


def _eccentric_pair(g: Graph, s: frozenset[int]) -> tuple[int, int, int]:
    """(u, v, dist) with maximum distance inside g[s]; lexicographic tie-break."""
    best = (0, -1, -1)
    for u in sorted(s):
        dist = {u: 0}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            for w in sorted(g.adj(v)):
                if w in s and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        for v in sorted(s):
            if v > u and dist.get(v, -1) > best[0]:
                best = (dist[v], u, v)
    return best[1], best[2], best[0]


def check_branch_diameter(g: Graph, minor: CliqueMinor, t: int
                          ) -> Optional[InducedCycle]:
    """If a branch set of a minimal minor holds a shortest path with >= t
    vertices, rebuild the induced cycle through the endpoints' private
    branch sets; None when all diameters are small."""
    if len(minor) < 3:
        raise ValueError("need a minor of size at least 3")
    sets = minor.branch_sets
    for idx, k in enumerate(sets):
        u, v, dist = _eccentric_pair(g, k)
        if u < 0 or dist + 1 < t:
            continue
        path = _bfs_path(g, k, u, v)
        ku = _private_set(g, sets, idx, u)
        kv = _private_set(g, sets, idx, v)
        if ku is None or kv is None:
            raise ValueError("minor is not minimal: endpoint lacks a private set")
        allowed = frozenset(sets[ku] | sets[kv] | {u, v})
        connector = _bfs_path(g, allowed, u, v)
        assert connector is not None and len(connector) >= 4
        cycle = path + connector[-2:0:-1]
        cert = InducedCycle(tuple(cycle))
        assert verify_certificate(g, cert) and len(cycle) >= t
        return cert
    return None


def _private_set(g: Graph, sets: Sequence[frozenset[int]], idx: int,
                 v: int) -> Optional[int]:
    rest = sets[idx] - {v}
    for j, other in enumerate(sets):
        if j == idx:
            continue
        if g.adj(v) & other and not sets_adjacent(g, rest, other):
            return j
    return None


def branch_adjacency_counts(g: Graph, minor: CliqueMinor) -> dict[int, int]:
    """For each vertex of the minor, how many foreign branch sets it touches."""
    owner: dict[int, int] = {}
    for i, s in enumerate(minor.branch_sets):
        for v in s:
            owner[v] = i
    counts: dict[int, int] = {}
    for i, s in enumerate(minor.branch_sets):
        for v in s:
            seen = set()
            for w in g.adj(v):
                j = owner.get(w)
                if j is not None and j != i:
                    seen.add(j)
            counts[v] = len(seen)
    return counts


def find_high_adjacency_sets(g: Graph, minor: CliqueMinor, p: int, t: int,
                             seed: int = 0, retries: int = 64
                             ) -> tuple[list[tuple[int, int]], Optional[InducedCycle]]:
    """At least p branch sets holding a vertex adjacent to >= p*p branch
    sets, as (set index, vertex) pairs; if too few exist, the randomized
    t-segment construction produces an induced cycle of >= t vertices.
    """
    counts = branch_adjacency_counts(g, minor)
    threshold = p * p
    selected: list[tuple[int, int]] = []
    low_sets: list[int] = []
    for i, s in enumerate(minor.branch_sets):
        hits = sorted(v for v in s if counts[v] >= threshold)
        if hits:
            selected.append((i, hits[0]))
        else:
            low_sets.append(i)
    if len(selected) >= p:
        return selected[:p], None

    rng = random.Random(seed)
    if len(low_sets) < t:
        raise BudgetExceeded("too few low-adjacency branch sets to sample from")
    for _ in range(retries):
        sample = rng.sample(low_sets, t)
        cycle = _segment_cycle(g, minor, sample, t)
        if cycle is not None:
            return selected, cycle
    raise BudgetExceeded("randomized cycle construction exhausted retries")


def _connector(g: Graph, a: frozenset[int], b: frozenset[int]) -> tuple[int, int]:
    """Deterministic adjacent pair (va in a, vb in b)."""
    for va in sorted(a):
        hit = g.adj(va) & b
        if hit:
            return va, min(hit)
    raise ValueError("branch sets are not adjacent")


def _segment_cycle(g: Graph, minor: CliqueMinor, sample: list[int],
                   t: int) -> Optional[InducedCycle]:
    """Walk the sampled branch sets in cyclic order through their
    connectors; reject samples with edges between non-consecutive
    segments, then take a shortest segment-monotone cycle, which is
    induced."""
    sets = [minor.branch_sets[i] for i in sample]
    into: list[int] = [0] * t   # entry vertex of segment i (adjacent to i-1)
    out: list[int] = [0] * t    # exit vertex of segment i (adjacent to i+1)
    for i in range(t):
        j = (i + 1) % t
        vi, vj = _connector(g, sets[i], sets[j])
        out[i] = vi
        into[j] = vj
    segments: list[list[int]] = []
    for i in range(t):
        seg = _bfs_path(g, sets[i], into[i], out[i])
        assert seg is not None
        segments.append(seg)
    seg_sets = [frozenset(seg) for seg in segments]
    for i in range(t):
        for j in range(i + 1, t):
            if j - i == 1 or (i == 0 and j == t - 1):
                continue
            if any(g.adj(v) & seg_sets[j] for v in seg_sets[i]):
                return None
    cycle = _monotone_shortest_cycle(g, seg_sets, t)
    if cycle is None:
        return None
    cert = InducedCycle(tuple(cycle))
    if len(cycle) >= t and verify_certificate(g, cert):
        return cert
    return None


def _monotone_shortest_cycle(g: Graph, seg_sets: list[frozenset[int]],
                             t: int) -> Optional[list[int]]:
    """Shortest cycle visiting the segments in cyclic order; BFS over
    (vertex, segment index) states from each anchor in segment 0."""
    best: Optional[list[int]] = None
    for anchor in sorted(seg_sets[0]):
        start = (anchor, 0)
        prev: dict[tuple[int, int], Optional[tuple[int, int]]] = {start: None}
        queue = deque([start])
        closed = None
        while queue:
            state = queue.popleft()
            v, layer = state
            if layer == t - 1 and anchor in g.adj(v):
                closed = state
                break
            for w in sorted(g.adj(v)):
                for nxt in (layer, layer + 1):
                    if nxt < t and w in seg_sets[nxt] and (w, nxt) not in prev:
                        prev[(w, nxt)] = state
                        queue.append((w, nxt))
        if closed is None:
            continue
        cycle = []
        state: Optional[tuple[int, int]] = closed
        while state is not None:
            cycle.append(state[0])
            state = prev[state]
        cycle.reverse()
        if len(set(cycle)) == len(cycle) and (best is None or len(cycle) < len(best)):
            best = cycle
    return best


def full_vertices(g: Graph, minor: CliqueMinor) -> list[Optional[int]]:
    """Per branch set, the least vertex adjacent to every other branch set."""
    out: list[Optional[int]] = []
    for i, s in enumerate(minor.branch_sets):
        found = None
        for v in sorted(s):
            if all(j == i or (g.adj(v) & other)
                   for j, other in enumerate(minor.branch_sets)):
                found = v
                break
        out.append(found)
    return out


def full_vertex_minor(g: Graph, minor: CliqueMinor, p: int, t: int,
                      seed: int = 0) -> Union[CliqueMinor, InducedCycle]:
    """A clique minor of size p whose every branch set contains a full
    vertex and has all shortest paths under 2t vertices; an induced cycle
    of >= t vertices comes back instead when one falls out of the
    diameter or adjacency arguments along the way.
    """
    if not validate_minor(g, minor):
        raise ValueError("input is not a valid clique minor")
    if p < 1:
        raise ValueError("p must be positive")
    minimal = minimize_minor(g, minor)
    if len(minimal) >= 3:
        cycle = check_branch_diameter(g, minimal, t)
        if cycle is not None:
            return cycle
    if p == 1:
        return CliqueMinor((minimal.branch_sets[0],))
    selected, cycle = find_high_adjacency_sets(g, minimal, p, t, seed)
    if cycle is not None:
        return cycle
    base = [idx for idx, _ in selected]
    anchors = {idx: v for idx, v in selected}
    owner: dict[int, int] = {}
    for i, s in enumerate(minimal.branch_sets):
        for v in s:
            owner[v] = i
    neighborhoods: dict[int, list[int]] = {}
    for idx in base:
        b = anchors[idx]
        adj_sets = sorted({owner[w] for w in g.adj(b)
                           if w in owner and owner[w] != idx})
        neighborhoods[idx] = adj_sets
    used = set(base)
    assignment: dict[tuple[int, int], int] = {}
    for i in base:
        for j in base:
            if i == j:
                continue
            pick = next((c for c in neighborhoods[j] if c not in used), None)
            if pick is None:
                raise BudgetExceeded(
                    "not enough spare branch sets for the full-vertex construction")
            assignment[(i, j)] = pick
            used.add(pick)
    new_sets = []
    for i in base:
        merged = set(minimal.branch_sets[i])
        for j in base:
            if j != i:
                merged |= minimal.branch_sets[assignment[(i, j)]]
        new_sets.append(merged)
    result = CliqueMinor.from_sets(new_sets)
    assert validate_minor(g, result)
    for pos, i in enumerate(base):
        b = anchors[i]
        for q, s in enumerate(result.branch_sets):
            if q != pos:
                assert g.adj(b) & s, "designated vertex lost fullness"
    for s in result.branch_sets:
        _, _, dist = _eccentric_pair(g, s)
        assert dist + 1 < 2 * t, "branch set diameter exceeds 2t"
    return result
