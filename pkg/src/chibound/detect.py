"""Exact detectors for forbidden structures, each returning a verifiable witness.

Every exponential search takes a node budget and raises BudgetExceeded when it
runs out, which is distinct from a proven "absent".  Traversal order is
ascending vertex id throughout so certificates are reproducible.
"""
from __future__ import annotations

from typing import Optional

from .certificates import (BicliqueWitness, EliminationOrder, InducedCycle,
                           IndependentSetWitness, SubdividedStarWitness)
from .graph import Graph, OrientedPath, VertexSet

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    """Raised when a search exhausts its node budget before reaching a verdict.

    `best` carries the best object found so far, when the search has one.
    """

    def __init__(self, message: str = "search budget exhausted", best=None):
        super().__init__(message)
        self.best = best


class SearchBudget:
    """Counts search nodes; spend() raises once the allowance is gone."""

    __slots__ = ("remaining",)

    def __init__(self, nodes: Optional[int] = None):
        self.remaining = DEFAULT_BUDGET if nodes is None else nodes

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceeded()


def find_biclique_subgraph(g: Graph, a: int, b: int,
                           budget: Optional[int] = None) -> Optional[BicliqueWitness]:
    """Find K_{a,b} as a (not necessarily induced) subgraph, or prove absence.

    Enumerates candidate left sides of size min(a, b) in ascending id order,
    pruning on the common neighborhood of the chosen vertices.
    """
    if a < 1 or b < 1:
        raise ValueError("biclique sides must be at least 1")
    small, large = min(a, b), max(a, b)
    bud = SearchBudget(budget)
    # A left vertex needs >= large neighbors.
    candidates = [v for v in range(g.n) if g.degree(v) >= large]

    def extend(start: int, chosen: list[int], common: frozenset[int]) -> Optional[tuple]:
        bud.spend()
        if len(chosen) == small:
            right = sorted(common)[:large]
            return tuple(chosen), tuple(right)
        needed = small - len(chosen)
        for idx in range(start, len(candidates) - needed + 1):
            v = candidates[idx]
            new_common = common & g.adj(v) if chosen else g.adj(v)
            if len(new_common) < large:
                continue
            chosen.append(v)
            found = extend(idx + 1, chosen, new_common)
            if found:
                return found
            chosen.pop()
        return None

    found = extend(0, [], frozenset())
    if found is None:
        return None
    left, right = found
    if len(left) == a:
        return BicliqueWitness(left, right)
    return BicliqueWitness(right, left)


def _induced_path_search(g: Graph, stop_len: Optional[int],
                         budget: Optional[int]) -> OrientedPath:
    """Longest induced path by DFS over partial induced paths.

    `forbidden` holds everything adjacent to (or equal to) a non-final path
    vertex, so every legal extension keeps the path induced.  Stops early at
    stop_len vertices when given.
    """
    bud = SearchBudget(budget)
    best: tuple[int, ...] = ()

    def extend(path: list[int], forbidden: set[int]) -> bool:
        nonlocal best
        bud.spend()
        if len(path) > len(best):
            best = tuple(path)
            if stop_len is not None and len(best) >= stop_len:
                return True
        last = path[-1]
        new_forbidden = forbidden | g.adj(last) | {last}
        for w in sorted(g.adj(last)):
            if w in forbidden:
                continue
            path.append(w)
            if extend(path, new_forbidden):
                return True
            path.pop()
        return False

    try:
        for s in range(g.n):
            if extend([s], set()):
                break
            if stop_len is not None and len(best) >= stop_len:
                break
    except BudgetExceeded:
        raise BudgetExceeded(best=OrientedPath(best))
    return OrientedPath(best) if best else OrientedPath(())


def longest_induced_path(g: Graph, budget: Optional[int] = None) -> OrientedPath:
    """A maximum-cardinality induced path (empty path for the empty graph)."""
    return _induced_path_search(g, None, budget)


def has_induced_path(g: Graph, t: int,
                     budget: Optional[int] = None) -> Optional[OrientedPath]:
    """An induced path on at least t vertices, or None if none exists."""
    if t < 1:
        raise ValueError("t must be positive")
    p = _induced_path_search(g, t, budget)
    return p if len(p) >= t else None


def _induced_cycle_search(g: Graph, min_len: int, stop_at_first: bool,
                          budget: Optional[int]) -> Optional[tuple[int, ...]]:
    """Enumerate chordless cycles with >= min_len vertices.

    Cycles are rooted at their minimum vertex; the second vertex is kept
    smaller than the closing vertex to kill the reflection.  During
    extension, neighbors of the root are excluded (they may only appear as
    the closing vertex), which keeps everything chordless by construction.
    """
    bud = SearchBudget(budget)
    best: Optional[tuple[int, ...]] = None

    def extend(root: int, path: list[int], forbidden: set[int]) -> bool:
        nonlocal best
        bud.spend()
        last = path[-1]
        can_close = len(path) + 1 >= min_len
        root_adj = g.adj(root)
        for w in sorted(g.adj(last)):
            if w <= root or w in forbidden:
                continue
            if w in root_adj:
                # Candidate closing vertex (cycle has len(path)+1 vertices).
                if can_close and len(path) >= 2 and path[1] < w:
                    cycle = tuple(path) + (w,)
                    if best is None or len(cycle) > len(best):
                        best = cycle
                        if stop_at_first:
                            return True
                continue
            path.append(w)
            if extend(root, path, forbidden | g.adj(last)):
                return True
            path.pop()
        return False

    try:
        for root in range(g.n):
            # path starts as root, v1 with v1 > root; forbidden blocks chords.
            for v1 in sorted(g.adj(root)):
                if v1 <= root:
                    continue
                if extend(root, [root, v1], {root, v1}):
                    return best
    except BudgetExceeded:
        raise BudgetExceeded(best=InducedCycle(best) if best else None)
    return best


def find_long_induced_cycle(g: Graph, t: int,
                            budget: Optional[int] = None) -> Optional[InducedCycle]:
    """An induced cycle with at least t vertices, or None if none exists."""
    if t < 3:
        raise ValueError("t must be at least 3")
    cyc = _induced_cycle_search(g, t, stop_at_first=True, budget=budget)
    return InducedCycle(cyc) if cyc else None


def longest_induced_cycle(g: Graph, budget: Optional[int] = None) -> Optional[InducedCycle]:
    """A maximum-length induced cycle, or None in a forest."""
    cyc = _induced_cycle_search(g, 3, stop_at_first=False, budget=budget)
    return InducedCycle(cyc) if cyc else None


def find_induced_subdivided_star(g: Graph, d: int,
                                 budget: Optional[int] = None
                                 ) -> Optional[SubdividedStarWitness]:
    """An induced 1-subdivision of the star with d leaves, or None.

    For each center r, middle vertices are chosen from N(r) in ascending
    order together with a leaf each; all non-star adjacencies are excluded
    along the way, so any completed assignment is already induced.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    bud = SearchBudget(budget)

    def build(r: int, middles: list[int], leaves: list[int], start: int) -> bool:
        bud.spend()
        if len(middles) == d:
            return True
        r_closed = g.adj(r) | {r}
        used = set(middles) | set(leaves)
        for m in range(start, g.n):
            if m not in g.adj(r) or m in used:
                continue
            # middles must be pairwise non-adjacent and avoid earlier leaves
            if any(g.has_edge(m, x) for x in middles):
                continue
            if any(g.has_edge(m, x) for x in leaves):
                continue
            for leaf in sorted(g.adj(m)):
                if leaf in r_closed or leaf in used or leaf == m:
                    continue
                if any(g.has_edge(leaf, x) for x in middles):
                    continue
                if any(g.has_edge(leaf, x) for x in leaves):
                    continue
                middles.append(m)
                leaves.append(leaf)
                if build(r, middles, leaves, m + 1):
                    return True
                middles.pop()
                leaves.pop()
        return False

    for r in range(g.n):
        if g.degree(r) < d:
            continue
        middles: list[int] = []
        leaves: list[int] = []
        if build(r, middles, leaves, 0):
            return SubdividedStarWitness(r, tuple(middles), tuple(leaves))
    return None


def max_independent_subset(g: Graph, within: Optional[VertexSet] = None,
                           budget: Optional[int] = None) -> IndependentSetWitness:
    """Maximum independent set inside `within` (default: all vertices).

    Branch and bound: degree-0 and degree-1 reductions, then branch on a
    maximum-degree vertex.  On budget exhaustion raises BudgetExceeded with
    the best set found so far in `best`.
    """
    pool = frozenset(range(g.n)) if within is None else frozenset(within)
    for v in pool:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex id {v} out of range")
    bud = SearchBudget(budget)
    best: set[int] = set()

    def search(p: set[int], chosen: set[int]) -> None:
        nonlocal best
        bud.spend()
        while True:
            if len(chosen) + len(p) <= len(best):
                return
            if not p:
                break
            degs = {v: len(g.adj(v) & p) for v in p}
            zero = [v for v, dv in degs.items() if dv == 0]
            if zero:
                chosen.update(zero)
                p.difference_update(zero)
                continue
            ones = sorted(v for v, dv in degs.items() if dv == 1)
            if ones:
                v = ones[0]
                chosen.add(v)
                p.discard(v)
                p.difference_update(g.adj(v))
                continue
            break
        if not p:
            if len(chosen) > len(best):
                best = set(chosen)
            return
        v = max(p, key=lambda u: (len(g.adj(u) & p), -u))
        # branch: v in the set
        search(p - g.adj(v) - {v}, chosen | {v})
        # branch: v out
        search(p - {v}, set(chosen))

    try:
        search(set(pool), set())
    except BudgetExceeded:
        raise BudgetExceeded(best=IndependentSetWitness(tuple(sorted(best))))
    return IndependentSetWitness(tuple(sorted(best)))


def max_independent_set(g: Graph, budget: Optional[int] = None) -> IndependentSetWitness:
    return max_independent_subset(g, None, budget)


def degeneracy(g: Graph) -> tuple[int, EliminationOrder]:
    """Exact degeneracy by iterative minimum-degree removal (ties by id)."""
    remaining = set(range(g.n))
    degs = {v: g.degree(v) for v in remaining}
    order: list[int] = []
    d = 0
    while remaining:
        v = min(remaining, key=lambda u: (degs[u], u))
        d = max(d, degs[v])
        order.append(v)
        remaining.discard(v)
        for w in g.adj(v):
            if w in remaining:
                degs[w] -= 1
    return d, EliminationOrder(tuple(order), d)


def clique_number(g: Graph, budget: Optional[int] = None) -> int:
    """Exact clique number via maximum independent set on the complement."""
    if g.n == 0:
        return 0
    return len(max_independent_set(g.complement(), budget).vertices)


def max_clique(g: Graph, budget: Optional[int] = None) -> tuple[int, ...]:
    if g.n == 0:
        return ()
    return max_independent_set(g.complement(), budget).vertices


def _k_colorable(g: Graph, k: int, seed_clique: tuple[int, ...],
                 bud: SearchBudget) -> bool:
    """Backtracking k-colorability with a pre-colored clique and the
    new-color symmetry break; DSATUR-style vertex selection."""
    colors: dict[int, int] = {}
    for i, v in enumerate(seed_clique):
        if i >= k:
            return False
        colors[v] = i
    uncolored = [v for v in range(g.n) if v not in colors]

    def pick() -> int:
        def key(v: int):
            neighbor_colors = {colors[w] for w in g.adj(v) if w in colors}
            return (-len(neighbor_colors), -g.degree(v), v)
        return min(uncolored, key=key)

    def assign() -> bool:
        bud.spend()
        if not uncolored:
            return True
        v = pick()
        uncolored.remove(v)
        used = {colors[w] for w in g.adj(v) if w in colors}
        limit = min(k, (max(colors.values(), default=-1) + 2))
        for c in range(limit):
            if c in used:
                continue
            colors[v] = c
            if assign():
                return True
            del colors[v]
        uncolored.append(v)
        return False

    return assign()


def chromatic_number_exact(g: Graph, budget: Optional[int] = None) -> int:
    """Exact chromatic number.

    Lower bound from an exact maximum clique, upper bound from greedy
    coloring in reverse degeneracy order; k-colorability tested in between.
    On budget exhaustion raises BudgetExceeded with best=(lower, upper).
    """
    if g.n == 0:
        return 0
    bud = SearchBudget(budget)
    clique = max_clique(g, budget)
    lower = len(clique)
    _, elim = degeneracy(g)
    greedy: dict[int, int] = {}
    for v in reversed(elim.order):
        used = {greedy[w] for w in g.adj(v) if w in greedy}
        c = 0
        while c in used:
            c += 1
        greedy[v] = c
    upper = max(greedy.values()) + 1
    k = lower
    try:
        while k < upper:
            if _k_colorable(g, k, clique, bud):
                return k
            k += 1
        return upper
    except BudgetExceeded:
        raise BudgetExceeded(best=(k, upper))
