"""Set systems, exact VC dimension, and the neighborhood-trace machinery.

Whenever a trace bound fails, the failure is converted into a concrete
certificate: a large bucket with a large common trace gives a biclique, and
too many distinct traces force a shattered set, which assembles into an
induced cycle of t vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .certificates import (BicliqueWitness, Certificate, InducedCycle,
                           verify_certificate)
from .detect import BudgetExceeded, SearchBudget, chromatic_number_exact
from .graph import Graph, VertexSet, is_independent, verify_induced_cycle

DEFAULT_UNIVERSE_CAP = 20


class CounterWitness(Exception):
    """A lemma hypothesis failed in a way that yields a certificate."""

    def __init__(self, certificate: Certificate):
        super().__init__(f"structural witness surfaced: {type(certificate).__name__}")
        self.certificate = certificate


@dataclass(frozen=True)
class SetSystem:
    """Universe elements plus a family of subsets; tags name each member's origin."""

    universe: tuple[int, ...]
    members: tuple[frozenset[int], ...]
    tags: tuple[int, ...] = ()

    def __post_init__(self):
        uni = set(self.universe)
        if len(uni) != len(self.universe):
            raise ValueError("universe has repeated elements")
        for m in self.members:
            if not m <= uni:
                raise ValueError("member not contained in universe")
        if self.tags and len(self.tags) != len(self.members):
            raise ValueError("tags must parallel members")

    def distinct_members(self) -> set[frozenset[int]]:
        return set(self.members)

    def to_json(self) -> dict:
        index = {x: i for i, x in enumerate(self.universe)}
        return {"universe_size": len(self.universe),
                "members": [sorted(index[x] for x in m) for m in self.members]}


def neighborhood_system(g: Graph, x_set: VertexSet, y_set: VertexSet) -> SetSystem:
    """The traces of Y-vertices on X: one member per y, tagged by y.

    Duplicate traces are retained so multiplicities map back to Y.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    if x_set & y_set:
        raise ValueError("X and Y must be disjoint")
    universe = tuple(sorted(x_set))
    ys = tuple(sorted(y_set))
    members = tuple(g.neighbors_in(y, x_set) for y in ys)
    return SetSystem(universe, members, ys)


def _is_shattered(members_masks: list[int], z_mask: int, z_size: int) -> bool:
    need = 1 << z_size
    seen: set[int] = set()
    for m in members_masks:
        seen.add(m & z_mask)
        if len(seen) == need:
            return True
    return False


def _member_masks(system: SetSystem) -> tuple[dict[int, int], list[int]]:
    index = {x: i for i, x in enumerate(system.universe)}
    masks = []
    for m in system.members:
        mask = 0
        for x in m:
            mask |= 1 << index[x]
        masks.append(mask)
    return index, masks


def vc_dimension(system: SetSystem, cap: int = DEFAULT_UNIVERSE_CAP) -> int:
    """Exact VC dimension by descending-size subset enumeration.

    Returns -1 for an empty family (not even the empty set is shattered).
    """
    n = len(system.universe)
    if n > cap:
        raise ValueError(f"universe size {n} exceeds cap {cap}")
    if not system.members:
        return -1
    distinct = len(system.distinct_members())
    k_max = min(n, int(math.log2(distinct)) if distinct > 1 else 0)
    _, masks = _member_masks(system)
    from itertools import combinations
    for k in range(k_max, 0, -1):
        for zs in combinations(range(n), k):
            z_mask = 0
            for i in zs:
                z_mask |= 1 << i
            if _is_shattered(masks, z_mask, k):
                return k
    return 0


def find_shattered_set(system: SetSystem, size: int,
                       budget: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """A shattered subset of the universe with exactly `size` elements.

    Grows shattered sets level by level (they are closed downward), so the
    search never looks at a superset of an unshattered set.
    """
    if size == 0:
        return () if system.members else None
    index, masks = _member_masks(system)
    bud = SearchBudget(budget)
    n = len(system.universe)
    level: list[tuple[int, ...]] = [()]
    for k in range(1, size + 1):
        nxt: list[tuple[int, ...]] = []
        for base in level:
            start = base[-1] + 1 if base else 0
            for x in range(start, n):
                bud.spend()
                zs = base + (x,)
                z_mask = 0
                for i in zs:
                    z_mask |= 1 << i
                if _is_shattered(masks, z_mask, k):
                    nxt.append(zs)
        if not nxt:
            return None
        level = nxt
    chosen = level[0]
    return tuple(system.universe[i] for i in chosen)


def sauer_shelah_bound(n: int, k: int) -> int:
    """Sum of binomial(n, i) for i = 0..k, as an exact integer."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return sum(math.comb(n, i) for i in range(k + 1))


def trace_buckets(g: Graph, x_set: VertexSet, y_set: VertexSet
                  ) -> tuple[frozenset[int], frozenset[int],
                             dict[frozenset[int], frozenset[int]]]:
    """Partition Y by neighborhood-in-X.

    Returns (largest bucket, its common trace, all buckets keyed by trace);
    ties go to the lexicographically smallest trace.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    if x_set & y_set:
        raise ValueError("X and Y must be disjoint")
    buckets: dict[frozenset[int], set[int]] = {}
    for y in sorted(y_set):
        buckets.setdefault(g.neighbors_in(y, x_set), set()).add(y)
    if not buckets:
        return frozenset(), frozenset(), {}
    best_trace = min(buckets, key=lambda tr: (-len(buckets[tr]), sorted(tr)))
    frozen = {tr: frozenset(b) for tr, b in buckets.items()}
    return frozen[best_trace], best_trace, frozen


def cycle_from_shattered(g: Graph, z_set: VertexSet, system: SetSystem,
                         t: int) -> InducedCycle:
    """Assemble an induced t-cycle from an independent shattered set.

    Uses the first t/2 elements of z_set; for each consecutive pair a tagged
    member whose trace meets the chosen set in exactly that pair supplies
    the in-between vertex.  Alternative witnesses are tried per slot before
    failing, which only matters when the tag set is not independent.
    """
    if t % 2 or t < 4:
        raise ValueError("t must be even and at least 4")
    z_sorted = sorted(z_set)
    m = t // 2
    if len(z_sorted) < m:
        raise ValueError(f"need at least t/2 = {m} shattered vertices")
    if not is_independent(g, z_set):
        raise ValueError("z_set must be independent")
    if not system.tags:
        raise ValueError("set system must carry tags")
    zs = z_sorted[:m]
    chosen_set = frozenset(zs)
    candidates: list[list[int]] = []
    for i in range(m):
        pattern = frozenset({zs[i], zs[(i + 1) % m]})
        pool = sorted(tag for member, tag in zip(system.members, system.tags)
                      if member & chosen_set == pattern)
        if not pool:
            raise ValueError(f"no witness for pair {sorted(pattern)}: "
                             "set is not shattered by the system")
        candidates.append(pool)

    picked: list[int] = []

    def assign(i: int) -> bool:
        if i == m:
            return True
        for y in candidates[i]:
            if y in picked or any(g.has_edge(y, w) for w in picked):
                continue
            picked.append(y)
            if assign(i + 1):
                return True
            picked.pop()
        return False

    if not assign(0):
        raise ValueError("witnesses conflict; cannot assemble an induced cycle")
    cycle: list[int] = []
    for i in range(m):
        cycle.append(zs[i])
        cycle.append(picked[i])
    cert = InducedCycle(tuple(cycle))
    assert verify_certificate(g, cert)
    return cert


def _check_coloring(g: Graph, x_set: frozenset[int], q: int,
                    coloring: Optional[dict[int, int]]) -> Optional[str]:
    """None if G[X] is certified q-colorable, else a failure description."""
    if coloring is None:
        sub, back = g.induced(x_set)
        try:
            chi = chromatic_number_exact(sub)
        except BudgetExceeded:
            return "q-colorability could not be decided within budget"
        return None if chi <= q else f"G[X] needs {chi} > q = {q} colors"
    for v in x_set:
        if v not in coloring:
            return f"coloring misses vertex {v}"
    if len({coloring[v] for v in x_set}) > q:
        return f"coloring uses more than q = {q} colors"
    for v in x_set:
        for w in g.adj(v):
            if w in x_set and w > v and coloring[v] == coloring[w]:
                return f"coloring repeats on edge ({v},{w})"
    return None


def _trace_exponent(q: int, t: int) -> int:
    if (q * t) % 2:
        raise ValueError("q*t must be even")
    return (q * t) // 2


def _extract_cycle_via_shattering(g: Graph, x_set: frozenset[int],
                                  y_set: frozenset[int], q: int, t: int,
                                  coloring: Optional[dict[int, int]]
                                  ) -> InducedCycle:
    """Too many distinct traces force a shattered set of size qt/2, whose
    largest color class is independent and big enough for a t-cycle."""
    system = neighborhood_system(g, x_set, y_set)
    zmin = _trace_exponent(q, t)
    shattered = find_shattered_set(system, zmin)
    if shattered is None:
        raise AssertionError("counting promised a shattered set; none found")
    if coloring is None:
        sub, back = g.induced(x_set)
        colors = _exact_coloring(sub, chromatic_number_exact(sub))
        coloring = {back[v]: c for v, c in colors.items()}
    by_color: dict[int, list[int]] = {}
    for z in shattered:
        by_color.setdefault(coloring[z], []).append(z)
    best = max(by_color.values(), key=lambda c: (len(c), [-z for z in c]))
    assert len(best) >= t // 2, "pigeonhole on color classes failed"
    return cycle_from_shattered(g, frozenset(best), system, t)


def _exact_coloring(g: Graph, k: int) -> dict[int, int]:
    """A proper k-coloring found by plain backtracking (k = chi works)."""
    colors: dict[int, int] = {}

    def assign(order: list[int]) -> bool:
        if not order:
            return True
        v = order[0]
        used = {colors[w] for w in g.adj(v) if w in colors}
        for c in range(min(k, max(colors.values(), default=-1) + 2)):
            if c in used:
                continue
            colors[v] = c
            if assign(order[1:]):
                return True
            del colors[v]
        return False

    if not assign(list(range(g.n))):
        raise AssertionError(f"graph is not {k}-colorable")
    return colors


def _trace_hypotheses(g: Graph, x_set: frozenset[int], y_set: frozenset[int],
                      ell: int, q: int, t: int,
                      coloring: Optional[dict[int, int]],
                      check_degrees: bool) -> list[str]:
    failures = []
    if x_set & y_set:
        failures.append("X and Y overlap")
    if len(x_set) < _trace_exponent(q, t):
        failures.append(f"|X| = {len(x_set)} below q*t/2 = {_trace_exponent(q, t)}")
    msg = _check_coloring(g, x_set, q, coloring)
    if msg:
        failures.append(msg)
    if not is_independent(g, y_set):
        failures.append("Y is not independent")
    if check_degrees:
        lazy = [y for y in sorted(y_set) if g.degree_in(y, x_set) < ell]
        if lazy:
            failures.append(f"vertices {lazy[:5]} have fewer than ell = {ell} "
                            "neighbors in X")
    return failures


def cor_traces_check(g: Graph, x_set: VertexSet, y_set: VertexSet,
                     ell: int, q: int, t: int,
                     coloring: Optional[dict[int, int]] = None
                     ) -> tuple[bool, Optional[Certificate]]:
    """Verify |Y| < ell * |X|^(qt/2); on failure extract a witness.

    A bucket of ell same-trace vertices gives a biclique with its trace;
    failing that, the trace count forces a shattered set and an induced
    t-cycle comes out instead.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    failures = _trace_hypotheses(g, x_set, y_set, ell, q, t, coloring, True)
    if failures:
        raise ValueError("hypotheses violated: " + "; ".join(failures))
    bound = ell * len(x_set) ** _trace_exponent(q, t)
    if len(y_set) < bound:
        return True, None
    bucket, trace, _ = trace_buckets(g, x_set, y_set)
    if len(bucket) >= ell:
        # every y has >= ell neighbors in X, so the common trace is large too
        witness = BicliqueWitness(tuple(sorted(bucket))[:ell],
                                  tuple(sorted(trace))[:ell])
        assert verify_certificate(g, witness)
        return False, witness
    return False, _extract_cycle_via_shattering(g, x_set, y_set, q, t, coloring)


def cor_traces3_split(g: Graph, x_set: VertexSet, y_set: VertexSet,
                      ell: int, q: int, t: int,
                      coloring: Optional[dict[int, int]] = None,
                      require_hypotheses: bool = True
                      ) -> tuple[frozenset[int], frozenset[int]]:
    """Split off the largest trace bucket Y' and the trace-free part X' of X.

    X' and Y' have no edges between them, unconditionally.  Under the
    stated hypotheses |X'| > |X| - ell and |Y'| >= |Y| / |X|^(qt/2); a
    bucket and trace both of size >= ell instead raise CounterWitness with
    the biclique (or, when the bucket stays small against the counting,
    with an induced t-cycle).
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    failures = _trace_hypotheses(g, x_set, y_set, ell, q, t, coloring, False)
    exponent = _trace_exponent(q, t)
    size_ok = len(y_set) >= ell * len(x_set) ** exponent
    if require_hypotheses:
        if failures:
            raise ValueError("hypotheses violated: " + "; ".join(failures))
        if not size_ok:
            raise ValueError(f"|Y| = {len(y_set)} below ell * |X|^(qt/2)")
    if not y_set:
        return x_set, frozenset()
    bucket, trace, _ = trace_buckets(g, x_set, y_set)
    if len(bucket) >= ell and len(trace) >= ell:
        witness = BicliqueWitness(tuple(sorted(bucket))[:ell],
                                  tuple(sorted(trace))[:ell])
        assert verify_certificate(g, witness)
        raise CounterWitness(witness)
    if len(bucket) < ell and size_ok and not failures:
        raise CounterWitness(
            _extract_cycle_via_shattering(g, x_set, y_set, q, t, coloring))
    x_prime = x_set - trace
    for y in bucket:
        assert not (g.adj(y) & x_prime), "split left an X'-Y' edge"
    return x_prime, bucket
