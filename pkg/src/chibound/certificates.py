"""Verifiable witness objects and their verifiers.

Every detector and lemma procedure returns one of these; verify_certificate
re-checks the claimed structure against the graph from scratch, so a
certificate never has to be trusted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from .graph import Graph, is_independent, verify_induced_cycle


@dataclass(frozen=True)
class InducedCycle:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class BicliqueWitness:
    """Disjoint sides with every left-right pair adjacent (K_{|left|,|right|} subgraph)."""

    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class SubdividedStarWitness:
    """An induced copy of the star with d leaves, every edge subdivided once.

    Edges are exactly center-middles[i] and middles[i]-leaves[i].
    """

    center: int
    middles: tuple[int, ...]
    leaves: tuple[int, ...]


@dataclass(frozen=True)
class LowDegreeVertex:
    vertex: int
    degree: int
    bound: int


@dataclass(frozen=True)
class EliminationOrder:
    """A vertex order certifying degeneracy: each vertex has at most
    `bound` neighbors among the vertices after it in the order."""

    order: tuple[int, ...]
    bound: int


@dataclass(frozen=True)
class IndependentSetWitness:
    vertices: tuple[int, ...]


Certificate = Union[InducedCycle, BicliqueWitness, SubdividedStarWitness,
                    LowDegreeVertex, EliminationOrder, IndependentSetWitness]


def _verify_induced_cycle(g: Graph, c: InducedCycle) -> bool:
    return verify_induced_cycle(g, c.vertices)


def _verify_biclique(g: Graph, c: BicliqueWitness) -> bool:
    left, right = set(c.left), set(c.right)
    if not left or not right:
        return False
    if len(left) != len(c.left) or len(right) != len(c.right):
        return False
    if left & right:
        return False
    for u in left:
        if not (0 <= u < g.n):
            raise ValueError(f"vertex {u} out of range")
        for v in right:
            if not g.has_edge(u, v):
                return False
    return True


def _verify_sstar(g: Graph, c: SubdividedStarWitness) -> bool:
    d = len(c.middles)
    if d < 2 or len(c.leaves) != d:
        return False
    vs = (c.center,) + c.middles + c.leaves
    if len(set(vs)) != 2 * d + 1:
        return False
    expected = {frozenset((c.center, m)) for m in c.middles}
    expected |= {frozenset((c.middles[i], c.leaves[i])) for i in range(d)}
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            adjacent = g.has_edge(vs[i], vs[j])
            if adjacent != (frozenset((vs[i], vs[j])) in expected):
                return False
    return True


def _verify_low_degree(g: Graph, c: LowDegreeVertex) -> bool:
    if not (0 <= c.vertex < g.n):
        raise ValueError(f"vertex {c.vertex} out of range")
    return g.degree(c.vertex) == c.degree and c.degree <= c.bound


def _verify_elimination(g: Graph, c: EliminationOrder) -> bool:
    if sorted(c.order) != list(range(g.n)):
        return False
    remaining = set(range(g.n))
    for v in c.order:
        if g.degree_in(v, remaining - {v}) > c.bound:
            return False
        remaining.discard(v)
    return True


def _verify_independent(g: Graph, c: IndependentSetWitness) -> bool:
    if len(set(c.vertices)) != len(c.vertices):
        return False
    return is_independent(g, c.vertices)


_VERIFIERS = {
    InducedCycle: _verify_induced_cycle,
    BicliqueWitness: _verify_biclique,
    SubdividedStarWitness: _verify_sstar,
    LowDegreeVertex: _verify_low_degree,
    EliminationOrder: _verify_elimination,
    IndependentSetWitness: _verify_independent,
}


def verify_certificate(g: Graph, cert: Certificate) -> bool:
    """Structurally re-check a certificate against g; malformed payloads raise."""
    try:
        verifier = _VERIFIERS[type(cert)]
    except KeyError:
        raise TypeError(f"unknown certificate type {type(cert).__name__}")
    return verifier(g, cert)


def certificate_tag(cert: Certificate) -> str:
    return type(cert).__name__


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    """Serialize to the fixed schema {tag, vertices, left, right, claimed_bound}."""
    d: dict[str, Any] = {"tag": certificate_tag(cert)}
    if isinstance(cert, InducedCycle):
        d["vertices"] = list(cert.vertices)
    elif isinstance(cert, BicliqueWitness):
        d["left"] = list(cert.left)
        d["right"] = list(cert.right)
    elif isinstance(cert, SubdividedStarWitness):
        d["vertices"] = [cert.center] + list(cert.middles) + list(cert.leaves)
    elif isinstance(cert, LowDegreeVertex):
        d["vertices"] = [cert.vertex]
        d["claimed_bound"] = cert.bound
    elif isinstance(cert, EliminationOrder):
        d["vertices"] = list(cert.order)
        d["claimed_bound"] = cert.bound
    elif isinstance(cert, IndependentSetWitness):
        d["vertices"] = list(cert.vertices)
    return d


def certificate_from_json(d: dict[str, Any], g: Graph | None = None) -> Certificate:
    """Rebuild a certificate from its JSON dict.

    LowDegreeVertex stores only vertex and bound; the degree is recomputed
    from the graph when one is supplied, else left as -1 for later checking.
    """
    tag = d.get("tag")
    if tag == "InducedCycle":
        return InducedCycle(tuple(d["vertices"]))
    if tag == "BicliqueWitness":
        return BicliqueWitness(tuple(d["left"]), tuple(d["right"]))
    if tag == "SubdividedStarWitness":
        vs = list(d["vertices"])
        if len(vs) % 2 == 0 or len(vs) < 5:
            raise ValueError("subdivided-star payload needs 2d+1 >= 5 vertices")
        deg = (len(vs) - 1) // 2
        return SubdividedStarWitness(vs[0], tuple(vs[1:1 + deg]), tuple(vs[1 + deg:]))
    if tag == "LowDegreeVertex":
        v = d["vertices"][0]
        degree = g.degree(v) if g is not None else int(d.get("degree", -1))
        return LowDegreeVertex(v, degree, int(d["claimed_bound"]))
    if tag == "EliminationOrder":
        return EliminationOrder(tuple(d["vertices"]), int(d["claimed_bound"]))
    if tag == "IndependentSetWitness":
        return IndependentSetWitness(tuple(d["vertices"]))
    raise ValueError(f"unknown certificate tag {tag!r}")
