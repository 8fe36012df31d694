"""graph6 and DIMACS edge-format parsing and serialization.

graph6 follows the canonical format description shipped with nauty: N(n)
followed by the upper triangle of the adjacency matrix in column order,
packed into 6-bit groups, each group printed as chr(value + 63).
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        bits = [(n >> s) & 63 for s in (12, 6, 0)]
        return "~" + "".join(chr(b + 63) for b in bits)
    if n <= 68719476735:
        bits = [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
        return "~~" + "".join(chr(b + 63) for b in bits)
    raise ValueError("vertex count too large for graph6")


def _decode_n(s: str) -> tuple[int, int]:
    """Return (n, characters consumed)."""
    if not s:
        raise ValueError("empty graph6 string")
    if s[0] != "~":
        return ord(s[0]) - 63, 1
    if len(s) >= 2 and s[1] != "~":
        if len(s) < 4:
            raise ValueError("truncated graph6 vertex count")
        vals = [ord(c) - 63 for c in s[1:4]]
        return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
    if len(s) < 8:
        raise ValueError("truncated graph6 vertex count")
    vals = [ord(c) - 63 for c in s[2:8]]
    n = 0
    for v in vals:
        n = (n << 6) | v
    return n, 8


def to_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string (no trailing newline)."""
    bits: list[int] = []
    for j in range(1, g.n):
        aj = g.adj(j)
        for i in range(j):
            bits.append(1 if i in aj else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return _encode_n(g.n) + "".join(chars)


def from_graph6(s: str) -> Graph:
    """Decode one graph6 string (a leading >>graph6<< header is tolerated)."""
    s = s.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    n, consumed = _decode_n(s)
    body = s[consumed:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} chars, expected {need}")
    bits: list[int] = []
    for c in body:
        val = ord(c) - 63
        if not 0 <= val <= 63:
            raise ValueError(f"invalid graph6 character {c!r}")
        bits.extend((val >> s6) & 1 for s6 in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def to_dimacs(g: Graph) -> str:
    """DIMACS edge format: 'p edge n m' then 1-indexed 'e u v' lines."""
    out = [f"p edge {g.n} {g.m}"]
    for u, v in g.edges():
        out.append(f"e {u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def from_dimacs(text: str) -> Graph:
    n = None
    m_declared = None
    edges: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1].lower() != "edge":
                raise ValueError(f"bad problem line: {line!r}")
            n = int(tokens[2])
            m_declared = int(tokens[3])
        elif tokens[0] == "e":
            if n is None:
                raise ValueError("edge line before problem line")
            u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            edges.append((u, v))
        else:
            raise ValueError(f"unknown DIMACS line: {line!r}")
    if n is None:
        raise ValueError("missing problem line")
    if m_declared is not None and m_declared != len(edges):
        raise ValueError(f"declared {m_declared} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
