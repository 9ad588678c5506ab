"""graph6 and edge-list serialisation."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError

GRAPH6_HEADER = ">>graph6<<"


def _encode_order(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def emit_graph6(g: Graph) -> str:
    iu, ju = np.triu_indices(g.n, 1)
    # graph6 walks the upper triangle column by column: (0,1), (0,2), (1,2), (0,3), ...
    order = np.lexsort((iu, ju))
    bits = g.adjacency[iu[order], ju[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ (1 << np.arange(5, -1, -1))
    return "".join(chr(63 + x) for x in [*_encode_order(g.n), *groups.tolist()])


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise GraphError(f"invalid graph6 character in {s!r}")
    if codes[0] < 63:
        n, body = codes[0], codes[1:]
    elif len(codes) >= 4 and codes[1] < 63:
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        body = codes[4:]
    elif len(codes) >= 8:
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        body = codes[8:]
    else:
        raise GraphError("truncated graph6 order field")
    if n > 512:
        raise GraphError(f"graph6 order {n} exceeds supported size")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {(nbits + 5) // 6} for n={n}")
    bits = ((np.array(body, dtype=np.int64)[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    if bits[nbits:].any():
        raise GraphError("nonzero graph6 padding bits")
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    a = np.zeros((n, n), dtype=bool)
    sel = bits[:nbits].astype(bool)
    a[iu[order][sel], ju[order][sel]] = True
    return Graph.from_adjacency(a | a.T)


def parse_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


_ORDER_DIRECTIVE = re.compile(r"#\s*n\s*=\s*(\d+)")


def emit_edgelist(g: Graph) -> str:
    lines = [f"# n={g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    """One ``u v`` pair per line, 0-indexed; ``#`` starts a comment.

    A ``# n=K`` comment fixes the order (so isolated vertices survive a round
    trip); otherwise the order is one more than the largest index.
    """
    declared = None
    edges: set[tuple[int, int]] = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        match = _ORDER_DIRECTIVE.match(raw.strip())
        if match:
            declared = int(match.group(1))
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from exc
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphError(f"line {lineno}: loop at vertex {u}")
        edges.add((min(u, v), max(u, v)))
        top = max(top, u, v)
    n = top + 1 if declared is None else declared
    if top >= n:
        raise GraphError(f"vertex {top} out of range for declared n={n}")
    return Graph(n, sorted(edges))


@dataclass(frozen=True)
class GraphDocument:
    format: str
    payload: str
    graph: Graph


FORMATS = ("graph6", "edgelist")


def parse(text: str, fmt: str) -> list[GraphDocument]:
    if fmt == "graph6":
        return [GraphDocument(fmt, line.strip(), parse_graph6(line)) for line in text.splitlines() if line.strip()]
    if fmt == "edgelist":
        return [GraphDocument(fmt, text, parse_edgelist(text))]
    raise GraphError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return emit_graph6(g)
    if fmt == "edgelist":
        return emit_edgelist(g)
    raise GraphError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
