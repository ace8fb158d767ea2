"""graph6 reader and writer.

The format stores N(n) followed by the upper triangle of the adjacency
matrix in column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed
six bits per byte, each byte offset by 63.
"""

from __future__ import annotations

from .graphs import Graph, GraphError

__all__ = ["parse_graph6", "emit_graph6", "Graph6Error"]

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> str:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error("order too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    chunk = data[start:start + width]
    if len(chunk) < width:
        raise Graph6Error("truncated size header")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, start + width


def emit_graph6(G, header: bool = False) -> str:
    """Encode the underlying simple graph of ``G`` (decorations are dropped)."""
    n = G.order
    adj = G.adj
    bits = []
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return (HEADER if header else "") + _encode_n(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    data = s.encode("ascii", errors="strict") if s.isascii() else None
    if data is None:
        raise Graph6Error("graph6 must be printable ASCII")
    if any(b < 63 or b > 126 for b in data):
        raise Graph6Error("graph6 bytes must lie in 63..126")
    n, pos = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    # padding bits must be zero for a bit-exact round trip
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(sorted(edges)))
