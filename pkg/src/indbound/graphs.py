"""Undirected simple graphs as immutable adjacency lists, plus the structural
operations the verification pipeline needs: deletion with dense re-indexing,
connected components, bipartition testing, the tensor product with K2, and
the plain-text edge-list format.

Vertices are integers in [0, n).  Adjacency lists are sorted tuples, so equal
graphs compare and hash identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphParseError(ValueError):
    """Edge-list input rejected; the message names the offending line."""


class NotBipartiteError(ValueError):
    """Raised by operations that require a bipartite (component of a) graph."""

    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(message)
        self.witness = witness  # odd closed walk


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def iso_count(self) -> int:
        """Number of isolated vertices."""
        return sum(1 for a in self.adjacency if not a)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class Bipartition:
    """A valid 2-coloring: side[v] in {0, 1} and every edge crosses sides."""

    side: tuple[int, ...]


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from an edge iterable; validates simplicity and range."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if v in adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj))


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: `#` comment lines, a `n <count>` header,
    then one `<u> <v>` line per edge with 0 <= u < v < n."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphParseError(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(f"line {lineno}: malformed vertex count {parts[1]!r}") from None
            if n < 0:
                raise GraphParseError(f"line {lineno}: negative vertex count {n}")
            continue
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected '<u> <v>', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: malformed token in {raw!r}") from None
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        if u > v:
            raise GraphParseError(f"line {lineno}: endpoints not in increasing order")
        if v >= n:
            raise GraphParseError(f"line {lineno}: vertex index {v} is not below n={n}")
        if u < 0:
            raise GraphParseError(f"line {lineno}: negative vertex index {u}")
        if (u, v) in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    if n is None:
        raise GraphParseError("line 1: missing 'n <count>' header")
    return from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list; edges in lexicographic order."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with side A = [0, a) and side B = [a, a+b)."""
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite requires a, b >= 1")
    return from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on `keep`, densely re-indexed.

    Returns (subgraph, old_of_new) where old_of_new[i] is the original index
    of new vertex i; vertices keep their relative order.
    """
    old_of_new = tuple(sorted(set(keep)))
    new_of_old = {old: new for new, old in enumerate(old_of_new)}
    adj = tuple(
        tuple(new_of_old[w] for w in g.adjacency[old] if w in new_of_old)
        for old in old_of_new
    )
    return Graph(len(old_of_new), adj), old_of_new


def delete_closed(g: Graph, x: int) -> tuple[tuple[Graph, tuple[int, ...]], tuple[Graph, tuple[int, ...]]]:
    """(G - x, G - x - N(x)), both densely re-indexed with their index maps."""
    if not (0 <= x < g.n):
        raise ValueError(f"vertex {x} out of range for n={g.n}")
    without_x = [v for v in range(g.n) if v != x]
    closed = set(g.adjacency[x]) | {x}
    without_closed = [v for v in range(g.n) if v not in closed]
    return induced_subgraph(g, without_x), induced_subgraph(g, without_closed)


def components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Connected components as (subgraph, old_of_new) pairs, in order of
    their smallest original vertex."""
    seen = [False] * g.n
    out: list[tuple[Graph, tuple[int, ...]]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(induced_subgraph(g, comp))
    return out


def component_vertices(g: Graph, x: int) -> set[int]:
    """Vertex set of the connected component containing x."""
    seen = {x}
    stack = [x]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _walk_to_root(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[v] != v:
        v = parent[v]
        path.append(v)
    return path


def bipartition(g: Graph) -> Bipartition | tuple[int, ...]:
    """A valid 2-coloring, or an odd closed walk witnessing non-bipartiteness."""
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = 0
        parent = {start: start}
        queue = [start]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in g.adjacency[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    # odd closed walk: root..u + uw + w..root
                    pu = _walk_to_root(parent, u)
                    pw = _walk_to_root(parent, w)
                    return tuple(reversed(pu)) + tuple(pw)
    return Bipartition(tuple(side))


def is_bipartite(g: Graph) -> bool:
    return isinstance(bipartition(g), Bipartition)


def tensor_k2(g: Graph) -> Graph:
    """Tensor product with K2 (bipartite double cover): vertex (v, i) maps to
    v + i*n, with (u,0)~(v,1) and (u,1)~(v,0) for every edge uv."""
    n = g.n
    edges = []
    for u, v in g.edges():
        edges.append((min(u, v + n), max(u, v + n)))
        edges.append((min(v, u + n), max(v, u + n)))
    return from_edges(2 * n, edges)


def is_complete_bipartite_component(g: Graph, x: int):
    """True iff the component of x is K_{a,b} with a, b >= 1; the single
    vertex case is reported separately as the string "isolated"."""
    if not (0 <= x < g.n):
        raise ValueError(f"vertex {x} out of range for n={g.n}")
    comp = component_vertices(g, x)
    if len(comp) == 1:
        return "isolated"
    sub, _ = induced_subgraph(g, comp)
    bip = bipartition(sub)
    if not isinstance(bip, Bipartition):
        return False
    a = [v for v in range(sub.n) if bip.side[v] == 0]
    b = [v for v in range(sub.n) if bip.side[v] == 1]
    if not a or not b:
        return False
    return all(len(sub.adjacency[v]) == len(b) for v in a) and all(
        len(sub.adjacency[v]) == len(a) for v in b
    )


def component_is_extremal(g: Graph, x: int) -> bool:
    """True iff the component of x is a single vertex or complete bipartite,
    the structural shape on which the counting bound is tight."""
    kind = is_complete_bipartite_component(g, x)
    return kind == "isolated" or kind is True
