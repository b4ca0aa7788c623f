"""Immutable simple graphs and the arithmetic used everywhere else.

Vertices are the integers ``0 .. vertex_count-1``; an edge is an ordered
pair ``(u, v)`` with ``u < v``.  Graph values are immutable: every
operation returns a new :class:`Graph`.  A *copy* of a pattern graph F
inside a host is represented throughout the package by its edge set (a
``frozenset`` of normalized pairs), which also makes deduplication by
automorphisms of F automatic.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadVertex,
    DuplicateEdge,
    EdgeNotPresent,
    EmptyPattern,
    LoopEdge,
    RootsNotIndependent,
)

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    """Normalize an edge to ``(min, max)`` form, rejecting loops."""
    if u == v:
        raise LoopEdge(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """A simple undirected graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise BadVertex(f"negative vertex count {n}")
        seen: set[Edge] = set()
        for u, v in edges:
            e = norm_edge(u, v)
            if not (0 <= e[0] and e[1] < n):
                raise BadVertex(f"edge {e} outside range(0, {n})")
            if e in seen:
                raise DuplicateEdge(f"edge {e} given twice")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "_adj", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Graph is immutable")

    # -------------------------------------------------- basic accessors

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        cached = self._adj
        if cached is None:
            nbrs: list[set[int]] = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].add(v)
                nbrs[v].add(u)
            cached = tuple(frozenset(s) for s in nbrs)
            object.__setattr__(self, "_adj", cached)
        return cached

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree_into(self, v: int, part: Iterable[int]) -> int:
        """Number of neighbours of ``v`` inside ``part``."""
        part = set(part)
        return len(self.adj[v] & part)

    def support(self) -> frozenset[int]:
        """Vertices with at least one incident edge."""
        return frozenset(v for v in range(self.n) if self.adj[v])

    # -------------------------------------------------- equality / repr

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))

    # -------------------------------------------------- algebra

    def union(self, other: "Graph") -> "Graph":
        """Edge union on a common vertex range (overlap allowed)."""
        n = max(self.n, other.n)
        return from_edge_set(n, self.edges | other.edges)

    def difference(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Remove the given edges; all must be present."""
        drop = {norm_edge(u, v) for u, v in edges}
        missing = drop - self.edges
        if missing:
            raise EdgeNotPresent(f"edges not present: {sorted(missing)[:5]}")
        return from_edge_set(self.n, self.edges - drop)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        new = set(self.edges)
        for u, v in edges:
            e = norm_edge(u, v)
            if e in new:
                raise DuplicateEdge(f"edge {e} already present")
            if e[1] >= self.n:
                raise BadVertex(f"edge {e} outside range(0, {self.n})")
            new.add(e)
        return from_edge_set(self.n, new)

    def induced(self, verts: Iterable[int]) -> "Graph":
        """Induced subgraph on ``verts``, kept in the same vertex range."""
        keep = set(verts)
        return from_edge_set(
            self.n, {e for e in self.edges if e[0] in keep and e[1] in keep}
        )

    def cross(self, a: Iterable[int], b: Iterable[int]) -> "Graph":
        """Bipartite subgraph of edges with one end in each set."""
        sa, sb = set(a), set(b)
        return from_edge_set(
            self.n,
            {
                (u, v)
                for u, v in self.edges
                if (u in sa and v in sb) or (u in sb and v in sa)
            },
        )

    def relabel(self, mapping: Mapping[int, int], new_n: int) -> "Graph":
        """Push the graph through an injective vertex map."""
        edges = {norm_edge(mapping[u], mapping[v]) for u, v in self.edges}
        if len(edges) != len(self.edges):
            raise DuplicateEdge("relabel map is not injective on edges")
        return from_edge_set(new_n, edges)

    def pad(self, new_n: int) -> "Graph":
        """Same edges in a larger vertex range."""
        if new_n < self.n:
            raise BadVertex(f"cannot shrink {self.n} -> {new_n}")
        return from_edge_set(new_n, self.edges)

    def compact(self) -> tuple["Graph", dict[int, int]]:
        """Drop isolated vertices, renumbering; returns (graph, old->new)."""
        live = sorted(self.support())
        old2new = {v: i for i, v in enumerate(live)}
        return self.relabel(old2new, len(live)), old2new

    def complement(self) -> "Graph":
        edges = {
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        }
        return from_edge_set(self.n, edges)


def from_edge_set(n: int, edges: frozenset[Edge] | set[Edge]) -> Graph:
    """Build a Graph from already-normalized edges, skipping validation."""
    g = Graph.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "edges", frozenset(edges))
    object.__setattr__(g, "_adj", None)
    return g


# ------------------------------------------------------------ constructors


def complete_graph(n: int) -> Graph:
    return from_edge_set(
        n, {(u, v) for u in range(n) for v in range(u + 1, n)}
    )


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise EmptyPattern(f"cycle needs >= 3 vertices, got {n}")
    return from_edge_set(
        n, {norm_edge(i, (i + 1) % n) for i in range(n)}
    )


def path_graph(n: int) -> Graph:
    return from_edge_set(n, {(i, i + 1) for i in range(n - 1)})


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_set(
        a + b, {(u, a + v) for u in range(a) for v in range(b)}
    )


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Vertex-disjoint union; returns the union and per-graph offsets."""
    edges: set[Edge] = set()
    offsets: list[int] = []
    n = 0
    for g in graphs:
        offsets.append(n)
        edges.update((u + n, v + n) for u, v in g.edges)
        n += g.n
    return from_edge_set(n, edges), offsets


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = {
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    }
    return from_edge_set(n, edges)


# ------------------------------------------------------------ divisibility


def degree_gcd(g: Graph) -> int:
    """gcd of all vertex degrees; 0 for an edgeless graph.

    A gcd of 0 behaves as "divisible by everything": isolated vertices
    never constrain divisibility because gcd(x, 0) = x.
    """
    out = 0
    for d in g.degrees():
        out = math.gcd(out, d)
    return out


def is_divisible(g: Graph, f: Graph) -> bool:
    """Whether g is F-divisible: e(F) | e(G) and gcd(F) | gcd(G)."""
    if f.num_edges == 0:
        raise EmptyPattern("pattern has no edges")
    gf = degree_gcd(f)
    return g.num_edges % f.num_edges == 0 and degree_gcd(g) % gf == 0


# ------------------------------------------------------------ degeneracy


def rooted_degeneracy(g: Graph, roots: Iterable[int]) -> int:
    """Least d admitting an ordering that starts with the independent set
    ``roots`` and gives every later vertex at most d earlier neighbours.

    Computed exactly by repeatedly deleting a minimum-degree non-root
    vertex (ties broken by smallest id) and taking the maximum degree seen
    at deletion time; reversing the deletions yields a witness ordering.
    """
    roots = set(roots)
    for r in roots:
        if not (0 <= r < g.n):
            raise BadVertex(f"root {r} outside range(0, {g.n})")
    for u, v in g.edges:
        if u in roots and v in roots:
            raise RootsNotIndependent(f"roots span edge ({u}, {v})")
    deg = g.degrees()
    alive = set(range(g.n)) - roots
    adj = [set(a) for a in g.adj]
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.discard(v)
        for w in adj[v]:
            adj[w].discard(v)
            deg[w] -= 1
    return best


def degeneracy_order(g: Graph, roots: Iterable[int]) -> list[int]:
    """A witness ordering for :func:`rooted_degeneracy`."""
    roots = sorted(set(roots))
    deg = g.degrees()
    alive = set(range(g.n)) - set(roots)
    adj = [set(a) for a in g.adj]
    deleted: list[int] = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        deleted.append(v)
        alive.discard(v)
        for w in adj[v]:
            adj[w].discard(v)
            deg[w] -= 1
    return roots + deleted[::-1]


# ------------------------------------------------------------ colouring


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by branch-and-bound (small graphs only)."""
    if g.num_edges == 0:
        return 1 if g.n else 0
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    adjacency = g.adj
    n = g.n

    def colourable(k: int) -> list[int] | None:
        colour = [-1] * n

        def place(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            used = {colour[w] for w in adjacency[v] if colour[w] >= 0}
            # symmetry break: never open more than one new colour
            cap = min(k, (max((colour[w] for w in order[:i]), default=-1) + 2))
            for c in range(cap):
                if c not in used:
                    colour[v] = c
                    if place(i + 1):
                        return True
                    colour[v] = -1
            return False

        return colour if place(0) else None

    for k in range(2, n + 1):
        if colourable(k) is not None:
            return k
    return n


def proper_colouring(g: Graph, k: int) -> list[int]:
    """A proper colouring with exactly the colours 0..k-1 (k = chi)."""
    adjacency = g.adj
    colour = [-1] * g.n
    order = sorted(range(g.n), key=lambda v: -g.degree(v))

    def place(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        used = {colour[w] for w in adjacency[v] if colour[w] >= 0}
        for c in range(k):
            if c not in used:
                colour[v] = c
                if place(i + 1):
                    return True
                colour[v] = -1
        return False

    if not place(0):
        raise ValueError(f"graph is not {k}-colourable")
    return colour
