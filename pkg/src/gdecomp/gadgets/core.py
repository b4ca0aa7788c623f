"""Gadget certificates and the elementary graph surgeries they build on.

A gadget is a graph T built next to one or more *attached* graphs (H,
H', ...) living in the same vertex space, together with explicit
F-decompositions of prescribed unions such as ``T + H``.  The
certificate carries everything needed for independent re-verification:
the gadget edges, the named attachment vertex sets and edge sets, the
decompositions, and the claimed rooted degeneracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import (
    BadParameters,
    DuplicateEdge,
    EdgeNotPresent,
    NotIdentification,
    NotRDivisible,
    NotRegular,
    WouldCreateLoop,
    WouldCreateMultiEdge,
)
from ..graphs import Edge, Graph, from_edge_set, norm_edge, rooted_degeneracy


@dataclass(frozen=True)
class GadgetCertificate:
    """A gadget graph with attachments and verifiable decompositions.

    ``decompositions`` maps a name like ``"T+H"`` to a pair
    ``(part_names, copies)``: the copies must partition the union of the
    edge sets named by ``part_names``, where ``"T"`` names the gadget
    itself and other names index ``attached``.
    """

    gadget: Graph
    pattern: Graph
    attachments: Mapping[str, tuple[int, ...]]
    attached: Mapping[str, frozenset]
    decompositions: Mapping[str, tuple[tuple[str, ...], tuple[frozenset, ...]]]
    claimed_degeneracy: int | None = None

    def part_edges(self, name: str) -> frozenset:
        if name == "T":
            return self.gadget.edges
        return self.attached[name]

    def root_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for verts in self.attachments.values():
            out |= set(verts)
        return frozenset(out)

    def rooted_degeneracy(self) -> int:
        return rooted_degeneracy(self.gadget, self.root_vertices())

    def relabel(self, mapping: Mapping[int, int], new_n: int) -> "GadgetCertificate":
        """Push the whole certificate through an injective vertex map."""

        def remap_edges(edges: Iterable[Edge]) -> frozenset:
            return frozenset(norm_edge(mapping[u], mapping[v]) for u, v in edges)

        return GadgetCertificate(
            gadget=self.gadget.relabel(mapping, new_n),
            pattern=self.pattern,
            attachments={
                k: tuple(mapping[v] for v in vs)
                for k, vs in self.attachments.items()
            },
            attached={k: remap_edges(es) for k, es in self.attached.items()},
            decompositions={
                name: (parts, tuple(remap_edges(c) for c in copies))
                for name, (parts, copies) in self.decompositions.items()
            },
            claimed_degeneracy=self.claimed_degeneracy,
        )


class SpaceBuilder:
    """Mutable helper for assembling gadgets in one vertex space."""

    def __init__(self, n: int = 0):
        self.n = n
        self.edges: set[Edge] = set()

    def fresh(self, k: int) -> list[int]:
        out = list(range(self.n, self.n + k))
        self.n += k
        return out

    def add(self, u: int, v: int) -> Edge:
        e = norm_edge(u, v)
        if e in self.edges:
            raise DuplicateEdge(f"gadget would repeat edge {e}")
        self.edges.add(e)
        return e

    def add_copy(self, g: Graph, mapping: Mapping[int, int]) -> frozenset:
        """Embed g through ``mapping``, returning the image edge set."""
        return frozenset(self.add(mapping[u], mapping[v]) for u, v in g.edges)

    def graph(self) -> Graph:
        return from_edge_set(self.n, self.edges)


# ----------------------------------------------------------- surgeries


@dataclass(frozen=True)
class IdentificationMap:
    """An edge-bijective homomorphism obtained by identifying vertices."""

    source: Graph
    target: Graph
    map: Mapping[int, int]

    def __post_init__(self):
        check_identification(self.source, self.target, self.map)


def identify_vertices(
    g: Graph, pairs: Iterable[tuple[int, int]]
) -> tuple[Graph, "IdentificationMap"]:
    """Merge each pair (keep, drop) in turn; at its step each pair must
    be non-adjacent with disjoint neighbourhoods (no loops, no
    multi-edges).  Returns the merged graph and the vertex map."""
    mapping = {v: v for v in range(g.n)}
    cur = g
    for keep, drop in pairs:
        keep, drop = mapping[keep], mapping[drop]
        if keep == drop:
            raise WouldCreateLoop(f"{keep} already identified with {drop}")
        if cur.has_edge(keep, drop):
            raise WouldCreateLoop(f"{keep} and {drop} are adjacent")
        if cur.adj[keep] & cur.adj[drop]:
            raise WouldCreateMultiEdge(f"{keep} and {drop} share a neighbour")
        edges = {
            norm_edge(keep if a == drop else a, keep if b == drop else b)
            for a, b in cur.edges
        }
        cur = from_edge_set(cur.n, edges)
        mapping = {
            v: (keep if w == drop else w) for v, w in mapping.items()
        }
    return cur, IdentificationMap(source=g, target=cur, map=mapping)


def split_to_regular(g: Graph, r: int) -> tuple[Graph, "IdentificationMap"]:
    """Split every vertex of degree s*r (s >= 2) into s fresh vertices of
    degree r, yielding an r-regular graph and the identification map
    back onto the original graph.

    Incident edges are handed to siblings in ascending-neighbour order;
    vertices already of degree r keep a single representative.  Isolated
    vertices are dropped from the output.
    """
    if r < 1:
        raise BadParameters(f"r must be >= 1, got {r}")
    for v in range(g.n):
        if g.degree(v) % r != 0:
            raise NotRDivisible(
                f"degree {g.degree(v)} of {v} not divisible by {r}"
            )
    new_id = 0
    slot: dict[tuple[int, int], int] = {}  # (old vertex, group) -> new id
    back: dict[int, int] = {}
    for v in range(g.n):
        for grp in range(g.degree(v) // r):
            slot[(v, grp)] = new_id
            back[new_id] = v
            new_id += 1
    edges = []
    counters: dict[int, int] = {v: 0 for v in range(g.n)}
    for a, b in sorted(g.edges):
        ga = counters[a] // r
        gb = counters[b] // r
        counters[a] += 1
        counters[b] += 1
        edges.append((slot[(a, ga)], slot[(b, gb)]))
    out = Graph(new_id, edges)
    for v in range(out.n):
        if out.degree(v) != r:
            raise NotRegular(f"split produced degree {out.degree(v)} at {v}")
    return out, IdentificationMap(source=out, target=g, map=back)


def expand_edge(g: Graph, x: int, y: int, f: Graph, u: int, v: int) -> Graph:
    """F-expansion of edge xy through the F-edge uv: delete xy, add a
    fresh copy of F minus uv, join x to the copy of u and y to the copy
    of v."""
    if not g.has_edge(x, y):
        raise EdgeNotPresent(f"({x},{y}) not in graph")
    if not f.has_edge(u, v):
        raise EdgeNotPresent(f"({u},{v}) not in pattern")
    base = g.difference([(x, y)]).pad(g.n + f.n)
    offset = g.n
    new_edges = [(a + offset, b + offset) for a, b in f.edges
                 if {a, b} != {u, v}]
    new_edges += [(x, u + offset), (y, v + offset)]
    return base.add_edges(new_edges)


def pattern_regularity(f: Graph) -> int:
    """The common degree r of an r-regular pattern (r >= 1)."""
    degs = set(f.degrees())
    if len(degs) != 1 or 0 in degs:
        raise NotRegular(f"pattern degrees are {sorted(degs)}, expected one value")
    return degs.pop()


def edge_in_triangle(g: Graph, u: int, v: int) -> bool:
    return bool(g.adj[u] & g.adj[v])


def edge_in_four_cycle(g: Graph, u: int, v: int) -> bool:
    for a in g.adj[u] - {v}:
        for b in g.adj[v] - {u}:
            if a != b and g.has_edge(a, b):
                return True
    return False


def triangle_free_vertex(g: Graph) -> int | None:
    """Smallest vertex whose neighbourhood is independent, if any."""
    for x in range(g.n):
        nbrs = sorted(g.adj[x])
        if all(
            not g.has_edge(a, b)
            for i, a in enumerate(nbrs)
            for b in nbrs[i + 1:]
        ):
            if g.degree(x) > 0 or g.num_edges == 0:
                return x
    return None


def canonical_pattern_edge(f: Graph) -> Edge:
    """The fixed F-edge used in expansions and loop chains: the
    lexicographically least edge."""
    if not f.edges:
        raise EdgeNotPresent("pattern has no edges")
    return min(sorted(f.edges))


def loop_graph(f: Graph) -> tuple[Graph, int]:
    """The F-expansion of a single loop: a hub joined to the copies of
    both ends of the canonical F-edge, plus F minus that edge.  Returns
    (graph, hub); the graph has f+1 vertices and e(F)+1 edges."""
    u, v = canonical_pattern_edge(f)
    edges = [(1 + a, 1 + b) for a, b in f.edges if {a, b} != {u, v}]
    edges += [(0, 1 + u), (0, 1 + v)]
    return Graph(f.n + 1, edges), 0


def loop_chain(f: Graph, h: int) -> tuple[Graph, int]:
    """h expanded loops sharing one distinguished hub vertex.

    The hub has degree 2h; the graph has ``h*|F| + 1`` vertices and
    ``h*(e(F)+1)`` edges.  ``loop_chain(K_3, 1)`` is a 4-cycle.
    """
    if h < 0:
        raise BadParameters(f"h must be >= 0, got {h}")
    u, v = canonical_pattern_edge(f)
    edges: list[Edge] = []
    for i in range(h):
        off = 1 + i * f.n
        edges += [(off + a, off + b) for a, b in f.edges if {a, b} != {u, v}]
        edges += [(0, off + u), (0, off + v)]
    return Graph(h * f.n + 1, edges), 0


def check_identification(
    h: Graph, hp: Graph, phi: Mapping[int, int]
) -> dict[Edge, Edge]:
    """Validate that phi is an edge-bijective homomorphism H -> H'
    (H' is obtained from H by identifying vertices); returns the edge
    bijection.  Raises NotIdentification otherwise."""
    img: dict[Edge, Edge] = {}
    seen: set[Edge] = set()
    for a, b in h.edges:
        try:
            e = norm_edge(phi[a], phi[b])
        except KeyError as exc:
            raise NotIdentification(f"phi undefined on {exc}") from exc
        except Exception as exc:
            raise NotIdentification(f"edge ({a},{b}) collapses: {exc}") from exc
        if e not in hp.edges:
            raise NotIdentification(f"image edge {e} missing from H'")
        if e in seen:
            raise NotIdentification(f"two edges map onto {e}")
        seen.add(e)
        img[(a, b)] = e
    if seen != hp.edges:
        raise NotIdentification(
            f"{len(hp.edges) - len(seen)} edges of H' are not images"
        )
    return img
