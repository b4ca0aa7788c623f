"""Generators for divisible-but-undecomposable extremal instances.

Each generator returns the graph together with a checkable counting
certificate of why no decomposition into the target pattern exists:

* ``extremal_kr`` blows up the vertices of a complete graph minus a
  perfect matching into cliques; every clique copy of the pattern must
  spend a minimum number of "internal" edges (edges inside one blob),
  and there are too few internal edges to go around.
* ``extremal_two_cliques`` is two disjoint cliques whose components are
  individually indivisible by the cycle length.
* ``extremal_tripartite`` pins a bipartite pattern: every copy covers a
  multiple of r edges inside the first part, whose edge count is not a
  multiple of r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import BadParameters
from ..graphs import Graph, complete_graph, cycle_graph, is_divisible


def complete_bipartite(a: int, b: int) -> Graph:
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph(a + b, edges)


@dataclass(frozen=True)
class CliqueBlowupCertificate:
    """Internal-edge counting bound for the clique blow-up instance."""

    internal_edges: int
    min_internal_per_copy: Fraction
    max_copies: Fraction  # best possible number of edge-disjoint copies
    needed_copies: Fraction  # e(G) / e(pattern)
    extrapolated: bool = False  # smallest parameter, outside the proven family

    @property
    def holds(self) -> bool:
        return self.max_copies < self.needed_copies


@dataclass(frozen=True)
class ComponentCertificate:
    """A connected component whose edge count the cycle length misses."""

    component_edges: int
    cycle_length: int

    @property
    def holds(self) -> bool:
        return self.component_edges % self.cycle_length != 0


@dataclass(frozen=True)
class PartResidueCertificate:
    """Edge count of one part is not 0 mod r, but every copy's is."""

    part_edges: int
    r: int

    @property
    def holds(self) -> bool:
        return self.part_edges % self.r != 0


@dataclass(frozen=True)
class ExtremalInstance:
    graph: Graph
    pattern: Graph
    certificate: (
        CliqueBlowupCertificate | ComponentCertificate | PartResidueCertificate
    )


def _clique_blowup_minus_matching(blobs: int, h: int) -> Graph:
    """Each of ``blobs`` vertices of K_blobs minus the perfect matching
    {2j, 2j+1} becomes a K_h; blob i occupies [i*h, (i+1)*h)."""
    edges = []
    for i in range(blobs):
        off = i * h
        edges += [(off + a, off + b) for a, b in combinations(range(h), 2)]
    for i, j in combinations(range(blobs), 2):
        if i // 2 == j // 2 and i % 2 == 0 and j == i + 1:
            continue  # matching edge: blobs stay non-adjacent
        edges += [(i * h + a, j * h + b) for a in range(h) for b in range(h)]
    return Graph(blobs * h, edges)


def extremal_kr(r: int, s: int) -> ExtremalInstance:
    """A K_{r+1}-divisible regular graph with no K_{r+1}-decomposition.

    r even: blow up K_{r+2} minus a matching into K_h with
    h = (sr+1)(r+1).  r odd: take the even construction one step down
    (r+1 blobs, h = (s(r+1)+1)r) plus an independent set W of h+1
    vertices joined to every blob vertex.
    """
    if r < 2:
        raise BadParameters("r must be at least 2")
    if s < 0:
        raise BadParameters("s must be non-negative")
    pattern = complete_graph(r + 1)
    pattern_edges = r * (r + 1) // 2
    if r % 2 == 0:
        h = (s * r + 1) * (r + 1)
        g = _clique_blowup_minus_matching(r + 2, h)
        internal = (r + 2) * h * (h - 1) // 2
        per_copy = Fraction(r, 2)
        max_copies = Fraction(internal) / per_copy
    else:
        h = (s * (r + 1) + 1) * r
        core = _clique_blowup_minus_matching(r + 1, h)
        base = (r + 1) * h
        edges = set(core.edges)
        for w in range(base, base + h + 1):
            edges |= {(v, w) for v in range(base)}
        g = Graph(base + h + 1, edges)
        internal = (r + 1) * h * (h - 1) // 2
        per_copy = Fraction(r - 1, 2)
        # copies with exactly (r-1)/2 internal edges must use a W vertex
        touching_w = (r + 1) * (h + 1) * (s * (r + 1) + 1)
        max_copies = touching_w + (
            Fraction(internal) - touching_w * per_copy
        ) / Fraction(r + 1, 2)
        assert max_copies == (s * (r + 1) + 1) * ((r + 2) * h - (r - 2))
    cert = CliqueBlowupCertificate(
        internal_edges=internal,
        min_internal_per_copy=per_copy,
        max_copies=max_copies,
        needed_copies=Fraction(g.num_edges, pattern_edges),
        extrapolated=(s == 0),
    )
    return ExtremalInstance(graph=g, pattern=pattern, certificate=cert)


def extremal_two_cliques(ell: int, n: int) -> ExtremalInstance:
    """Two disjoint K_n with ell | e(G) but ell not dividing e(K_n)."""
    if ell < 6 or ell % 2:
        raise BadParameters("cycle length must be even and at least 6")
    if n % (2 * ell) != ell + 1:
        raise BadParameters(f"need n = {ell + 1} mod {2 * ell}")
    edges = [(a, b) for a, b in combinations(range(n), 2)]
    edges += [(n + a, n + b) for a, b in combinations(range(n), 2)]
    g = Graph(2 * n, edges)
    cert = ComponentCertificate(
        component_edges=n * (n - 1) // 2, cycle_length=ell
    )
    return ExtremalInstance(
        graph=g, pattern=cycle_graph(ell), certificate=cert
    )


def extremal_tripartite(r: int, m: int) -> ExtremalInstance:
    """Cliques on V_1 and V_3 plus everything-to-V_2, resisting K_{r,r}.

    Sizes |V_1| = 2r^2 m + r, |V_2| = 2r^2 m + 1, |V_3| = 2r^2 m - r.
    Any K_{r,r} copy meeting the inside of V_1 has one side entirely in
    V_1, so covers a multiple of r edges of G[V_1]; but e(G[V_1]) is not
    divisible by r.
    """
    if r < 2 or r % 2:
        raise BadParameters("r must be even and at least 2")
    if m < 1:
        raise BadParameters("m must be positive")
    s1 = 2 * r * r * m + r
    s2 = 2 * r * r * m + 1
    s3 = 2 * r * r * m - r
    v1 = range(s1)
    v2 = range(s1, s1 + s2)
    v3 = range(s1 + s2, s1 + s2 + s3)
    edges = [(a, b) for a, b in combinations(v1, 2)]
    edges += [(a, b) for a, b in combinations(v3, 2)]
    edges += [(a, b) for a in [*v1, *v3] for b in v2]
    g = Graph(s1 + s2 + s3, edges)
    cert = PartResidueCertificate(part_edges=s1 * (s1 - 1) // 2, r=r)
    return ExtremalInstance(
        graph=g, pattern=complete_bipartite(r, r), certificate=cert
    )
