"""Shifters: decomposable gadgets that move degree residues.

An xy-shifter with parameters (U, V) satisfies, modulo r,
d(x,V) = -1, d(y,V) = +1 and d(u,V) = 0 for every other vertex of U,
while itself decomposing into pattern copies.  Adding one to a graph
therefore shifts one unit of excess cross-degree from x to y without
disturbing decomposability.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from ..errors import BadParameters, TooSmall
from ..graphs import Graph, from_edge_set, norm_edge, rooted_degeneracy
from .core import canonical_pattern_edge, pattern_regularity


@dataclass(frozen=True)
class Shifter:
    """A built shifter with its decomposition witness."""

    graph: Graph
    pattern: Graph
    x: int
    y: int
    u_side: tuple[int, ...]  # the r+2 rails used in U, including x and y
    v_side: tuple[int, ...]  # the filler vertices used in V
    copies: tuple[frozenset, ...]

    def residues(self, v_pool: Sequence[int]) -> dict[int, int]:
        """d(w, V) mod r for each rail vertex w."""
        r = pattern_regularity(self.pattern)
        pool = set(v_pool)
        return {
            w: self.graph.degree_into(w, pool) % r for w in self.u_side
        }


def shifter_filler_size(f: Graph) -> int:
    """Vertices a shifter consumes from V: C(r+1,2) * (f-2)."""
    r = pattern_regularity(f)
    return comb(r + 1, 2) * (f.n - 2)


def build_shifter(
    x: int,
    y: int,
    u_pool: Sequence[int],
    v_pool: Sequence[int],
    f: Graph,
) -> Shifter:
    """Build an xy-shifter inside the given vertex pools.

    The base is a near-clique on x, y and r rails from U (x joined to
    the first rail, y to the others, rails joined completely); a pattern
    copy is glued along each base edge through the canonical pattern
    edge, with its f-2 remaining vertices taken from V.
    """
    r = pattern_regularity(f)
    u, v = canonical_pattern_edge(f)
    mid = sorted(set(range(f.n)) - {u, v})
    if x == y or x not in u_pool or y not in u_pool:
        raise BadParameters("x and y must be distinct vertices of the U pool")
    rails = [w for w in sorted(set(u_pool)) if w not in (x, y)]
    if len(rails) < r:
        raise TooSmall(f"U pool has {len(rails)} spare vertices, need {r}")
    rails = rails[:r]
    need = shifter_filler_size(f)
    fillers = sorted(set(v_pool))
    if len(fillers) < need:
        raise TooSmall(f"V pool has {len(fillers)} vertices, need {need}")
    if set(u_pool) & set(v_pool):
        raise BadParameters("U and V pools overlap")

    base = [(x, rails[0])]
    base += [(y, rails[j]) for j in range(1, r)]
    base += [(rails[i], rails[j]) for i in range(r) for j in range(i + 1, r)]

    edges: set = set()
    copies = []
    pos = 0
    for a, b in base:
        seat = {u: a, v: b}
        seat.update(zip(mid, fillers[pos:pos + f.n - 2]))
        pos += f.n - 2
        copy = frozenset(norm_edge(seat[p], seat[q]) for p, q in f.edges)
        if copy & edges:
            raise BadParameters("glued copies overlap")
        edges |= copy
        copies.append(copy)

    n = max(max(u_pool), max(fillers[:need]), x, y) + 1
    return Shifter(
        graph=from_edge_set(n, edges),
        pattern=f,
        x=x,
        y=y,
        u_side=(x, y, *rails),
        v_side=tuple(fillers[:need]),
        copies=tuple(copies),
    )


def shifter_degeneracy(s: Shifter) -> int:
    """Exact degeneracy of the shifter rooted at its two endpoints;
    the construction promises at most r."""
    return rooted_degeneracy(s.graph, {s.x, s.y})
