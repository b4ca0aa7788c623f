"""Edge-mover parts: small regular graphs with controlled edge residues.

Every r-divisible graph has its edge count divisible by a := r (r odd)
or r/2 (r even).  The templates here are r-regular graphs Q and Q~ with
e(Q) = +a and e(Q~) = -a modulo e(F); placing Q in one partition class
and Q~ in the next, together with an absorber for their union, moves a
residue of a edges between the classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graphs import Graph, disjoint_union
from .core import pattern_regularity


@dataclass(frozen=True)
class MoverParts:
    q: Graph        # e(q) = +a mod e(F)
    q_tilde: Graph  # f-1 disjoint copies of q; e = -a mod e(F)
    a: int


def edge_residue_unit(r: int) -> int:
    """The gcd of the edge counts of r-regular graphs."""
    return r if r % 2 else r // 2


def _bipartite_circulant(r: int, half: int) -> Graph:
    """r-regular bipartite graph on half+half vertices: left i joined to
    right (i+s) mod half for s = 0..r-1."""
    edges = [
        (i, half + (i + s) % half)
        for i in range(half)
        for s in range(r)
    ]
    return Graph(2 * half, edges)


def _walecki_cycles(count: int, m: int) -> Graph:
    """``count`` edge-disjoint Hamilton cycles on 2m+1 vertices, from
    the classical zigzag rotation; vertex 2m is the hub."""
    hub = 2 * m
    zigzag = [0]
    for i in range(1, m):
        zigzag += [i, 2 * m - i]
    zigzag.append(m)
    edges = []
    for k in range(count):
        walk = [hub] + [(z + k) % (2 * m) for z in zigzag]
        edges += [
            (walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))
        ]
    return Graph(2 * m + 1, edges)


def mover_parts(f: Graph) -> MoverParts:
    """The mover templates (Q, Q~, a) for the pattern f.

    r odd: Q is an r-regular bipartite circulant on (f+1)+(f+1)
    vertices, so e(Q) = rf + r = +a mod e(F) with a = r.  r even: Q is
    r/2 edge-disjoint Hamilton cycles on 2f+1 vertices, so
    e(Q) = rf + r/2 = +a with a = r/2.  Q~ is f-1 disjoint copies of Q,
    giving e(Q~) = (f-1)a = -a mod e(F).
    """
    r = pattern_regularity(f)
    a = edge_residue_unit(r)
    if r % 2:
        q = _bipartite_circulant(r, f.n + 1)
    else:
        q = _walecki_cycles(r // 2, f.n)
    q_tilde, _ = disjoint_union([q] * (f.n - 1))
    assert q.num_edges % f.num_edges == a % f.num_edges
    assert q_tilde.num_edges % f.num_edges == (-a) % f.num_edges
    return MoverParts(q=q, q_tilde=q_tilde, a=a)
