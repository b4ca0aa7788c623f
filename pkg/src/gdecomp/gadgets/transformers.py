"""Transformers: gadgets that exchange one attached graph for another.

Given an r-regular graph H and an edge-surjection H -> H' obtained by
identifying vertices, a transformer T is a graph, edge-disjoint from
both and empty on their vertices, such that both ``T + H`` and
``T + H'`` decompose into copies of the r-regular pattern F.  Chains of
transformers later turn arbitrary divisible leftovers into disjoint
pattern copies.
"""

from __future__ import annotations

from typing import Mapping

from ..errors import BadParameters, NotIdentification, NotRegular
from ..graphs import Edge, Graph, norm_edge
from .core import (
    GadgetCertificate,
    SpaceBuilder,
    check_identification,
    edge_in_four_cycle,
    edge_in_triangle,
    pattern_regularity,
    triangle_free_vertex,
)


def _variant_choices(f: Graph, variant: str) -> tuple[Edge, int, int]:
    """The (uv edge, apex vertex, degeneracy claim) for a transformer
    variant.  ``"auto"`` picks the strongest construction available."""
    r = pattern_regularity(f)
    if variant == "generic":
        return min(sorted(f.edges)), 0, 3 * r
    if variant != "auto":
        raise BadParameters(f"unknown transformer variant {variant!r}")
    x0 = triangle_free_vertex(f)
    if x0 is None:
        return min(sorted(f.edges)), 0, 3 * r
    sparse = [
        e for e in sorted(f.edges)
        if not edge_in_triangle(f, *e) and not edge_in_four_cycle(f, *e)
    ]
    if sparse:
        return sparse[0], x0, r
    open_edges = [
        e for e in sorted(f.edges) if not edge_in_triangle(f, *e)
    ]
    return open_edges[0], x0, r + 1


def transformer_degeneracy_claim(f: Graph) -> int:
    """Upper bound on the rooted degeneracy of the transformer built for
    pattern f, as a function of which short cycles f avoids."""
    if f.n == 3:
        pattern_regularity(f)
        return 4
    return _variant_choices(f, "auto")[2]


def degeneracy_bound(f: Graph) -> int:
    """The best rooted-degeneracy bound this package's gadget
    constructions achieve for pattern f: 4 for the triangle, r for a
    pattern with an edge in no triangle and no 4-cycle, r+1 for one
    with a triangle-free vertex, 3r otherwise."""
    return transformer_degeneracy_claim(f)


def build_transformer(
    h: Graph,
    hp: Graph,
    phi: Mapping[int, int],
    f: Graph,
    space: int | None = None,
    variant: str = "auto",
) -> GadgetCertificate:
    """Build a transformer exchanging H for H' = phi(H).

    H must be r-regular on its support, H' vertex-disjoint from H, and
    phi an edge-bijective homomorphism.  Fresh gadget vertices are
    allocated from ``space`` (default: just past both supports).  The
    certificate carries decompositions named ``"T+H"`` and ``"T+H'"``.
    ``variant="generic"`` forces the plain construction even when the
    pattern admits a lower-degeneracy one.
    """
    r = pattern_regularity(f)
    sup_h = h.support()
    sup_hp = hp.support()
    if sup_h & sup_hp:
        raise NotIdentification("the two attached graphs share vertices")
    bad = [x for x in sup_h if h.degree(x) != r]
    if bad:
        raise NotRegular(f"attached graph is not {r}-regular at {bad[:5]}")
    check_identification(h, hp, phi)
    if space is None:
        space = max(h.n, hp.n)
    if f.n == 3 and variant == "auto":
        builder, decomps = _triangle_transformer(h, hp, phi, space)
        claim = 4
    else:
        uv, x0, claim = _variant_choices(f, variant)
        builder, decomps = _generic_transformer(h, hp, phi, f, r, space,
                                                uv, x0)
    return GadgetCertificate(
        gadget=builder.graph(),
        pattern=f,
        attachments={
            "H": tuple(sorted(sup_h)),
            "H'": tuple(sorted(sup_hp)),
        },
        attached={"H": h.edges, "H'": hp.edges},
        decompositions={
            "T+H": (("T", "H"), tuple(decomps["T+H"])),
            "T+H'": (("T", "H'"), tuple(decomps["T+H'"])),
        },
        claimed_degeneracy=claim,
    )


def _generic_transformer(h, hp, phi, f, r, space, uv, x0):
    """Per H-edge, a pattern copy sharing that edge; per vertex and
    spoke index, a star-completion piece usable from either side."""
    u, v = uv
    a_list = sorted(f.adj[u] - {v})
    b_list = sorted(f.adj[v] - {u})
    mid_vertices = sorted(set(range(f.n)) - {u, v})
    mid_edges = [e for e in sorted(f.edges)
                 if u not in e and v not in e]

    builder = SpaceBuilder(space)
    oriented = sorted(h.edges)  # each edge directed low -> high
    z: dict[tuple[int, int], dict[int, int]] = {}
    spoke_h: dict[tuple[int, int], set] = {}   # E1, keyed by edge
    core_e: dict[tuple[int, int], set] = {}    # E2
    spoke_hp: dict[tuple[int, int], set] = {}  # E3
    for e in oriented:
        x, y = e
        z[e] = dict(zip(mid_vertices, builder.fresh(f.n - 2)))
        spoke_h[e] = {builder.add(x, z[e][a]) for a in a_list}
        spoke_h[e] |= {builder.add(y, z[e][b]) for b in b_list}
        core_e[e] = {builder.add(z[e][p], z[e][q]) for p, q in mid_edges}
        spoke_hp[e] = {builder.add(phi[x], z[e][a]) for a in a_list}
        spoke_hp[e] |= {builder.add(phi[y], z[e][b]) for b in b_list}

    # Star-completion pieces: for each x and each spoke index j, the j-th
    # spoke ends at x form an independent r-set; glue a copy of f minus
    # its apex onto that set, giving a pattern copy through either the
    # spokes at x or the spokes at phi(x).
    apex_nbrs = sorted(f.adj[x0])
    apex_rest = sorted(set(range(f.n)) - {x0} - f.adj[x0])
    apex_edges = [e for e in sorted(f.edges) if x0 not in e]
    completion: dict[tuple[int, int], frozenset] = {}
    ends: dict[tuple[int, int], list[int]] = {}
    for x in sorted(h.support()):
        for j in range(r - 1):
            tips = []
            for y in sorted(h.adj[x]):
                if x < y:
                    tips.append(z[(x, y)][a_list[j]])
                else:
                    tips.append(z[(y, x)][b_list[j]])
            seat = dict(zip(apex_nbrs, sorted(tips)))
            seat.update(zip(apex_rest, builder.fresh(f.n - r - 1)))
            completion[(x, j)] = frozenset(
                builder.add(seat[p], seat[q]) for p, q in apex_edges
            )
            ends[(x, j)] = tips

    def star(centre: int, key: tuple[int, int]) -> frozenset:
        return frozenset(norm_edge(centre, t) for t in ends[key])

    with_h = [
        frozenset({e}) | spoke_h[e] | core_e[e] for e in oriented
    ] + [
        star(phi[key[0]], key) | completion[key] for key in sorted(completion)
    ]
    with_hp = [
        frozenset({norm_edge(phi[e[0]], phi[e[1]])}) | spoke_hp[e] | core_e[e]
        for e in oriented
    ] + [
        star(key[0], key) | completion[key] for key in sorted(completion)
    ]
    return builder, {"T+H": with_h, "T+H'": with_hp}


def _cycles_of(h: Graph) -> list[list[int]]:
    """The vertex-disjoint cycles of a 2-regular graph, each starting at
    its smallest vertex."""
    seen: set[int] = set()
    cycles = []
    for start in sorted(h.support()):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = min(w for w in h.adj[cur] if w != prev)
            if nxt == start:
                break
            cyc.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        cycles.append(cyc)
    return cycles


def _triangle_transformer(h, hp, phi, space):
    """Triangle pattern, 2-regular H: per cycle, three fresh vertices
    per position arranged so both unions split into triangles and the
    gadget peels at degeneracy 4."""
    builder = SpaceBuilder(space)
    with_h: list[frozenset] = []
    with_hp: list[frozenset] = []
    for cyc in _cycles_of(h):
        s = len(cyc)
        us = builder.fresh(s)
        vs = builder.fresh(s)
        ws = builder.fresh(s)
        for i in range(s):
            x = cyc[i]
            un = us[(i + 1) % s]
            px = phi[x]
            builder.add(x, us[i])
            builder.add(x, vs[i])
            builder.add(x, ws[i])
            builder.add(x, un)
            builder.add(vs[i], ws[i])
            builder.add(us[i], vs[i])
            builder.add(ws[i], un)
            builder.add(px, us[i])
            builder.add(px, vs[i])
            builder.add(px, ws[i])
            builder.add(px, un)
        for i in range(s):
            x, xn = cyc[i], cyc[(i + 1) % s]
            un = us[(i + 1) % s]
            px, pxn = phi[x], phi[xn]
            for a, b, c in (
                (x, xn, un),
                (x, vs[i], ws[i]),
                (px, us[i], vs[i]),
                (px, ws[i], un),
            ):
                with_h.append(frozenset({
                    norm_edge(a, b), norm_edge(a, c), norm_edge(b, c),
                }))
            for a, b, c in (
                (px, pxn, un),
                (px, vs[i], ws[i]),
                (x, us[i], vs[i]),
                (x, ws[i], un),
            ):
                with_hp.append(frozenset({
                    norm_edge(a, b), norm_edge(a, c), norm_edge(b, c),
                }))
    return builder, {"T+H": with_h, "T+H'": with_hp}
