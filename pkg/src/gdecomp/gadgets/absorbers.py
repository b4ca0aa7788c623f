"""Absorbers: gadgets that swallow a fixed divisible leftover graph.

An absorber A for a graph H decomposes into pattern copies both on its
own and together with H, while staying empty on V(H).  It is built from
two loop transformers meeting in a shared chain of expanded loops: one
turns H into the chain, the other turns disjoint pattern copies into the
same chain.
"""

from __future__ import annotations

from ..errors import NotDivisible
from ..graphs import Graph, from_edge_set, is_divisible
from .core import (
    GadgetCertificate,
    canonical_pattern_edge,
    loop_chain,
    pattern_regularity,
    split_to_regular,
)
from .transformers import build_transformer


def _loop_transformer_parts(h: Graph, f: Graph, loop_map, hub: int, space: int):
    """Shared machinery for transformers into a chain of expanded loops.

    ``loop_map[(edge_index, pattern_vertex)]`` gives the global vertex
    of the loop chain playing that pattern vertex in that loop;``hub``
    is the chain's distinguished vertex.  Returns the gadget edge set,
    the two copy lists ("with H" / "with the chain"), and the next free
    vertex id.
    """
    r = pattern_regularity(f)
    u, v = canonical_pattern_edge(f)
    h_edges = sorted(h.edges)

    # Expand every edge of H through a fresh pattern copy, in a local
    # scratch space: originals keep their ids, each edge gets f.n fresh.
    exp_of: dict[tuple[int, int, int], int] = {}
    nxt = h.n
    exp_edges = []
    for idx, (x, y) in enumerate(h_edges):
        for p in range(f.n):
            exp_of[(idx, p)] = nxt
            nxt += 1
        for p, q in f.edges:
            if {p, q} != {u, v}:
                exp_edges.append((exp_of[(idx, p)], exp_of[(idx, q)]))
        exp_edges.append((x, exp_of[(idx, u)]))
        exp_edges.append((y, exp_of[(idx, v)]))
    h_exp = Graph(nxt, exp_edges)

    # Collapsing each edge's copy of v back onto the edge's low endpoint
    # recovers H with a pattern copy attached at that endpoint.
    att_of: dict[tuple[int, int], int] = {}
    att_edges = set(h.edges)
    att_copies: list[frozenset] = []
    n_global = space
    for idx, (x, y) in enumerate(h_edges):
        att_of[(idx, v)] = x
        for p in range(f.n):
            if p != v:
                att_of[(idx, p)] = n_global
                n_global += 1
        copy = frozenset(
            tuple(sorted((att_of[(idx, p)], att_of[(idx, q)])))
            for p, q in f.edges
        )
        att_copies.append(copy)
        att_edges |= copy
    h_att = from_edge_set(n_global, att_edges)

    # Split the expansion down to an r-regular graph on fresh global ids.
    h0_local, ident = split_to_regular(h_exp, r)
    back = ident.map
    offset = n_global
    h0 = h0_local.relabel({i: i + offset for i in range(h0_local.n)},
                          offset + h0_local.n)
    n_global += h0_local.n

    def to_att(local: int) -> int:
        w = back[local - offset]
        if w < h.n:
            return w
        idx, p = divmod(w - h.n, f.n)
        return att_of[(idx, p)]

    def to_loop(local: int) -> int:
        w = back[local - offset]
        if w < h.n:
            return hub
        idx, p = divmod(w - h.n, f.n)
        return loop_map[(idx, p)]

    phi1 = {x: to_att(x) for x in sorted(h0.support())}
    phi2 = {x: to_loop(x) for x in sorted(h0.support())}

    t1 = build_transformer(h0, h_att, phi1, f, space=n_global)
    n_global = t1.gadget.n
    chain_edges = frozenset(
        tuple(sorted((loop_map[(idx, p)], loop_map[(idx, q)])))
        for idx in range(len(h_edges))
        for p, q in f.edges
        if {p, q} != {u, v}
    ) | frozenset(
        tuple(sorted((hub, loop_map[(idx, p)])))
        for idx in range(len(h_edges))
        for p in (u, v)
    )
    chain = from_edge_set(n_global, chain_edges)
    t2 = build_transformer(h0, chain, phi2, f, space=n_global)
    n_global = t2.gadget.n

    gadget_edges = (
        (h_att.edges - h.edges)
        | t1.gadget.edges
        | h0.edges
        | t2.gadget.edges
    )
    with_h = (
        t1.decompositions["T+H'"][1]  # consumes T1, H_att (incl. H)
        + t2.decompositions["T+H"][1]  # consumes T2, H_0
    )
    with_chain = (
        tuple(att_copies)  # the attached copies, one per H-edge
        + t1.decompositions["T+H"][1]  # consumes T1 and H_0
        + t2.decompositions["T+H'"][1]  # consumes T2 and the chain
    )
    return gadget_edges, with_h, with_chain, chain_edges, n_global


def build_loop_transformer(h: Graph, f: Graph) -> GadgetCertificate:
    """Transformer exchanging an r-divisible graph H for the chain of
    e(H) expanded loops.  Decompositions are named ``"T+H"`` and
    ``"T+L"``; the chain is the attached graph ``"L"``."""
    r = pattern_regularity(f)
    for x in h.support():
        if h.degree(x) % r:
            raise NotDivisible(
                f"degree {h.degree(x)} of vertex {x} not divisible by {r}"
            )
    h_count = h.num_edges
    chain_local, hub_local = loop_chain(f, h_count)
    offset = h.n
    hub = offset + hub_local
    loop_map = {
        (idx, p): offset + 1 + idx * f.n + p
        for idx in range(h_count)
        for p in range(f.n)
    }
    space = offset + chain_local.n
    gadget_edges, with_h, with_chain, chain_edges, n_global = (
        _loop_transformer_parts(h, f, loop_map, hub, space)
    )
    chain_verts = (hub,) + tuple(sorted(
        v for v in loop_map.values()
    ))
    return GadgetCertificate(
        gadget=from_edge_set(n_global, gadget_edges),
        pattern=f,
        attachments={
            "H": tuple(sorted(h.support())),
            "L": chain_verts,
        },
        attached={"H": h.edges, "L": chain_edges},
        decompositions={
            "T+H": (("T", "H"), tuple(with_h)),
            "T+L": (("T", "L"), tuple(with_chain)),
        },
        claimed_degeneracy=4 if f.n == 3 else 3 * r,
    )


def build_absorber(
    h: Graph,
    f: Graph,
    exact_budget: int | None = 200_000,
) -> GadgetCertificate:
    """An absorber for the divisible graph H: a gadget A, empty on
    V(H), such that both A and A + H decompose into pattern copies.

    When H itself decomposes (found within ``exact_budget`` search
    nodes), the empty gadget already qualifies and is returned.
    Otherwise A is assembled from two loop transformers sharing one
    chain of e(H) expanded loops: one transforms H into the chain, the
    other transforms e(H)/e(F) disjoint pattern copies into it.
    Decompositions are named ``"A"`` and ``"A+H"``.
    """
    if not is_divisible(h, f):
        raise NotDivisible("attached graph is not divisible by the pattern")
    r = pattern_regularity(f)

    if exact_budget:
        from ..packing.engines import exact_decompose

        found = exact_decompose(h, f, budget=exact_budget)
        if found:
            return GadgetCertificate(
                gadget=Graph(h.n),
                pattern=f,
                attachments={"H": tuple(sorted(h.support()))},
                attached={"H": h.edges},
                decompositions={
                    "A": (("T",), ()),
                    "A+H": (("T", "H"), tuple(found.copies)),
                },
                claimed_degeneracy=0,
            )

    h_count = h.num_edges
    p = h_count // f.num_edges

    chain_local, hub_local = loop_chain(f, h_count)
    offset = h.n
    hub = offset + hub_local
    loop_map = {
        (idx, q): offset + 1 + idx * f.n + q
        for idx in range(h_count)
        for q in range(f.n)
    }
    space = offset + chain_local.n

    # p disjoint pattern copies, on fresh vertices after the chain.
    pf_edges = set()
    pf_copies = []
    for i in range(p):
        shift = space + i * f.n
        copy = frozenset(
            tuple(sorted((a + shift, b + shift))) for a, b in f.edges
        )
        pf_copies.append(copy)
        pf_edges |= copy
    space += p * f.n
    pf = from_edge_set(space, pf_edges)

    t1_edges, t1_with_h, t1_with_chain, chain_edges, space = (
        _loop_transformer_parts(h, f, loop_map, hub, space)
    )
    t2_edges, t2_with_pf, t2_with_chain, _, space = (
        _loop_transformer_parts(pf, f, loop_map, hub, space)
    )

    gadget_edges = t1_edges | chain_edges | t2_edges | pf_edges
    return GadgetCertificate(
        gadget=from_edge_set(space, gadget_edges),
        pattern=f,
        attachments={"H": tuple(sorted(h.support()))},
        attached={"H": h.edges},
        decompositions={
            "A": (("T",), tuple(t1_with_chain) + tuple(t2_with_pf)),
            "A+H": (
                ("T", "H"),
                tuple(t1_with_h) + tuple(t2_with_chain) + tuple(pf_copies),
            ),
        },
        claimed_degeneracy=4 if f.n == 3 else 3 * r,
    )
