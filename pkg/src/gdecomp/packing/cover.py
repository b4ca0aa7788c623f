"""Covering cross edges between vertex classes with pattern copies.

Every edge between ``U`` and ``V`` is covered by a copy of F whose
remaining vertices lie inside ``V``: pick a vertex u of maximum degree r
in F; the cross edges at each x in U (requiring r | d(x, V)) are grouped
by an r-clique factor of the neighbourhood, each clique hosting the
image of N_F(u), and the rest of F is embedded greedily into V.  Dense
mode finds clique factors greedily per x; sparse mode delegates to the
random family machinery in :mod:`.factors`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import PreconditionViolated, StageFailed, Unsolvable
from ..graphs import Graph, complete_graph, from_edge_set, norm_edge
from ..partitions import Partition
from ..patterns import LabelledPattern, embed_all
from .copies import copy_support
from .factors import edge_disjoint_factors, perfect_factor


@dataclass
class CrossCover:
    """Copies covering H[U,V] plus the V-side edges they consumed."""

    copies: list[frozenset]
    used_in_v: Graph
    report: dict = field(default_factory=dict)


def _anchor_vertex(f: Graph) -> int:
    """The designated vertex of F whose star goes across: max degree,
    smallest id on ties."""
    return max(range(f.n), key=lambda v: (f.degree(v), -v))


def cover_cross(
    h: Graph,
    u_side: frozenset[int],
    v_side: frozenset[int],
    f: Graph,
    mode: str = "dense",
    seed: int = 0,
    t: int | None = None,
    rho: float = 0.5,
    degree_slack: float | None = None,
) -> CrossCover:
    """Copies of F decomposing ``h[U,V] + (some edges inside V)``.

    Enforced precondition: r | d_h(x, V) for every x in U, where r is
    the maximum degree of F.  The remaining stated hypotheses (minimum
    degree inside neighbourhoods, codegree and usage bounds) are checked
    and reported.
    """
    f, _ = f.compact()
    u_side, v_side = frozenset(u_side), frozenset(v_side)
    if u_side & v_side:
        raise PreconditionViolated("U and V overlap")
    anchor = _anchor_vertex(f)
    r = f.degree(anchor)
    root_pat = sorted(f.adj[anchor])
    rest_pat = [v for v in range(f.n) if v != anchor and v not in f.adj[anchor]]
    k_r = complete_graph(r)
    xs = sorted(u_side)
    for x in xs:
        d = len(h.adj[x] & v_side)
        if d % r != 0:
            raise PreconditionViolated(
                f"r={r} does not divide d({x}, V) = {d}"
            )

    report: dict = {"mode": mode, "r": r, "min_nbhd_degree_ok": True}
    for x in xs:
        nb = h.adj[x] & v_side
        sub = h.induced(nb)
        mind = min((len(sub.adj[y] & nb) for y in nb), default=0)
        if nb and mind < (1 - 1 / r) * len(nb):
            report["min_nbhd_degree_ok"] = False

    used_v: set = set()
    factors: list[tuple[int, list[frozenset]]] = []
    if mode == "dense":
        for x in xs:
            nb = h.adj[x] & v_side
            if not nb:
                continue
            avail = from_edge_set(h.n, h.induced(nb).edges - used_v)
            fac = perfect_factor(avail, k_r, ground=frozenset(nb))
            if isinstance(fac, Unsolvable):
                raise StageFailed(
                    f"cover_cross: no K_{r}-factor in N({x}, V): {fac.reason}"
                )
            factors.append((x, fac))
            for clique in fac:
                used_v |= clique
    elif mode == "sparse":
        targets = [frozenset(h.adj[x] & v_side) for x in xs]
        live = [(x, tg) for x, tg in zip(xs, targets) if tg]
        chosen, _families, frep = edge_disjoint_factors(
            h.induced(v_side),
            [tg for _, tg in live],
            k_r,
            t=t,
            rho=rho,
            seed=seed,
            degree_slack=degree_slack,
        )
        report["factor_hypotheses_ok"] = frep.all_ok()
        for (x, _tg), fac in zip(live, chosen):
            factors.append((x, fac))
            for clique in fac:
                used_v |= clique
    else:
        raise PreconditionViolated(f"unknown mode {mode!r}")

    # clique edges consumed by a copy are only those matching F[N(u)];
    # the rest of each clique is released
    jobs: list[tuple[int, list[int]]] = [
        (x, sorted(copy_support(clique)))
        for x, fac in factors
        for clique in fac
    ]

    # F* = F minus the anchor minus the edges inside its neighbourhood,
    # rooted at the neighbourhood image (the clique vertices)
    old2new = {v: i for i, v in enumerate(p for p in range(f.n) if p != anchor)}
    fstar_edges = [
        (old2new[a], old2new[b])
        for a, b in f.edges
        if anchor not in (a, b)
        and not (a in f.adj[anchor] and b in f.adj[anchor])
    ]
    fstar = Graph(f.n - 1, fstar_edges)

    pre_used = set()
    for x, w in jobs:
        for a in range(len(root_pat)):
            for b in range(a + 1, len(root_pat)):
                if f.has_edge(root_pat[a], root_pat[b]):
                    pre_used.add(norm_edge(w[a], w[b]))
    patterns = [
        LabelledPattern(
            fstar,
            roots={old2new[p]: w[i] for i, p in enumerate(root_pat)},
        )
        for x, w in jobs
    ]
    result = embed_all(
        h.induced(v_side),
        patterns,
        used=from_edge_set(h.n, pre_used),
    )
    used_v = set()
    copies: list[frozenset] = []
    for (x, w), img in zip(jobs, result.embeddings):
        full_img = {anchor: x}
        for p in range(f.n):
            if p != anchor:
                full_img[p] = img[old2new[p]]
        for i, p in enumerate(root_pat):
            full_img[p] = w[i]
        copy = frozenset(
            norm_edge(full_img[a], full_img[b]) for a, b in f.edges
        )
        copies.append(copy)
        used_v |= {e for e in copy if e[0] in v_side and e[1] in v_side}
    report["num_copies"] = len(copies)
    return CrossCover(copies, from_edge_set(h.n, used_v), report)


def cover_partition_cross(
    h: Graph,
    partition: Partition,
    f: Graph,
    mode: str = "dense",
    seed: int = 0,
    t: int | None = None,
    rho: float = 0.5,
    degree_slack: float | None = None,
) -> tuple[list[frozenset], Graph]:
    """Cover all cross-part edges of h with copies of F, consuming some
    within-part edges; returns (copies, leftover-inside-parts).

    For each part V_i (i >= 2) the edges between V_i and the union of
    earlier parts are covered with V-side vertices inside V_i, so the
    per-level divisibility precondition is r | d(x, V_i) for x in
    earlier parts (arranged by a parity-graph selection upstream).
    """
    copies: list[frozenset] = []
    current = h
    k = partition.k
    for i in range(1, k):
        v_i = partition.parts[i]
        below = frozenset().union(*partition.parts[:i])
        sub_edges = (
            current.cross(below, v_i).edges | current.induced(v_i).edges
        )
        sub = from_edge_set(h.n, sub_edges)
        cover = cover_cross(
            sub, below, v_i, f, mode=mode, seed=seed + i,
            t=t, rho=rho, degree_slack=degree_slack,
        )
        for c in cover.copies:
            copies.append(c)
        consumed: set = set()
        for c in cover.copies:
            consumed |= c
        current = current.difference(consumed)
    for u, v in current.edges:
        pa, pb = partition.part_of(u), partition.part_of(v)
        if pa != pb:
            raise StageFailed(f"cross edge ({u},{v}) survived the cover")
    return copies, current
