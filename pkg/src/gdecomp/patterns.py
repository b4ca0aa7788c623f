"""Labelled patterns and the greedy edge-disjoint embedder.

A pattern is a small graph whose vertices are either *rooted* (forced
onto a named host vertex), *part-labelled* (image must land in a given
part of a host partition), or *anywhere*.  :func:`embed_all` embeds a
sequence of patterns into a host so that the edge images are pairwise
disjoint, greedily placing free vertices in a rooted-degeneracy order
and avoiding the *danger set* of host vertices whose already-used degree
exceeds ``b * sqrt(m)`` (m = number of patterns).  That cap is what
bounds the maximum degree of the union of all images by
``2 b (sqrt(m) + s)`` with s the largest pattern size.

Ties are always broken toward the smallest host vertex id, so the whole
procedure is deterministic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadParameters,
    BadVertex,
    DuplicateRootLabel,
    EmbedFailed,
)
from .graphs import Graph, degeneracy_order, from_edge_set, norm_edge
from .partitions import Partition

ANYWHERE = None


@dataclass(frozen=True)
class LabelledPattern:
    """A pattern graph with root placements and part labels.

    ``roots`` maps pattern vertices to fixed host vertices; ``labels``
    maps free pattern vertices to a part index (absent or ``None`` means
    anywhere).
    """

    graph: Graph
    roots: Mapping[int, int] = field(default_factory=dict)
    labels: Mapping[int, int | None] = field(default_factory=dict)

    def __post_init__(self):
        images = list(self.roots.values())
        if len(set(images)) != len(images):
            raise DuplicateRootLabel(f"repeated root image in {images}")
        for v in self.roots:
            if not (0 <= v < self.graph.n):
                raise BadVertex(f"root {v} outside pattern")
        for v in self.labels:
            if not (0 <= v < self.graph.n):
                raise BadVertex(f"label on {v} outside pattern")

    @property
    def free(self) -> list[int]:
        return [v for v in range((self.graph.n)) if v not in self.roots]

    def rooted_degeneracy_bound(self) -> int:
        """Max count of already-placed neighbours in the embedding order."""
        order = self._order()
        pos = {v: i for i, v in enumerate(order)}
        root_count = len(self.roots)
        return max(
            (
                sum(1 for w in self.graph.adj[v] if pos[w] < pos[v])
                for v in order[root_count:]
            ),
            default=0,
        )

    def _order(self) -> list[int]:
        """Roots first, then free vertices in a degeneracy order.

        Root adjacency is irrelevant to the order, so root-root edges are
        dropped before the rooted-degeneracy computation (which requires
        an independent root set).
        """
        b = self.graph
        rr = [
            (u, v)
            for u, v in b.edges
            if u in self.roots and v in self.roots
        ]
        return degeneracy_order(b.difference(rr), set(self.roots)) if rr else \
            degeneracy_order(b, set(self.roots))


@dataclass
class EmbedResult:
    """Outcome of :func:`embed_all`."""

    embeddings: list[dict[int, int]]
    used: Graph
    max_used_degree: int
    danger_threshold: float
    precondition_violations: list[tuple[tuple[int, ...], int]]


def _part_masks(n: int, partition: Partition | None) -> dict[int, np.ndarray]:
    masks: dict[int, np.ndarray] = {}
    if partition is not None:
        for i, p in enumerate(partition.parts):
            m = np.zeros(n, dtype=bool)
            m[sorted(p)] = True
            masks[i] = m
    return masks


def embed_all(
    host: Graph,
    patterns: Sequence[LabelledPattern],
    partition: Partition | None = None,
    b: int | None = None,
    used: Graph | None = None,
    precondition_slack: float | None = None,
    rng: random.Random | None = None,
) -> EmbedResult:
    """Embed every pattern into ``host`` with edge-disjoint images.

    ``used`` seeds the already-consumed edge set (images must also avoid
    it, and it counts toward danger degrees).  ``b`` defaults to the
    largest pattern max-degree.  The stated lower bound on common
    neighbourhoods ``d(S, V_i) >= 2 d b (sqrt(m) + s + 1)`` is checked
    for every constraint set S that actually arises and reported, not
    enforced; pass ``precondition_slack`` to override the right-hand
    side with a fixed number.

    Candidate images are chosen least-used-first with ties broken toward
    the smallest host id; pass a seeded ``rng`` to instead sample the
    candidate uniformly (useful to escape adversarial concentration when
    the host is nearly saturated).
    """
    if not patterns:
        return EmbedResult([], used or Graph(host.n), 0, 0.0, [])
    m_bar = len(patterns)
    s_max = max(p.graph.n for p in patterns)
    if b is None:
        b = max(max(p.graph.max_degree() for p in patterns), 1)
    d_max = max(p.rooted_degeneracy_bound() for p in patterns)
    threshold = b * math.sqrt(m_bar)
    need = (
        precondition_slack
        if precondition_slack is not None
        else 2 * d_max * b * (math.sqrt(m_bar) + s_max + 1)
    )

    n = host.n
    avail = np.zeros((n, n), dtype=bool)
    for u, v in host.edges:
        avail[u, v] = True
        avail[v, u] = True
    used_deg = np.zeros(n, dtype=np.int64)
    used_edges: set[tuple[int, int]] = set()
    if used is not None:
        for u, v in used.edges:
            if avail[u, v]:
                avail[u, v] = False
                avail[v, u] = False
            used_edges.add((u, v))
            used_deg[u] += 1
            used_deg[v] += 1
    masks = _part_masks(n, partition)
    violations: list[tuple[tuple[int, ...], int]] = []
    embeddings: list[dict[int, int]] = []

    for pat in patterns:
        bg = pat.graph
        img: dict[int, int] = {}
        for v, x in pat.roots.items():
            if not (0 <= x < n):
                raise BadVertex(f"root image {x} outside host")
            img[v] = x
        order = pat._order()
        new_edges: list[tuple[int, int]] = []
        # root-root pattern edges consume host edges directly
        for u, v in bg.edges:
            if u in pat.roots and v in pat.roots:
                e = norm_edge(img[u], img[v])
                if not avail[e[0], e[1]]:
                    raise EmbedFailed(
                        f"host edge {e} for rooted pattern edge unavailable"
                    )
                avail[e[0], e[1]] = False
                avail[e[1], e[0]] = False
                new_edges.append(e)
        free = [v for v in order if v not in pat.roots]
        budget = [20_000]
        fail_at: list[int | None] = [None]

        def candidates(v: int) -> np.ndarray:
            placed_nbrs = [w for w in bg.adj[v] if w in img]
            cand = np.ones(n, dtype=bool)
            for w in placed_nbrs:
                cand &= avail[img[w]]
            label = pat.labels.get(v, ANYWHERE)
            if label is not ANYWHERE:
                if label not in masks:
                    raise BadParameters(f"part label {label} has no partition")
                cand &= masks[label]
            if placed_nbrs:
                S = tuple(sorted(img[w] for w in placed_nbrs))
                count = int(np.count_nonzero(cand))
                if count < need:
                    violations.append((S, count))
            cand &= used_deg < threshold
            for taken in img.values():
                cand[taken] = False
            return np.nonzero(cand)[0]

        def assign(idx: int) -> bool:
            if idx == len(free):
                return True
            if budget[0] <= 0:
                return False
            budget[0] -= 1
            v = free[idx]
            hit = candidates(v)
            if hit.size == 0 and fail_at[0] is None:
                fail_at[0] = v
            if rng is not None:
                hit = hit.copy()
                rng.shuffle(hit)
            else:
                # spread images: least-used first, ties toward smallest id
                hit = hit[np.argsort(used_deg[hit], kind="stable")]
            placed_nbrs = [w for w in bg.adj[v] if w in img]
            for x in map(int, hit):
                img[v] = x
                taken = []
                for w in placed_nbrs:
                    e = norm_edge(x, img[w])
                    avail[e[0], e[1]] = False
                    avail[e[1], e[0]] = False
                    taken.append(e)
                new_edges.extend(taken)
                if assign(idx + 1):
                    return True
                del new_edges[len(new_edges) - len(taken):]
                for a, b in taken:
                    avail[a, b] = True
                    avail[b, a] = True
                del img[v]
            return False

        if not assign(0):
            raise EmbedFailed(
                f"no candidate for pattern vertex {fail_at[0]} "
                f"(pattern #{len(embeddings)})"
            )
        for u, v in new_edges:
            used_edges.add((u, v))
            used_deg[u] += 1
            used_deg[v] += 1
        embeddings.append(img)

    used_graph = from_edge_set(n, used_edges)
    return EmbedResult(
        embeddings=embeddings,
        used=used_graph,
        max_used_degree=int(used_deg.max()) if n else 0,
        danger_threshold=threshold,
        precondition_violations=violations,
    )


def image_edges(pattern: LabelledPattern, img: Mapping[int, int]) -> frozenset:
    """Host edge set of an embedding."""
    return frozenset(
        norm_edge(img[u], img[v]) for u, v in pattern.graph.edges
    )
