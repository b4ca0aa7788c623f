"""Equitable vertex partitions, nested partition sequences, random slices.

A (k, delta)-partition of a host graph splits the vertices into k parts
of near-equal size such that every vertex has at least ``delta * |V_i|``
neighbours in every part.  A (k, delta, m)-partition sequence iterates
this ``ell = floor(log_k(n / m_min))`` times, refining every part into k
sub-parts, ending with parts of size about ``m = ceil(n / k**ell)``.

Randomized constructions retry with derived seeds and fail loudly with
:class:`~gdecomp.errors.RetryExhausted` when no attempt certifies.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import BadParameters, RetryExhausted
from .graphs import Graph, from_edge_set


@dataclass(frozen=True)
class Partition:
    """An ordered partition of a vertex subset into parts.

    Parts are ordered by ascending minimum vertex id, the package-wide
    tie-break rule.
    """

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(sorted(self.parts, key=min))
        )

    @property
    def k(self) -> int:
        return len(self.parts)

    def ground(self) -> frozenset[int]:
        out: set[int] = set()
        for p in self.parts:
            out |= p
        return frozenset(out)

    def part_of(self, v: int) -> int:
        for i, p in enumerate(self.parts):
            if v in p:
                return i
        raise KeyError(v)

    def is_equitable(self) -> bool:
        sizes = [len(p) for p in self.parts]
        return max(sizes) - min(sizes) <= 1


def check_delta_partition(g: Graph, p: Partition, delta: float) -> bool:
    """Certificate check: equitable, and d(v, V_i) >= delta * |V_i|
    for every vertex v of the ground set and every part V_i."""
    if not p.is_equitable():
        return False
    ground = p.ground()
    for part in p.parts:
        need = delta * len(part)
        for v in ground:
            if len(g.adj[v] & part) < need:
                return False
    return True


def random_equitable_partition(
    g: Graph,
    k: int,
    delta: float,
    seed: int = 0,
    retries: int = 50,
    ground: frozenset[int] | None = None,
) -> Partition:
    """A uniformly random equitable (k, delta)-partition of ``ground``
    (default: all vertices), certified by :func:`check_delta_partition`.

    Retries with seeds ``seed, seed+1, ...`` and raises
    :class:`RetryExhausted` after ``retries`` failed certificates.
    """
    if k < 1:
        raise BadParameters(f"k must be >= 1, got {k}")
    verts = sorted(ground) if ground is not None else list(range(g.n))
    if len(verts) < k:
        raise BadParameters(f"cannot split {len(verts)} vertices into {k}")
    for attempt in range(retries):
        rng = random.Random(seed + attempt)
        shuffled = verts[:]
        rng.shuffle(shuffled)
        q, r = divmod(len(shuffled), k)
        parts = []
        at = 0
        for i in range(k):
            size = q + (1 if i < r else 0)
            parts.append(frozenset(shuffled[at : at + size]))
            at += size
        cand = Partition(tuple(parts))
        if check_delta_partition(g, cand, delta):
            return cand
    raise RetryExhausted(
        f"no equitable (k={k}, delta={delta})-partition in {retries} tries"
    )


@dataclass(frozen=True)
class PartitionSequence:
    """Nested refinements P_1, ..., P_ell plus the derived part size m.

    ``levels[j]`` refines ``levels[j-1]``: each part of level j-1 is the
    union of k consecutive parts of level j.
    """

    levels: tuple[Partition, ...]
    k: int
    m: int

    @property
    def ell(self) -> int:
        return len(self.levels)

    def finest(self) -> Partition:
        return self.levels[-1]


def sequence_depth(n: int, k: int, m_min: int) -> tuple[int, int]:
    """(ell, m) with ell = floor(log_k(n / m_min)), m = ceil(n / k**ell)."""
    if n < m_min or k < 2 or m_min < 1:
        raise BadParameters(f"bad sequence parameters n={n} k={k} m_min={m_min}")
    ell = 0
    while n >= m_min * k ** (ell + 1):
        ell += 1
    m = -(-n // (k**ell))
    return ell, m


def build_partition_sequence(
    g: Graph,
    k: int,
    m_min: int,
    delta: float,
    seed: int = 0,
    retries: int = 50,
) -> PartitionSequence:
    """Random (k, delta, m)-partition sequence of the host.

    Level 1 is a (k, delta)-partition of V(G); each later level refines
    every current part with a (k, delta)-partition of that part.  Every
    refinement is certified against the whole host graph restricted to
    the part's ground set.
    """
    ell, m = sequence_depth(g.n, k, m_min)
    levels: list[Partition] = []
    current: list[frozenset[int]] = [frozenset(range(g.n))]
    salt = 0
    for _ in range(ell):
        nxt: list[frozenset[int]] = []
        for part in current:
            sub = random_equitable_partition(
                g.induced(part), k, delta, seed=seed + salt,
                retries=retries, ground=part,
            )
            nxt.extend(sub.parts)
            salt += retries
        levels.append(Partition(tuple(nxt)))
        current = nxt
    return PartitionSequence(tuple(levels), k=k, m=m)


def check_partition_sequence(
    g: Graph, seq: PartitionSequence, delta: float
) -> bool:
    """Recheck nesting, equitability within parents, and the delta bound
    of every refinement step."""
    parents: list[frozenset[int]] = [frozenset(range(g.n))]
    for level in seq.levels:
        for parent in parents:
            children = [p for p in level.parts if p <= parent]
            if sum(len(c) for c in children) != len(parent):
                return False
            if len(children) != seq.k:
                return False
            sub = Partition(tuple(children))
            if not check_delta_partition(g.induced(parent), sub, delta):
                return False
        parents = list(level.parts)
    if seq.levels:
        m = -(-g.n // (seq.k ** len(seq.levels)))
        if seq.m != m:
            return False
    return True


def random_slice(g: Graph, rho: float, seed: int = 0) -> Graph:
    """Random subgraph keeping each edge independently with probability
    rho (deterministic given the seed)."""
    if not (0.0 <= rho <= 1.0):
        raise BadParameters(f"rho must be in [0, 1], got {rho}")
    rng = random.Random(seed)
    kept = {e for e in sorted(g.edges) if rng.random() < rho}
    return from_edge_set(g.n, kept)
