"""Packing engines: greedy, fractional (LP), and exact decomposition.

The exact engine is a complete exact-cover search over enumerated
copies, branching on the uncovered edge with the fewest remaining copies
and pruning with divisibility plus an optional root LP bound.  It
returns a definitive :class:`Unsolvable` only from a finished search (or
from a proven impossibility such as a failed LP bound), and
:class:`BudgetExhausted` when its node budget runs out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from ..errors import BadParameters, BudgetExhausted, Unsolvable
from ..graphs import Graph, from_edge_set, is_divisible, norm_edge
from .copies import Decomposition, enumerate_copies, has_copy

LP_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Packing:
    """An edge-disjoint (not necessarily spanning) set of copies."""

    copies: tuple[frozenset, ...]
    leftover: Graph

    def __len__(self) -> int:
        return len(self.copies)


def greedy_packing(
    g: Graph,
    f: Graph,
    seed: int = 0,
    copy_filter: Callable[[frozenset], bool] | None = None,
) -> Packing:
    """A maximal edge-disjoint packing of copies of f in g.

    Copies are tried in seed-shuffled order; after a pass, enumeration is
    repeated on the leftover until it contains no copy at all, so the
    result is maximal by construction.  ``copy_filter`` restricts the
    packing to copies satisfying the predicate (maximality then holds
    relative to the admissible copies only).
    """
    rng = random.Random(seed)
    chosen: list[frozenset] = []
    current = g
    while True:
        copies = enumerate_copies(current, f)
        if copy_filter is not None:
            copies = [c for c in copies if copy_filter(c)]
        if not copies:
            break
        rng.shuffle(copies)
        free = set(current.edges)
        advanced = False
        for c in copies:
            if c <= free:
                free -= c
                chosen.append(c)
                advanced = True
        current = from_edge_set(g.n, free)
        if not advanced:
            break
    if copy_filter is None:
        assert not has_copy(current, f)
    return Packing(tuple(chosen), current)


def switching_packing(
    g: Graph,
    f: Graph,
    seed: int = 0,
    max_steps: int | None = None,
) -> Packing:
    """Greedy triangle packing completed by random switching.

    Only implemented for the triangle pattern: a leftover edge (u, v) is
    resolved by picking a common neighbour w and evicting the at most
    two copies currently holding (u, w) and (v, w), whose edges rejoin
    the leftover.  On dense divisible hosts this walk almost always
    terminates with an empty leftover; it stops after ``max_steps``
    switches otherwise (default ``60 * e(g)``).
    """
    fc, _ = f.compact()
    if fc.n != 3 or fc.num_edges != 3:
        raise BadParameters("switching_packing only supports the triangle")
    rng = random.Random(seed)
    start = greedy_packing(g, f, seed=seed)
    owner: dict[tuple[int, int], frozenset] = {}
    copies: set[frozenset] = set()
    for c in start.copies:
        copies.add(c)
        for e in c:
            owner[e] = c
    leftover = set(start.leftover.edges)
    steps = max_steps if max_steps is not None else 60 * g.num_edges
    adj = g.adj
    for _ in range(steps):
        if not leftover:
            break
        u, v = rng.choice(sorted(leftover))
        common = sorted(adj[u] & adj[v])
        if not common:
            break
        cost = {
            w: len({owner[e] for e in (norm_edge(u, w), norm_edge(v, w)) if e in owner})
            for w in common
        }
        best = min(cost.values())
        w = rng.choice([w for w in common if cost[w] == best])
        e1 = norm_edge(u, w)
        e2 = norm_edge(v, w)
        evicted = {owner[e] for e in (e1, e2) if e in owner}
        for c in evicted:
            copies.discard(c)
            for e in c:
                owner.pop(e, None)
                leftover.add(e)
        tri = frozenset([(min(u, v), max(u, v)), e1, e2])
        copies.add(tri)
        for e in tri:
            owner[e] = tri
            leftover.discard(e)
    return Packing(tuple(sorted(copies, key=sorted)), from_edge_set(g.n, leftover))


@dataclass(frozen=True)
class FractionalPacking:
    """Optimal fractional packing: weights on copies with edge load <= 1."""

    value: float
    weights: tuple[tuple[frozenset, float], ...]

    def nontrivial(self) -> list[tuple[frozenset, float]]:
        return [(c, w) for c, w in self.weights if w > LP_TOLERANCE]


def fractional_packing(g: Graph, f: Graph) -> FractionalPacking:
    """Maximum total weight over copies subject to per-edge load <= 1,
    solved as an LP (HiGHS) with tolerance ``1e-6``."""
    copies = enumerate_copies(g, f)
    if not copies:
        return FractionalPacking(0.0, ())
    edge_idx = {e: i for i, e in enumerate(sorted(g.edges))}
    rows, cols = [], []
    for j, c in enumerate(copies):
        for e in c:
            rows.append(edge_idx[e])
            cols.append(j)
    a_ub = csr_matrix(
        (np.ones(len(rows)), (rows, cols)),
        shape=(len(edge_idx), len(copies)),
    )
    res = linprog(
        c=-np.ones(len(copies)),
        A_ub=a_ub,
        b_ub=np.ones(len(edge_idx)),
        bounds=(0, None),
        method="highs",
    )
    if not res.success:  # pragma: no cover - LP infeasibility impossible
        raise RuntimeError(f"LP solver failed: {res.message}")
    weights = tuple(
        (c, float(w)) for c, w in zip(copies, res.x)
    )
    return FractionalPacking(float(-res.fun), weights)


def exact_decompose(
    g: Graph,
    f: Graph,
    budget: int = 2_000_000,
    lp_prune: bool = True,
    copy_limit: int = 1_000_000,
):
    """Complete search for an F-decomposition of g.

    Returns a :class:`Decomposition`, or :class:`Unsolvable` (finished
    search / divisibility / LP bound), or :class:`BudgetExhausted`.
    Branches on the uncovered edge with the fewest live copies; ties and
    copy order are broken toward smaller edges, so the search is
    deterministic.
    """
    if g.num_edges == 0:
        return Decomposition(())
    if not is_divisible(g, f):
        return Unsolvable("not divisible by the pattern")
    copies = enumerate_copies(g, f, limit=copy_limit)
    edges = sorted(g.edges)
    edge_idx = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    per_edge: list[list[int]] = [[] for _ in range(m)]
    copy_edges: list[list[int]] = []
    for j, c in enumerate(copies):
        ids = sorted(edge_idx[e] for e in c)
        copy_edges.append(ids)
        for i in ids:
            per_edge[i].append(j)
    if any(not pe for pe in per_edge):
        return Unsolvable("an edge lies in no copy")
    if lp_prune:
        frac = fractional_packing(g, f)
        if frac.value < g.num_edges / f.num_edges - LP_TOLERANCE:
            return Unsolvable(
                f"fractional packing value {frac.value:.6f} below "
                f"{g.num_edges}/{f.num_edges}"
            )

    covered = [False] * m
    blocked = [0] * len(copies)  # covered edges inside each copy
    chosen: list[int] = []
    nodes = 0

    def live_count(i: int) -> int:
        return sum(1 for j in per_edge[i] if blocked[j] == 0)

    def place(j: int, delta: int) -> None:
        for i in copy_edges[j]:
            covered[i] = delta > 0
            for jj in per_edge[i]:
                blocked[jj] += delta

    def search() -> bool:
        nonlocal nodes
        best_i, best = -1, None
        for i in range(m):
            if covered[i]:
                continue
            cnt = live_count(i)
            if cnt == 0:
                return False
            if best is None or cnt < best:
                best_i, best = i, cnt
                if cnt == 1:
                    break
        if best is None:
            return True
        for j in per_edge[best_i]:
            if blocked[j]:
                continue
            nodes += 1
            if nodes > budget:
                raise _OutOfBudget
            place(j, +1)
            chosen.append(j)
            if search():
                return True
            chosen.pop()
            place(j, -1)
        return False

    class _OutOfBudget(Exception):
        pass

    try:
        if search():
            return Decomposition(tuple(copies[j] for j in chosen))
        return Unsolvable("complete search found no decomposition")
    except _OutOfBudget:
        return BudgetExhausted(nodes)
