"""Enumeration of pattern copies in a host graph.

A copy of a pattern F in a host G is the edge-set image of an injective
map V(F) -> V(G) that sends edges to edges (not necessarily induced).
Copies are deduplicated by the automorphism group of F, computed once by
brute force (patterns are capped at 12 vertices), by keeping only the
lexicographically least image tuple in each automorphism coset.

The inner backtracking loop is the hottest code in the package.  It has
two interchangeable implementations: a numba ``@njit`` kernel and a pure
numpy fallback.  Set ``GDECOMP_NO_NUMBA=1`` (or disable the JIT via
``NUMBA_DISABLE_JIT``) to force the fallback; ``benchmarks/`` compares
the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from ..errors import EmptyPattern, LimitExceeded, PatternTooLarge
from ..graphs import Edge, Graph, from_edge_set, norm_edge

MAX_PATTERN_VERTICES = 12
DEFAULT_LIMIT = 1_000_000


def _numba_enabled() -> bool:
    if os.environ.get("GDECOMP_NO_NUMBA", "").strip() not in ("", "0"):
        return False
    if os.environ.get("NUMBA_DISABLE_JIT", "").strip() not in ("", "0"):
        return False
    return True


_kernel = None


def _get_kernel():
    """Compile (once) and return the numba kernel, or None."""
    global _kernel
    if _kernel is None and _numba_enabled():
        try:
            from ._kernel_numba import enumerate_kernel

            _kernel = enumerate_kernel
        except ImportError:  # pragma: no cover - numba missing
            _kernel = False
    return _kernel or None


@dataclass(frozen=True)
class Decomposition:
    """An edge-partition of a graph into pattern copies."""

    copies: tuple[frozenset, ...]

    def __len__(self) -> int:
        return len(self.copies)

    def all_edges(self) -> frozenset:
        out: set[Edge] = set()
        for c in self.copies:
            out |= c
        return frozenset(out)


def automorphisms(f: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of f, by brute force (|V(f)| <= 12 enforced)."""
    if f.n > MAX_PATTERN_VERTICES:
        raise PatternTooLarge(f"{f.n} > {MAX_PATTERN_VERTICES} vertices")
    degs = f.degrees()
    edges = f.edges
    out = []
    # prune by degree sequence compatibility before the full check
    buckets: dict[int, list[int]] = {}
    for v in range(f.n):
        buckets.setdefault(degs[v], []).append(v)

    def extend(perm: list[int], used: set[int]) -> None:
        v = len(perm)
        if v == f.n:
            out.append(tuple(perm))
            return
        for w in buckets.get(degs[v], []):
            if w in used:
                continue
            ok = True
            for u in f.adj[v]:
                if u < v and norm_edge(perm[u], w) not in edges:
                    ok = False
                    break
            if ok:
                perm.append(w)
                used.add(w)
                extend(perm, used)
                perm.pop()
                used.discard(w)

    extend([], set())
    return out


def _search_plan(f: Graph) -> tuple[list[int], list[list[int]], list[int]]:
    """(order, back-neighbour positions per step, pattern degree per step).

    The order greedily maximizes the number of already-placed neighbours
    at every step, which keeps candidate sets small.
    """
    order: list[int] = []
    left = set(range(f.n))
    while left:
        v = max(
            left,
            key=lambda x: (len(f.adj[x] & set(order)), f.degree(x), -x),
        )
        order.append(v)
        left.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    backs = [
        sorted(pos[w] for w in f.adj[v] if pos[w] < i)
        for i, v in enumerate(order)
    ]
    degs = [f.degree(v) for v in order]
    return order, backs, degs


def enumerate_copies(
    host: Graph, f: Graph, limit: int = DEFAULT_LIMIT
) -> list[frozenset]:
    """All copies of f in host, as host edge sets, deduplicated by
    Aut(f) and sorted deterministically.

    Raises :class:`LimitExceeded` past ``limit`` copies.  Isolated
    pattern vertices are ignored: a copy is determined by its edges.
    """
    f, _ = f.compact()
    if f.num_edges == 0:
        raise EmptyPattern("pattern has no edges")
    if f.n > MAX_PATTERN_VERTICES:
        raise PatternTooLarge(f"{f.n} > {MAX_PATTERN_VERTICES} vertices")
    if host.num_edges == 0 or host.n < f.n:
        return []

    order, backs, fdegs = _search_plan(f)
    pos = {v: i for i, v in enumerate(order)}
    # automorphisms expressed on search positions
    auts = np.array(
        sorted(
            tuple(pos[a[order[i]]] for i in range(f.n))
            for a in automorphisms(f)
        ),
        dtype=np.int64,
    )
    nf = f.n
    back_mat = np.full((nf, nf), -1, dtype=np.int64)
    back_cnt = np.zeros(nf, dtype=np.int64)
    for i, bs in enumerate(backs):
        back_cnt[i] = len(bs)
        for j, bpos in enumerate(bs):
            back_mat[i, j] = bpos
    fdeg_arr = np.array(fdegs, dtype=np.int64)

    adj = np.zeros((host.n, host.n), dtype=np.uint8)
    for u, v in host.edges:
        adj[u, v] = 1
        adj[v, u] = 1
    hdeg = adj.sum(axis=1).astype(np.int64)

    kernel = _get_kernel()
    if kernel is not None:
        out = np.empty((limit, nf), dtype=np.int64)
        count = kernel(adj, hdeg, back_mat, back_cnt, fdeg_arr, auts, out)
        if count < 0:
            raise LimitExceeded(f"more than {limit} copies")
        maps = out[:count]
    else:
        maps = _enumerate_python(adj, hdeg, back_mat, back_cnt,
                                 fdeg_arr, auts, limit)

    copies = set()
    edge_pairs = [(pos[u], pos[v]) for u, v in f.edges]
    for row in maps:
        copies.add(
            frozenset(norm_edge(int(row[a]), int(row[b]))
                      for a, b in edge_pairs)
        )
    return sorted(copies, key=sorted)


def _enumerate_python(adj, hdeg, back_mat, back_cnt, fdeg, auts, limit):
    """Pure numpy fallback for the enumeration kernel."""
    n = adj.shape[0]
    nf = back_mat.shape[0]
    adj_bool = adj.astype(bool)
    rows: list[list[int]] = []
    img = [0] * nf

    def lex_min(img) -> bool:
        for a in auts:
            alt = tuple(img[a[i]] for i in range(nf))
            if alt < tuple(img):
                return False
        return True

    def extend(i: int) -> None:
        if i == nf:
            if lex_min(img):
                rows.append(img.copy())
                if len(rows) > limit:
                    raise LimitExceeded(f"more than {limit} copies")
            return
        nb = back_cnt[i]
        if nb == 0:
            cand = hdeg >= fdeg[i]
        else:
            cand = adj_bool[img[back_mat[i, 0]]].copy()
            for j in range(1, nb):
                cand &= adj_bool[img[back_mat[i, j]]]
            cand &= hdeg >= fdeg[i]
        for x in np.nonzero(cand)[0]:
            x = int(x)
            if x in img[:i]:
                continue
            img[i] = x
            extend(i + 1)

    extend(0)
    return np.array(rows, dtype=np.int64) if rows else \
        np.empty((0, nf), dtype=np.int64)


def copy_support(copy: frozenset) -> frozenset:
    """Vertex set of a copy (edge set)."""
    out: set[int] = set()
    for u, v in copy:
        out.add(u)
        out.add(v)
    return frozenset(out)


def has_copy(host: Graph, f: Graph) -> bool:
    """Whether host contains at least one copy of f (early-exit search)."""
    f, _ = f.compact()
    if f.num_edges == 0:
        raise EmptyPattern("pattern has no edges")
    if host.n < f.n:
        return False
    order, backs, fdegs = _search_plan(f)
    adj = host.adj
    degs = host.degrees()
    img: list[int] = []

    def extend(i: int) -> bool:
        if i == f.n:
            return True
        if backs[i]:
            cand = set(adj[img[backs[i][0]]])
            for b in backs[i][1:]:
                cand &= adj[img[b]]
        else:
            cand = set(range(host.n))
        for x in sorted(cand):
            if degs[x] < fdegs[i] or x in img:
                continue
            img.append(x)
            if extend(i + 1):
                return True
            img.pop()
        return False

    return extend(0)


def graph_of_copies(n: int, copies: Sequence[frozenset]) -> Graph:
    """Union of copies as a graph on n vertices."""
    edges: set[Edge] = set()
    for c in copies:
        edges |= c
    return from_edge_set(n, edges)
