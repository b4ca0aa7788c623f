"""Perfect factors and edge-disjoint factor families.

A perfect F-factor of a graph is a spanning set of vertex-disjoint
copies of F.  :func:`perfect_factor` is a complete backtracking search.
:func:`edge_disjoint_factors` runs the sequential random-greedy scheme
for a family of target vertex sets inside one host: targets are
processed in order, each taking ``t`` edge-disjoint factors from the
host minus the factors chosen for earlier targets, and one of the ``t``
is then chosen uniformly at random.  Failure at any target is
loud (:class:`~gdecomp.errors.FactorUnavailable`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import BadParameters, FactorUnavailable, Unsolvable
from ..graphs import Graph, from_edge_set
from .copies import copy_support, enumerate_copies


def perfect_factor(g: Graph, f: Graph, ground: frozenset[int] | None = None):
    """A spanning set of vertex-disjoint copies of f covering ``ground``
    (default: the support of g), or :class:`Unsolvable`.

    Complete search: always branches on the smallest uncovered vertex,
    trying the copies through it in deterministic order.
    """
    f, _ = f.compact()
    ground = frozenset(ground) if ground is not None else g.support()
    if len(ground) % f.n != 0:
        return Unsolvable(
            f"{len(ground)} vertices not divisible by pattern order {f.n}"
        )
    sub = g.induced(ground)
    copies = enumerate_copies(sub, f)
    by_vertex: dict[int, list[int]] = {v: [] for v in ground}
    supports = [copy_support(c) for c in copies]
    for j, sup in enumerate(supports):
        for v in sup:
            by_vertex[v].append(j)
    uncovered = set(ground)
    chosen: list[int] = []

    def search() -> bool:
        if not uncovered:
            return True
        v = min(uncovered)
        for j in by_vertex[v]:
            sup = supports[j]
            if not sup <= uncovered:
                continue
            uncovered.difference_update(sup)
            chosen.append(j)
            if search():
                return True
            chosen.pop()
            uncovered.update(sup)
        return False

    if search():
        return [copies[j] for j in chosen]
    return Unsolvable("complete search found no perfect factor")


@dataclass
class FactorReport:
    """Hypothesis checks and bookkeeping for edge_disjoint_factors."""

    t: int
    divisibility_ok: list[bool] = field(default_factory=list)
    min_degree_ok: list[bool] = field(default_factory=list)
    overlap_ok: bool = True
    membership_ok: bool = True
    max_used_degree: list[int] = field(default_factory=list)

    def all_ok(self) -> bool:
        return (
            all(self.divisibility_ok)
            and all(self.min_degree_ok)
            and self.overlap_ok
            and self.membership_ok
        )


def default_factor_count(k: int, rho: float, n: int) -> int:
    """The stated default ``t = ceil(8 k rho^(3/2) n)``.

    At desk scale this collapses (it can exceed the number of factors
    that fit), so callers normally pass an explicit ``t``.
    """
    return math.ceil(8 * k * rho ** 1.5 * n)


def edge_disjoint_factors(
    h: Graph,
    targets: Sequence[frozenset[int]],
    f: Graph,
    t: int | None = None,
    rho: float = 0.5,
    k: int = 1,
    seed: int = 0,
    degree_slack: float | None = None,
):
    """For each target U_j in order, ``t`` edge-disjoint perfect
    F-factors of ``h[U_j]`` minus the factors chosen for earlier
    targets; one of the ``t`` is picked uniformly and consumed.
    Returns ``(chosen, families, report)``.

    Hypotheses (checked and reported, not enforced): |V(F)| divides
    |U_j|; min degree of h[U_j] at least ``(1 - 1/|V(F)|) |U_j|`` plus
    ``degree_slack`` (default ``9 |V(F)| k rho^(3/2) n``); pairwise
    overlaps at most ``2 rho^2 n``; no vertex in more than ``2 k rho n``
    targets.  The within-target used-degree guard
    ``Delta(used[U_j]) <= r rho^(3/2) n`` *is* enforced: exceeding it
    raises :class:`FactorUnavailable`.
    """
    f, _ = f.compact()
    r = f.n
    n = h.n
    if t is None:
        t = default_factor_count(k, rho, n)
    if t < 1:
        raise BadParameters(f"t must be >= 1, got {t}")
    slack = (
        degree_slack if degree_slack is not None else 9 * r * k * rho**1.5 * n
    )
    report = FactorReport(t=t)
    for j, u in enumerate(targets):
        sub = h.induced(u)
        report.divisibility_ok.append(len(u) % r == 0)
        mind = min((len(sub.adj[v]) for v in u), default=0)
        report.min_degree_ok.append(mind >= (1 - 1 / r) * len(u) + slack)
    for a in range(len(targets)):
        for b in range(a + 1, len(targets)):
            if len(targets[a] & targets[b]) > 2 * rho**2 * n:
                report.overlap_ok = False
    member = {}
    for u in targets:
        for v in u:
            member[v] = member.get(v, 0) + 1
    if member and max(member.values()) > 2 * k * rho * n:
        report.membership_ok = False

    guard = r * rho**1.5 * n
    rng = random.Random(seed)
    used: set = set()
    chosen: list[list[frozenset]] = []
    families: list[list[list[frozenset]]] = []
    for j, u in enumerate(targets):
        used_in_u = [
            e for e in used if e[0] in u and e[1] in u
        ]
        deg: dict[int, int] = {}
        for a, b in used_in_u:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        worst = max(deg.values(), default=0)
        report.max_used_degree.append(worst)
        if worst > guard:
            raise FactorUnavailable(
                f"target {j}: used degree {worst} exceeds guard {guard:.1f}"
            )
        current = from_edge_set(n, h.induced(u).edges - used)
        family: list[list[frozenset]] = []
        for s in range(t):
            factor = perfect_factor(current, f, ground=frozenset(u))
            if isinstance(factor, Unsolvable):
                raise FactorUnavailable(
                    f"target {j}: only {s} of {t} factors found"
                )
            family.append(factor)
            consumed = frozenset().union(*factor) if factor else frozenset()
            current = from_edge_set(n, current.edges - consumed)
        families.append(family)
        pick = family[rng.randrange(len(family))]
        chosen.append(pick)
        for c in pick:
            used |= c

    return chosen, families, report
