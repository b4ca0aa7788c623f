"""Independent verification of decompositions, certificates, shifters,
parity selections and partition sequences.

Everything here re-derives its answers from first principles using only
the graph core: isomorphism testing is a self-contained backtracking
search, not a call into the packing engines, and degree counts are
recomputed rather than trusted.  Each verifier returns a
:class:`Report` listing rule violations with witnesses; the ``check_*``
wrappers raise :class:`~gdecomp.errors.VerificationFailed` on the first
violation, for callers that want verification as a hard gate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import VerificationFailed
from .graphs import Edge, Graph, from_edge_set, norm_edge

EdgeSet = frozenset


@dataclass
class Report:
    """Verification outcome: empty violations means pass."""

    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, rule: str, witness) -> None:
        self.violations.append((rule, witness))

    def summary(self) -> str:
        if self.passed:
            return "pass"
        lines = [f"FAIL ({len(self.violations)} violations)"]
        lines += [f"  {rule}: {witness}" for rule, witness in self.violations]
        return "\n".join(lines)


def _raise_if_failed(report: Report) -> None:
    if not report.passed:
        rule, witness = report.violations[0]
        raise VerificationFailed(f"{rule}: {witness}")


def _support(edges: Iterable[Edge]) -> set[int]:
    out: set[int] = set()
    for u, v in edges:
        out.add(u)
        out.add(v)
    return out


def find_isomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """An isomorphism between the supports of g and h, found by
    backtracking on a degree-sorted vertex order, or None."""
    gs = sorted(g.support())
    hs = sorted(h.support())
    if len(gs) != len(hs) or g.num_edges != h.num_edges:
        return None
    if sorted(g.degree(v) for v in gs) != sorted(h.degree(v) for v in hs):
        return None
    # Order so that every vertex (after the first in its component) has
    # at least one already-placed neighbour; on regular graphs the
    # neighbour constraints are the only effective pruning.
    order: list[int] = []
    seen: set[int] = set()
    rest = sorted(gs, key=lambda v: -g.degree(v))
    while len(order) < len(gs):
        nxt = max(
            (v for v in rest if v not in seen),
            key=lambda v: (sum(1 for w in g.adj[v] if w in seen), g.degree(v)),
        )
        order.append(nxt)
        seen.add(nxt)
    image: dict[int, int] = {}
    used: set[int] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        placed_nbrs = [image[y] for y in g.adj[x] if y in image]
        for cand in hs:
            if cand in used or h.degree(cand) != g.degree(x):
                continue
            if any(w not in h.adj[cand] for w in placed_nbrs):
                continue
            if sum(1 for w in h.adj[cand] if w in used) != len(placed_nbrs):
                continue
            image[x] = cand
            used.add(cand)
            if place(i + 1):
                return True
            del image[x]
            used.remove(cand)
        return False

    return dict(image) if place(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test between the supports of g and h."""
    return find_isomorphism(g, h) is not None


def is_pattern_copy(edges: Iterable[Edge], f: Graph) -> bool:
    """Whether an edge set is (the edge set of) a copy of the pattern."""
    edges = frozenset(norm_edge(u, v) for u, v in edges)
    if len(edges) != f.num_edges:
        return False
    sup = _support(edges)
    n = max(sup) + 1 if sup else 0
    return is_isomorphic(from_edge_set(n, edges), f)


def verify_decomposition(
    edges: Iterable[Edge] | Graph,
    copies: Sequence[frozenset],
    f: Graph,
) -> Report:
    """Check that ``copies`` are edge-disjoint pattern copies exactly
    covering ``edges``."""
    if isinstance(edges, Graph):
        edges = edges.edges
    target = frozenset(norm_edge(u, v) for u, v in edges)
    report = Report()
    seen: set[Edge] = set()
    for idx, copy in enumerate(copies):
        copy = frozenset(norm_edge(u, v) for u, v in copy)
        overlap = copy & seen
        if overlap:
            report.add("edge-disjoint", (idx, sorted(overlap)[:3]))
        stray = copy - target
        if stray:
            report.add("containment", (idx, sorted(stray)[:3]))
        if not is_pattern_copy(copy, f):
            report.add("pattern-shape", idx)
        seen |= copy
    missing = target - seen
    if missing:
        report.add("full-cover", sorted(missing)[:3])
    return report


def check_decomposition(edges, copies, f: Graph) -> None:
    _raise_if_failed(verify_decomposition(edges, copies, f))


def verify_certificate(cert) -> Report:
    """Full audit of a gadget certificate.

    Checks, for every named decomposition, that the referenced edge sets
    are pairwise edge-disjoint and that the copies decompose their
    union; checks that the gadget is empty on the attachment vertices
    and avoids all attached edges; and checks the claimed rooted
    degeneracy, when present, against the exact value.
    """
    report = Report()
    roots = cert.root_vertices()
    for u, v in cert.gadget.edges:
        if u in roots and v in roots:
            report.add("gadget-edgeless-on-roots", (u, v))
    for name, attached in cert.attached.items():
        clash = cert.gadget.edges & attached
        if clash:
            report.add("gadget-attached-disjoint", (name, sorted(clash)[:3]))
        stray = _support(attached) - set(cert.attachments[name])
        if stray:
            report.add("attachment-vertex-set", (name, sorted(stray)[:3]))
    for name, (parts, copies) in cert.decompositions.items():
        union: set[Edge] = set()
        for part in parts:
            part_edges = cert.part_edges(part)
            clash = union & part_edges
            if clash and part != "T":
                report.add("parts-disjoint", (name, sorted(clash)[:3]))
            union |= part_edges
        sub = verify_decomposition(union, copies, cert.pattern)
        for rule, witness in sub.violations:
            report.add(f"{name}:{rule}", witness)
    if cert.claimed_degeneracy is not None:
        actual = cert.rooted_degeneracy()
        if actual > cert.claimed_degeneracy:
            report.add(
                "rooted-degeneracy", (actual, cert.claimed_degeneracy)
            )
    return report


def check_certificate(cert) -> None:
    _raise_if_failed(verify_certificate(cert))


def verify_shifter(
    s, x: int, y: int, u_pool: Iterable[int], v_pool: Iterable[int], r: int
) -> Report:
    """Audit a shifter: residues (-1, +1, 0) mod r of (x, y, rails) into
    the v-side pool, no xy edge, and the pattern decomposition."""
    report = Report()
    g = s.graph
    vset = set(v_pool) & _support(g.edges)
    if norm_edge(x, y) in g.edges:
        report.add("xy-absent", (x, y))

    def into_v(w: int) -> int:
        return sum(1 for z in g.adj[w] if z in vset)

    if into_v(x) % r != (-1) % r:
        report.add("residue-x", (into_v(x), r))
    if into_v(y) % r != 1 % r:
        report.add("residue-y", (into_v(y), r))
    for rail in s.u_side[2:]:
        if into_v(rail) % r != 0:
            report.add("residue-rail", (rail, into_v(rail), r))
    sub = verify_decomposition(g, s.copies, s.pattern)
    for rule, witness in sub.violations:
        report.add(f"decomposition:{rule}", witness)
    return report


def verify_parity(
    g: Graph,
    p_graph: Graph,
    p_prime: Iterable[Edge] | Graph,
    r: int,
    partition,
    pattern: Graph | None = None,
    leftover_copies: Sequence[frozenset] | None = None,
) -> Report:
    """Audit a parity selection.

    (P1): for every level i >= 2 and every vertex x below it, r divides
    the recomputed degree of x into V_i inside G union P'.  (P2), when
    a pattern and leftover decomposition are supplied: the copies
    decompose P - P' exactly.
    """
    report = Report()
    if isinstance(p_prime, Graph):
        p_prime = p_prime.edges
    selected = frozenset(norm_edge(u, v) for u, v in p_prime)
    stray = selected - p_graph.edges
    if stray:
        report.add("selection-within-inventory", sorted(stray)[:3])
    clash = selected & g.edges
    if clash:
        report.add("edge-disjoint-from-host", sorted(clash)[:3])
    union = g.edges | selected
    adj: dict[int, set[int]] = {}
    for u, v in union:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    parts = partition.parts
    below: set[int] = set(parts[0])
    for i in range(1, len(parts)):
        part = parts[i]
        for x in sorted(below):
            d = len(adj.get(x, set()) & part)
            if d % r != 0:
                report.add("P1", (x, i + 1, d, r))
        below |= part
    if pattern is not None and leftover_copies is not None:
        sub = verify_decomposition(
            p_graph.edges - selected, leftover_copies, pattern
        )
        for rule, witness in sub.violations:
            report.add(f"P2:{rule}", witness)
    return report


def verify_partition_sequence(g: Graph, seq, k: int, delta: float) -> Report:
    """Recheck a nested partition sequence from scratch: every parent
    splits into exactly k near-equal children, and inside the parent
    every vertex keeps degree >= delta * |child| into every child."""
    report = Report()
    if getattr(seq, "k", k) != k:
        report.add("branching-factor", (seq.k, k))
    parents: list[frozenset[int]] = [frozenset(range(g.n))]
    for lvl, level in enumerate(seq.levels):
        ground: set[int] = set()
        for p in level.parts:
            if ground & p:
                report.add("parts-disjoint", (lvl, sorted(ground & p)[:3]))
            ground |= p
        for parent in parents:
            children = [p for p in level.parts if p <= parent]
            covered: set[int] = set()
            for c in children:
                covered |= c
            if covered != parent:
                report.add(
                    "refinement", (lvl, sorted(parent - covered)[:3])
                )
                continue
            if len(children) != k:
                report.add("child-count", (lvl, len(children)))
            sizes = [len(c) for c in children]
            if sizes and max(sizes) - min(sizes) > 1:
                report.add("equitable", (lvl, sizes))
            for child in children:
                need = delta * len(child)
                for v in parent:
                    d = len(g.adj[v] & child)
                    if d < need:
                        report.add("min-degree", (lvl, v, d, need))
        parents = list(level.parts)
    if seq.levels:
        m = -(-g.n // (k ** len(seq.levels)))
        if seq.m != m:
            report.add("final-part-size", (seq.m, m))
    return report


def verify_partition_edges(
    copies: Sequence[frozenset], edges: Iterable[Edge]
) -> Report:
    """Check only the exact-cover property, ignoring copy shape."""
    target = frozenset(norm_edge(u, v) for u, v in edges)
    report = Report()
    seen: set[Edge] = set()
    for idx, copy in enumerate(copies):
        copy = frozenset(norm_edge(u, v) for u, v in copy)
        if copy & seen:
            report.add("edge-disjoint", idx)
        seen |= copy
    if seen != target:
        report.add(
            "exact-cover",
            (sorted(seen - target)[:3], sorted(target - seen)[:3]),
        )
    return report
