"""The regulariser: a 2e(F)-regular, F-decomposable carrier graph.

Any pattern F with chromatic number k and largest colour class t embeds
into the grid [k] x [t].  Stacking k^2*t translated copies of that grid
as the third coordinate, and sliding the grid through every translation
in each of k^2*t "slanted" slice families, packs k^3*t^2 edge-disjoint
copies of F into a simple graph R that is exactly 2e(F)-regular and
k-chromatic.  Lifting one corner of one copy yields gadgets R_d with a
single exposed vertex of each pattern degree d, used to repair
divisibility one vertex at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DegreeNotInF
from ..graphs import Graph, chromatic_number, from_edge_set, norm_edge, proper_colouring


@dataclass(frozen=True)
class Regulariser:
    """The carrier graph R with its construction data."""

    graph: Graph
    pattern: Graph
    copies: tuple[frozenset, ...]
    colouring: tuple[int, ...]  # first-coordinate colour of each vertex
    k: int  # chromatic number of the pattern
    t: int  # largest colour class of the pattern

    @property
    def regularity(self) -> int:
        return 2 * self.pattern.num_edges


def regularise(f: Graph) -> Regulariser:
    """Build the regulariser for f.

    R lives on [k] x [t] x [k^2 t] (flattened to integers); the copy for
    slice (l, s) places f translated by the s-th grid offset via
    (x, y) -> (x, y, l + x*s mod k^2 t).  Distinct slices share at most
    one vertex per colour class, so the copies are edge-disjoint.
    """
    k = chromatic_number(f)
    colours = proper_colouring(f, k)
    classes: dict[int, list[int]] = {c: [] for c in range(k)}
    for vtx, c in enumerate(colours):
        classes[c].append(vtx)
    t = max(len(cls) for cls in classes.values())
    depth = k * k * t
    coord = {}
    for c, members in classes.items():
        for y, vtx in enumerate(members):
            coord[vtx] = (c, y)

    def vid(x: int, y: int, z: int) -> int:
        return (x * t + y) * depth + z

    copies = []
    edges: set = set()
    for ell in range(depth):
        for s in range(k * t):
            w = divmod(s, t)  # the s-th translation offset of the grid

            def place(vtx: int) -> int:
                x, y = coord[vtx]
                x = (x + w[0]) % k
                y = (y + w[1]) % t
                return vid(x, y, (ell + x * s) % depth)

            copy = frozenset(
                norm_edge(place(a), place(b)) for a, b in f.edges
            )
            copies.append(copy)
            edges |= copy

    graph = from_edge_set(k * t * depth, edges)
    colouring = tuple(v // (t * depth) for v in range(graph.n))
    return Regulariser(
        graph=graph,
        pattern=f,
        copies=tuple(copies),
        colouring=colouring,
        k=k,
        t=t,
    )


@dataclass(frozen=True)
class LiftedGadget:
    """R with one corner of one pattern copy lifted to a new vertex.

    All degrees are r = 2e(F) except the new vertex ``low`` (degree d)
    and the vertex ``high`` it was lifted from (degree r - d).
    """

    graph: Graph
    pattern: Graph
    degree: int
    low: int   # the added vertex v', of degree d
    high: int  # the original vertex v, of degree r - d
    copies: tuple[frozenset, ...]


def lifted_gadget(reg: Regulariser, f: Graph, d: int) -> LiftedGadget:
    """Lift a degree-d corner of the first copy in the regulariser's
    decomposition, keeping edge count and decomposability."""
    first = reg.copies[0]
    sup = sorted({w for e in first for w in e})
    deg_in = {w: sum(1 for e in first if w in e) for w in sup}
    candidates = [w for w in sup if deg_in[w] == d]
    if not candidates:
        raise DegreeNotInF(f"no vertex of degree {d} in the pattern copy")
    v_d = candidates[0]
    v_prime = reg.graph.n
    star = frozenset(e for e in first if v_d in e)
    lifted_copy = (first - star) | frozenset(
        norm_edge(v_prime, a if b == v_d else b) for a, b in star
    )
    new_edges = (reg.graph.edges - star) | (lifted_copy - (first - star))
    graph = from_edge_set(v_prime + 1, new_edges)
    copies = (lifted_copy,) + reg.copies[1:]
    return LiftedGadget(
        graph=graph,
        pattern=f,
        degree=d,
        low=v_prime,
        high=v_d,
        copies=copies,
    )
