"""Parity-graph templates.

A parity graph for an ordered partition V_1, ..., V_k is a pre-placed
inventory from which a subgraph P' can later be selected so that every
cross-degree d(x, V_i) with x below level i becomes divisible by r,
while the unselected remainder keeps a full pattern decomposition.

The inventory per level i = 2..k is:

* r-1 copies of the pattern, each with one edge inside V_i and the
  remaining f-2 vertices inside V_{i-1} (selecting one shifts
  e(V_i) by one modulo r), and
* for each consecutive pair (u_j, u_{j+1}) in the ascending-id
  enumeration of V_{<i}, r-1 shifters with rails in V_{<i} and fillers
  in V_i (selecting one moves a unit of cross-degree residue from u_j
  to u_{j+1}).

This module builds the abstract slots; embedding them into a host graph
is the pipeline's job.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graphs import Graph
from ..partitions import Partition
from ..patterns import LabelledPattern
from .core import canonical_pattern_edge, pattern_regularity
from .shifters import build_shifter, shifter_filler_size


@dataclass(frozen=True)
class ParitySlot:
    """One selectable inventory item.

    ``pattern`` is abstract: its labels refer to ``embed_parts`` (index
    0 is the low side, index 1 is the level's part V_i), and for shifter
    slots its roots pin x and y onto the host pair."""

    level: int  # i, with 2 <= i <= k
    kind: str  # "pattern" or "shifter"
    index: int  # 0 .. r-2 within the slot family
    pattern: LabelledPattern
    embed_parts: Partition
    copies: tuple[frozenset, ...]  # decomposition in the pattern's own ids
    pair: tuple[int, int] | None = None  # (u_j, u_j+1) for shifters


@dataclass(frozen=True)
class ParityGraphTemplate:
    partition: Partition
    pattern: Graph
    slots: tuple[ParitySlot, ...]

    def level_slots(self, level: int, kind: str) -> list[ParitySlot]:
        return [
            s for s in self.slots if s.level == level and s.kind == kind
        ]

    @property
    def pattern_slot_count(self) -> int:
        return sum(1 for s in self.slots if s.kind == "pattern")

    @property
    def shifter_slot_count(self) -> int:
        return sum(1 for s in self.slots if s.kind == "shifter")


def parity_template(partition: Partition, f: Graph) -> ParityGraphTemplate:
    """The abstract parity inventory for ``partition`` and pattern f."""
    r = pattern_regularity(f)
    u, v = canonical_pattern_edge(f)
    parts = partition.parts
    k = len(parts)
    slots: list[ParitySlot] = []
    if r >= 2:
        fillers = shifter_filler_size(f)
        abstract = build_shifter(
            0,
            1,
            list(range(r + 2)),
            list(range(r + 2, r + 2 + fillers)),
            f,
        )
        rails = abstract.u_side[2:]
        filler_verts = sorted(
            {w for e in abstract.graph.edges for w in e}
            - set(abstract.u_side)
        )
        for i in range(2, k + 1):
            below = frozenset().union(*parts[: i - 1])
            level_parts = Partition((below, parts[i - 1]))
            copy_labels = {
                w: (1 if w in (u, v) else 0) for w in range(f.n)
            }
            copy_parts = Partition((parts[i - 2], parts[i - 1]))
            for j in range(r - 1):
                slots.append(
                    ParitySlot(
                        level=i,
                        kind="pattern",
                        index=j,
                        pattern=LabelledPattern(f, {}, copy_labels),
                        embed_parts=copy_parts,
                        copies=(frozenset(f.edges),),
                    )
                )
            enum = sorted(below)
            sh_labels = {w: 0 for w in rails}
            sh_labels.update({w: 1 for w in filler_verts})
            for a, b in zip(enum, enum[1:]):
                for j in range(r - 1):
                    slots.append(
                        ParitySlot(
                            level=i,
                            kind="shifter",
                            index=j,
                            pattern=LabelledPattern(
                                abstract.graph, {0: a, 1: b}, sh_labels
                            ),
                            embed_parts=level_parts,
                            copies=abstract.copies,
                            pair=(a, b),
                        )
                    )
    return ParityGraphTemplate(
        partition=partition, pattern=f, slots=tuple(slots)
    )
