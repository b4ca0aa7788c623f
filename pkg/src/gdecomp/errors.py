"""Exception hierarchy and sentinel result types.

Loud failures are a design rule throughout the package: every operation
that can fail raises a typed exception naming the violated precondition,
or returns an explicit sentinel (:class:`Unsolvable`,
:class:`BudgetExhausted`) when "no answer" is itself a meaningful result
of a complete search.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GdecompError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------- graph core


class LoopEdge(GdecompError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(GdecompError):
    """The same edge was given twice."""


class BadVertex(GdecompError):
    """A vertex id is outside ``range(vertex_count)``."""


class EmptyPattern(GdecompError):
    """The pattern graph has no edges, so divisibility is undefined."""


class RootsNotIndependent(GdecompError):
    """The root set of a rooted-degeneracy query spans an edge."""


class RetryExhausted(GdecompError):
    """A randomized construction failed for every attempted seed."""


class ParseError(GdecompError):
    """Malformed input file."""


class EdgeNotPresent(GdecompError):
    """An operation referenced an edge the graph does not contain."""


class WouldCreateMultiEdge(GdecompError):
    """A vertex identification or expansion would merge two edges."""


class WouldCreateLoop(GdecompError):
    """A vertex identification would turn an edge into a loop."""


class NotRegular(GdecompError):
    """The graph is not r-regular where regularity was required."""


class NotDivisible(GdecompError):
    """Degree-gcd or edge-count divisibility by the pattern fails."""


class BadParameters(GdecompError):
    """Numeric arguments violate a documented constraint."""


# ---------------------------------------------------------------- patterns


class DuplicateRootLabel(GdecompError):
    """Two pattern vertices carry the same root label."""


class PreconditionViolated(GdecompError):
    """A stated hypothesis of an operation does not hold for the input."""


class EmbedFailed(GdecompError):
    """The greedy embedder ran out of candidate host vertices."""


# ---------------------------------------------------------------- packing


class LimitExceeded(GdecompError):
    """Copy enumeration hit its cap before finishing."""


class PatternTooLarge(GdecompError):
    """Pattern exceeds the supported size for automorphism dedup."""


class FactorUnavailable(GdecompError):
    """No further edge-disjoint perfect factor exists or was found."""


# ---------------------------------------------------------------- gadgets


class NotIdentification(GdecompError):
    """The supplied map is not an edge-bijective identification."""


class DegreeNotInF(GdecompError):
    """Requested degree does not occur in the pattern graph."""


class TooSmall(GdecompError):
    """A supplied vertex pool is too small for the construction."""


# ---------------------------------------------------------------- pipeline


class NotRDivisible(GdecompError):
    """Vertex degrees are not all divisible by the required r."""


class NoMultisetRealization(GdecompError):
    """No small multiset of pattern degrees realizes a residue."""


class InventoryTooLarge(GdecompError):
    """Part size exceeds the inventory cap for the master absorber."""


class LeftoverNotIndexed(GdecompError):
    """A leftover part graph has no absorber in the index."""


class PartsTooSmallForMovers(GdecompError):
    """Edge movers were requested but parts cannot host them."""


class DivisibilityViolated(GdecompError):
    """A per-part divisibility requirement of mover-free mode fails."""


class InventoryExhausted(GdecompError):
    """A parity selection needed more slot copies than were placed."""


class StageFailed(GdecompError):
    """A pipeline stage failed; the message names the stage."""


class ReserveFailed(StageFailed):
    """No random reserve subgraph satisfied its degree properties."""


class ReEmbedFailed(StageFailed):
    """Re-embedding copies away from high-degree vertices failed."""


class CoverFailed(StageFailed):
    """Covering cross edges with pattern copies failed."""


class AllStrategiesFailed(GdecompError):
    """Every strategy in the decomposition ladder failed."""

    def __init__(self, reports):
        self.reports = list(reports)
        super().__init__("; ".join(str(r) for r in self.reports))


# ---------------------------------------------------------------- verify


class VerificationFailed(GdecompError):
    """An independent verifier rejected a certificate."""


# ---------------------------------------------------------------- sentinels


@dataclass(frozen=True)
class Unsolvable:
    """Definitive negative answer from a complete search."""

    reason: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class BudgetExhausted:
    """The search gave up after spending its node budget."""

    nodes: int = 0

    def __bool__(self) -> bool:
        return False
