"""Core model of multi-action reactive graphs and their step semantics.

A reactive graph is a labelled transition system whose edges carry an
activation status that evolves during execution: *ground* edges move
between states, while *hyper* edges activate or deactivate other edges
whenever the edge they start from is fired. The semantic state is a
configuration (current state, set of active edges); firing an enabled
ground edge moves the state and rewrites the active set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, TYPE_CHECKING, Union

if TYPE_CHECKING:
    from .dsl import SourceSpan

ON = "on"
OFF = "off"


class ModelError(Exception):
    """Base class for semantic errors raised by graph operations."""


class UnknownEdge(ModelError):
    def __init__(self, edge_id: str):
        super().__init__(f"unknown edge {edge_id!r}")
        self.edge_id = edge_id


class EdgeNotEnabled(ModelError):
    def __init__(self, edge_id: str, reason: str):
        super().__init__(f"edge {edge_id!r} is not enabled: {reason}")
        self.edge_id = edge_id
        self.reason = reason


@dataclass(frozen=True)
class Diagnostic:
    """One validation or parse problem, naming the offending identifier."""

    code: str
    subject: str
    message: str
    span: "SourceSpan | None" = None

    def __str__(self) -> str:
        prefix = f"{self.span}: " if self.span is not None else ""
        return f"{prefix}{self.code}: {self.message}"


class InvalidGraph(ModelError):
    """Raised by validate() when a graph breaks a well-formedness invariant."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Ground:
    """A labelled transition between two states."""

    source: str
    action: str
    target: str


@dataclass(frozen=True)
class Hyper:
    """An edge between edges, activating (on) or deactivating (off) its target.

    Both endpoints are edge ids; a hyper edge may target any edge,
    including itself and other hyper edges.
    """

    source: str
    target: str
    polarity: str  # ON | OFF


EdgeDetail = Union[Ground, Hyper]


@dataclass(frozen=True)
class ReactiveGraph:
    """The static structure: named states, actions, edges, initial data.

    ``detail`` is a total map from edge id to the edge's internals and is
    required to be injective (no two ids describing the same edge). The
    graph itself never changes during execution; only configurations do.
    """

    name: str
    states: frozenset[str]
    actions: frozenset[str]
    detail: Mapping[str, EdgeDetail]
    init: str
    active0: frozenset[str]

    @property
    def edges(self) -> frozenset[str]:
        return frozenset(self.detail)

    def ground_ids(self) -> list[str]:
        return sorted(e for e, d in self.detail.items() if isinstance(d, Ground))

    def hyper_ids(self) -> list[str]:
        return sorted(e for e, d in self.detail.items() if isinstance(d, Hyper))

    @classmethod
    def of(
        cls,
        name: str,
        detail: Mapping[str, EdgeDetail],
        init: str,
        inactive: Iterable[str] = (),
        extra_states: Iterable[str] = (),
    ) -> "ReactiveGraph":
        """Build a graph with states and actions inferred from ground edges."""
        states = {init, *extra_states}
        actions = set()
        for d in detail.values():
            if isinstance(d, Ground):
                states.add(d.source)
                states.add(d.target)
                actions.add(d.action)
        active0 = frozenset(detail) - frozenset(inactive)
        return cls(name, frozenset(states), frozenset(actions), dict(detail), init, active0)


@dataclass(frozen=True)
class Configuration:
    """Semantic state of a running graph: current state plus active edges."""

    state: str
    active: frozenset[str]

    def sort_key(self) -> tuple[str, tuple[str, ...]]:
        """Canonical ordering key (state, sorted active ids)."""
        return (self.state, tuple(sorted(self.active)))


@dataclass(frozen=True)
class StepEffect:
    """What firing one ground edge did.

    ``activated``/``deactivated`` are the raw on/off closure results;
    ``conflicts`` is their intersection (deactivation wins there, but the
    collision is surfaced so analyses can warn about it). ``fired`` is
    None only for product-passive updates driven purely by intrusions.
    """

    fired: "str | None"
    action: str
    activated: frozenset[str]
    deactivated: frozenset[str]
    conflicts: frozenset[str]
    next: Configuration


def validation_diagnostics(g: ReactiveGraph) -> list[Diagnostic]:
    """All well-formedness violations of ``g``, in a deterministic order."""
    diags: list[Diagnostic] = []
    if g.init not in g.states:
        diags.append(
            Diagnostic("UnknownInitState", g.init, f"initial state {g.init!r} is not a declared state")
        )
    seen: dict[EdgeDetail, str] = {}
    for e in sorted(g.detail):
        d = g.detail[e]
        if d in seen:
            diags.append(
                Diagnostic(
                    "DuplicateDetail",
                    e,
                    f"edges {seen[d]!r} and {e!r} describe the same edge {d}",
                )
            )
        else:
            seen[d] = e
        if isinstance(d, Ground):
            for s in (d.source, d.target):
                if s not in g.states:
                    diags.append(
                        Diagnostic("DanglingEdgeRef", s, f"ground edge {e!r} uses undeclared state {s!r}")
                    )
            if d.action not in g.actions:
                diags.append(
                    Diagnostic(
                        "DanglingEdgeRef", d.action, f"ground edge {e!r} uses undeclared action {d.action!r}"
                    )
                )
        else:
            for ref in (d.source, d.target):
                if ref not in g.detail:
                    diags.append(
                        Diagnostic("DanglingEdgeRef", ref, f"hyper edge {e!r} references unknown edge {ref!r}")
                    )
    for e in sorted(g.active0 - frozenset(g.detail)):
        diags.append(
            Diagnostic("ActiveNotSubset", e, f"initially active edge {e!r} is not a declared edge")
        )
    return diags


def validate(g: ReactiveGraph) -> ReactiveGraph:
    """Return ``g`` unchanged if well formed, else raise InvalidGraph."""
    diags = validation_diagnostics(g)
    if diags:
        raise InvalidGraph(diags)
    return g


def _require_edge(e: str, g: ReactiveGraph) -> None:
    if e not in g.detail:
        raise UnknownEdge(e)


def from_(e: str, g: ReactiveGraph) -> frozenset[str]:
    """The hyper edges whose source is ``e``. Ground edges never appear."""
    _require_edge(e, g)
    return frozenset(h for h, d in g.detail.items() if isinstance(d, Hyper) and d.source == e)


def from_star(e: str, alpha: Iterable[str], g: ReactiveGraph) -> frozenset[str]:
    """Transitive closure of active hyper edges triggered from ``e``.

    For every active hyper edge r leaving e, the result contains r plus
    the closure from r computed with e removed from the active set. The
    parent removal makes every chain of nested calls strictly consume the
    active set, so recursion depth is bounded (see the fuel guard).
    """
    alpha = frozenset(alpha)
    for a in alpha - frozenset(g.detail):
        raise UnknownEdge(a)
    _require_edge(e, g)
    # A chain can revisit a node once via a self-looping hyper edge before
    # the parent removal kicks in, hence the factor 2 on the depth budget.
    return _from_star(e, alpha, g, 2 * len(alpha) + 2)


def _from_star(e: str, alpha: frozenset[str], g: ReactiveGraph, fuel: int) -> frozenset[str]:
    if fuel < 0:
        raise RuntimeError("from_star: depth budget exhausted (termination bug)")
    out: set[str] = set()
    for r in from_(e, g) & alpha:
        out.add(r)
        out |= _from_star(r, alpha - {e}, g, fuel - 1)
    return frozenset(out)


def _closure_targets(e: str, alpha: Iterable[str], g: ReactiveGraph, polarity: str) -> frozenset[str]:
    closure = from_star(e, alpha, g)
    return frozenset(
        g.detail[h].target for h in closure if g.detail[h].polarity == polarity  # type: ignore[union-attr]
    )


def on_set(e: str, alpha: Iterable[str], g: ReactiveGraph) -> frozenset[str]:
    """Edges activated by firing ``e`` under active set ``alpha``."""
    return _closure_targets(e, alpha, g, ON)


def off_set(e: str, alpha: Iterable[str], g: ReactiveGraph) -> frozenset[str]:
    """Edges deactivated by firing ``e`` under active set ``alpha``."""
    return _closure_targets(e, alpha, g, OFF)


def initial_configuration(g: ReactiveGraph) -> Configuration:
    return Configuration(g.init, g.active0)


def enabled(c: Configuration, g: ReactiveGraph) -> list[tuple[str, str, str]]:
    """Active ground edges leaving the current state, in edge-id order.

    Returns (edge id, action, target state) triples; an empty list means
    the configuration is a deadlock.
    """
    moves = []
    for e in sorted(c.active):
        _require_edge(e, g)
        d = g.detail[e]
        if isinstance(d, Ground) and d.source == c.state:
            moves.append((e, d.action, d.target))
    return moves


def step(c: Configuration, e: str, g: ReactiveGraph) -> StepEffect:
    """Fire the enabled ground edge ``e``: new state plus rewritten active set.

    The active set becomes (active ∪ on) \\ off, so an edge that is both
    activated and deactivated ends up inactive; such edges are reported
    in ``conflicts`` without blocking the step.
    """
    _require_edge(e, g)
    d = g.detail[e]
    if not isinstance(d, Ground):
        raise EdgeNotEnabled(e, "not a ground edge")
    if e not in c.active:
        raise EdgeNotEnabled(e, "edge is inactive")
    if d.source != c.state:
        raise EdgeNotEnabled(e, f"source {d.source!r} is not the current state {c.state!r}")
    on = on_set(e, c.active, g)
    off = off_set(e, c.active, g)
    nxt = Configuration(d.target, (c.active | on) - off)
    return StepEffect(e, d.action, on, off, on & off, nxt)
