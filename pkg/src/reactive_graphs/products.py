"""Composition of two reactive graphs: asynchronous, synchronous, and
intrusive products.

Intrusive pairs connect the two components: firing an edge on one side
(de)activates edges on the opposite side. The fired edge's own on/off
closure always applies to its own side only, while the intrusion images
land on the other side, so intrusions never move the opposite state,
only rewrite its active set. Deactivation wins on overlap, exactly as in
the single-graph step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .dsl import SourceSpan, Token, tokenize
from .expansion import InducedLts, bfs_lts
from .model import (
    Configuration,
    Diagnostic,
    ModelError,
    ReactiveGraph,
    StepEffect,
    enabled,
    initial_configuration,
    off_set,
    on_set,
)

LEFT = "left"
RIGHT = "right"
ASYNC = "async"
SYNC = "sync"


class MoveNotEnabled(ModelError):
    def __init__(self, move: "ProductMove", reason: str):
        super().__init__(f"move {move.describe()} is not enabled: {reason}")
        self.move = move
        self.reason = reason


class InvalidIntrusions(ModelError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class IntrusionSpec:
    """Cross-component activation (gamma_plus) and deactivation
    (gamma_minus) pairs, stored as (source side, source edge, target edge);
    the target always lives on the opposite side."""

    gamma_plus: frozenset[tuple[str, str, str]]
    gamma_minus: frozenset[tuple[str, str, str]]

    @staticmethod
    def empty() -> "IntrusionSpec":
        return IntrusionSpec(frozenset(), frozenset())

    def image(self, kind: str, fired_side: str, fired_edge: str) -> frozenset[str]:
        """Targets on the opposite side of ``fired_side`` for one fired edge."""
        pairs = self.gamma_plus if kind == "plus" else self.gamma_minus
        return frozenset(t for side, e, t in pairs if side == fired_side and e == fired_edge)


@dataclass(frozen=True)
class ProductConfiguration:
    left: Configuration
    right: Configuration

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())


@dataclass(frozen=True)
class ProductMove:
    """One product transition choice: an edge per participating side."""

    action: str
    left_edge: "str | None"
    right_edge: "str | None"

    def describe(self) -> str:
        parts = []
        if self.left_edge is not None:
            parts.append(f"left.{self.left_edge}")
        if self.right_edge is not None:
            parts.append(f"right.{self.right_edge}")
        return f"{'+'.join(parts)} by {self.action!r}"


@dataclass(frozen=True)
class ProductStepEffect:
    move: ProductMove
    left: StepEffect
    right: StepEffect
    next: ProductConfiguration


@dataclass(frozen=True)
class ProductSystem:
    left: ReactiveGraph
    right: ReactiveGraph
    intrusions: IntrusionSpec
    mode: str  # ASYNC | SYNC

    def graph(self, side: str) -> ReactiveGraph:
        return self.left if side == LEFT else self.right

    def initial(self) -> ProductConfiguration:
        return ProductConfiguration(initial_configuration(self.left), initial_configuration(self.right))


def validate_intrusions(spec: IntrusionSpec, left: ReactiveGraph, right: ReactiveGraph) -> IntrusionSpec:
    """Check that every intrusive pair references existing edges."""
    diags = []
    graphs = {LEFT: left, RIGHT: right}
    for kind, pairs in (("enables", spec.gamma_plus), ("disables", spec.gamma_minus)):
        for side, src, trg in sorted(pairs):
            other = RIGHT if side == LEFT else LEFT
            if src not in graphs[side].detail:
                diags.append(Diagnostic("UnknownIdentifier", src, f"{side} graph has no edge {src!r}"))
            if trg not in graphs[other].detail:
                diags.append(Diagnostic("UnknownIdentifier", trg, f"{other} graph has no edge {trg!r}"))
    if diags:
        raise InvalidIntrusions(diags)
    return spec


def intrusive_effect(
    side: str,
    alpha: Iterable[str],
    fired_side: str,
    fired_edge: str,
    spec: IntrusionSpec,
    graph: ReactiveGraph,
) -> frozenset[str]:
    """New active set of ``side`` after ``fired_edge`` fired on ``fired_side``.

    Own-side firings apply the plain on/off closure; foreign firings apply
    only the intrusion images, so a fired edge never touches the opposite
    state and an empty spec leaves foreign sides untouched.
    """
    alpha = frozenset(alpha)
    if fired_side == side:
        return (alpha | on_set(fired_edge, alpha, graph)) - off_set(fired_edge, alpha, graph)
    plus = spec.image("plus", fired_side, fired_edge)
    minus = spec.image("minus", fired_side, fired_edge)
    return (alpha | plus) - minus


def product_enabled(pc: ProductConfiguration, sys: ProductSystem) -> list[ProductMove]:
    """Enabled product moves, in canonical order.

    Async: every enabled move of either side (left block first). Sync:
    every same-action pairing of enabled moves, one edge per side.
    """
    left_moves = enabled(pc.left, sys.left)
    right_moves = enabled(pc.right, sys.right)
    if sys.mode == ASYNC:
        return [ProductMove(a, e, None) for e, a, _t in left_moves] + [
            ProductMove(a, None, e) for e, a, _t in right_moves
        ]
    pairs = [
        ProductMove(a, e1, e2)
        for e1, a, _t in left_moves
        for e2, a2, _t2 in right_moves
        if a == a2
    ]
    return sorted(pairs, key=lambda m: (m.action, m.left_edge, m.right_edge))


def _side_effect(
    pc: ProductConfiguration, side: str, own_edge: "str | None", other_edge: "str | None", action: str, sys: ProductSystem
) -> StepEffect:
    """Def.-3 update for one side of a product step, plus foreign intrusions.

    ``own_edge`` is this side's fired edge (None if passive), ``other_edge``
    the opposite side's (None in async). Activation/deactivation collect
    the on/off closure of the own edge and the intrusion image of the
    other side's edge in one joint formula, so a cross-side disable beats
    a local enable.
    """
    graph = sys.graph(side)
    conf = pc.left if side == LEFT else pc.right
    other = RIGHT if side == LEFT else LEFT
    on = off = plus = minus = frozenset()
    state = conf.state
    if own_edge is not None:
        detail = graph.detail[own_edge]
        state = detail.target
        on = on_set(own_edge, conf.active, graph)
        off = off_set(own_edge, conf.active, graph)
    if other_edge is not None:
        plus = sys.intrusions.image("plus", other, other_edge)
        minus = sys.intrusions.image("minus", other, other_edge)
    activated = on | plus
    deactivated = off | minus
    nxt = Configuration(state, (conf.active | activated) - deactivated)
    return StepEffect(own_edge, action, activated, deactivated, activated & deactivated, nxt)


def product_step(pc: ProductConfiguration, move: ProductMove, sys: ProductSystem) -> ProductStepEffect:
    """Fire one product move; raises MoveNotEnabled otherwise."""
    if move not in product_enabled(pc, sys):
        raise MoveNotEnabled(move, "not offered in this configuration")
    left = _side_effect(pc, LEFT, move.left_edge, move.right_edge, move.action, sys)
    right = _side_effect(pc, RIGHT, move.right_edge, move.left_edge, move.action, sys)
    return ProductStepEffect(move, left, right, ProductConfiguration(left.next, right.next))


def product_expand(sys: ProductSystem, max_states: "int | None" = None) -> InducedLts:
    """Induced LTS of the product semantics; same determinism contract as
    single-graph expansion, with ProductMove witnesses."""

    def moves(pc: ProductConfiguration):
        for move in product_enabled(pc, sys):
            yield move.action, move, product_step(pc, move, sys).next

    return bfs_lts(sys.initial(), moves, max_states)


# --- intrusion spec files (.ri) ------------------------------------------

def parse_intrusions(source: str, left: ReactiveGraph, right: ReactiveGraph) -> IntrusionSpec:
    """Parse intrusive pairs: lines ``left.EDGE enables|disables right.EDGE;``
    (and the mirrored form), resolved against the two component graphs."""
    diagnostics: list[Diagnostic] = []
    tokens = tokenize(source, diagnostics)
    plus: set[tuple[str, str, str]] = set()
    minus: set[tuple[str, str, str]] = set()
    graphs = {LEFT: left, RIGHT: right}
    pos = 0

    def take(kind: str, what: str) -> "Token | None":
        nonlocal pos
        tok = tokens[pos]
        if tok.kind != kind:
            diagnostics.append(Diagnostic("SyntaxError", tok.value, f"expected {what}", tok.span))
            return None
        pos += 1
        return tok

    def qualified() -> "tuple[str, str, SourceSpan] | None":
        side = take("ident", "'left' or 'right'")
        if side is None:
            return None
        if side.value not in (LEFT, RIGHT):
            diagnostics.append(Diagnostic("SyntaxError", side.value, "expected 'left' or 'right'", side.span))
            return None
        if take("dot", "'.'") is None:
            return None
        edge = take("ident", "edge id")
        if edge is None:
            return None
        return side.value, edge.value, edge.span

    while tokens[pos].kind != "eof":
        src = qualified()
        verb = take("ident", "'enables' or 'disables'") if src else None
        trg = qualified() if verb else None
        if trg is None or take("semi", "';'") is None:
            while tokens[pos].kind not in ("semi", "eof"):
                pos += 1
            if tokens[pos].kind == "semi":
                pos += 1
            continue
        if verb.value not in ("enables", "disables"):
            diagnostics.append(Diagnostic("SyntaxError", verb.value, "expected 'enables' or 'disables'", verb.span))
            continue
        src_side, src_edge, src_span = src
        trg_side, trg_edge, trg_span = trg
        if trg_side == src_side:
            diagnostics.append(
                Diagnostic("SameSideIntrusion", trg_edge, "intrusive pairs must relate opposite sides", trg_span)
            )
            continue
        if src_edge not in graphs[src_side].detail:
            diagnostics.append(
                Diagnostic("UnknownIdentifier", src_edge, f"{src_side} graph has no edge {src_edge!r}", src_span)
            )
            continue
        if trg_edge not in graphs[trg_side].detail:
            diagnostics.append(
                Diagnostic("UnknownIdentifier", trg_edge, f"{trg_side} graph has no edge {trg_edge!r}", trg_span)
            )
            continue
        (plus if verb.value == "enables" else minus).add((src_side, src_edge, trg_edge))
    if diagnostics:
        raise InvalidIntrusions(diagnostics)
    return IntrusionSpec(frozenset(plus), frozenset(minus))
