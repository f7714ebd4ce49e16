"""Expansion of a reactive graph into its induced LTS over configurations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable

from .model import Configuration, Ground, ReactiveGraph, enabled, initial_configuration, step


@dataclass(frozen=True)
class InducedLts:
    """Finite transition system over configurations.

    ``nodes`` is in breadth-first discovery order (index 0 = initial),
    which doubles as the canonical state numbering. Each transition is a
    (source, action, witness, target) tuple where the witness names the
    fired edge (or product move). ``truncated`` is True iff a node bound
    stopped exploration before the fixpoint.
    """

    nodes: tuple
    transitions: tuple
    initial: Hashable
    truncated: bool

    @cached_property
    def index(self) -> dict:
        return {node: i for i, node in enumerate(self.nodes)}

    @cached_property
    def successors(self) -> dict:
        succ: dict = {node: [] for node in self.nodes}
        for source, action, witness, target in self.transitions:
            succ[source].append((action, witness, target))
        return succ


@dataclass(frozen=True)
class SizeStats:
    rg_states: int
    rg_ground_edges: int
    rg_hyper_edges: int
    lts_states: int
    lts_edges: int


def bfs_lts(
    initial: Hashable,
    moves: Callable[[Hashable], Iterable[tuple[str, Hashable, Hashable]]],
    max_states: "int | None" = None,
) -> InducedLts:
    """Breadth-first closure from ``initial`` under a move function.

    ``moves(node)`` yields (action, witness, successor) in canonical
    order, which makes node numbering and transition order deterministic.
    """
    if max_states is not None and max_states < 1:
        raise ValueError("max_states must be positive")
    nodes = [initial]
    seen = {initial}
    transitions = []
    truncated = False
    queue = deque([initial])
    while queue:
        node = queue.popleft()
        for action, witness, target in moves(node):
            if target not in seen:
                if max_states is not None and len(nodes) >= max_states:
                    truncated = True
                    continue
                seen.add(target)
                nodes.append(target)
                queue.append(target)
            transitions.append((node, action, witness, target))
    return InducedLts(tuple(nodes), tuple(transitions), initial, truncated)


def expand(g: ReactiveGraph, max_states: "int | None" = None) -> InducedLts:
    """The LTS induced by the step rule, from the initial configuration.

    Exact fixpoint when ``max_states`` is None (the space is finite:
    at most |states| * 2^|edges| configurations).
    """

    def moves(c: Configuration):
        for e, action, _target in enabled(c, g):
            yield action, e, step(c, e, g).next

    return bfs_lts(initial_configuration(g), moves, max_states)


def stats(g: ReactiveGraph, lts: InducedLts) -> SizeStats:
    """Size of the reactive graph next to the size of its induced LTS."""
    ground = sum(1 for d in g.detail.values() if isinstance(d, Ground))
    return SizeStats(
        rg_states=len(g.states),
        rg_ground_edges=ground,
        rg_hyper_edges=len(g.detail) - ground,
        lts_states=len(lts.nodes),
        lts_edges=len(lts.transitions),
    )
