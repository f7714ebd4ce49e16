"""Independent reference evaluators used to cross-check the engine.

Everything here is written directly from the defining equations, in the
most naive style possible, and deliberately shares no code with the
package: set comprehensions, unbounded recursion, no canonical ordering.
"""

from __future__ import annotations

import random

from reactive_graphs.expansion import InducedLts
from reactive_graphs.model import Configuration, Ground, Hyper, OFF, ON, ReactiveGraph


# --- naive closure / step semantics ---------------------------------------

def o_from(g: ReactiveGraph, e: str) -> set[str]:
    return {h for h, d in g.detail.items() if isinstance(d, Hyper) and d.source == e}


def o_from_star(g: ReactiveGraph, e: str, alpha: frozenset[str]) -> set[str]:
    result: set[str] = set()
    for r in o_from(g, e) & alpha:
        result |= {r} | o_from_star(g, r, alpha - {e})
    return result


def o_on(g: ReactiveGraph, e: str, alpha: frozenset[str]) -> set[str]:
    return {
        g.detail[t].target
        for t in o_from_star(g, e, alpha)
        if g.detail[t].polarity == ON
    }


def o_off(g: ReactiveGraph, e: str, alpha: frozenset[str]) -> set[str]:
    return {
        g.detail[t].target
        for t in o_from_star(g, e, alpha)
        if g.detail[t].polarity == OFF
    }


def o_enabled(g: ReactiveGraph, c: Configuration) -> set[str]:
    return {
        e
        for e in c.active
        if isinstance(g.detail[e], Ground) and g.detail[e].source == c.state
    }


def o_step(g: ReactiveGraph, c: Configuration, e: str) -> Configuration:
    d = g.detail[e]
    assert isinstance(d, Ground) and e in c.active and d.source == c.state
    active = (c.active | o_on(g, e, c.active)) - o_off(g, e, c.active)
    return Configuration(d.target, frozenset(active))


# --- product construction oracles -----------------------------------------

def _pairs_lts(lts_a: InducedLts, lts_b: InducedLts, transitions_of):
    """Generic BFS over node pairs; transitions_of yields (action, witness, pair)."""
    from collections import deque

    start = (lts_a.initial, lts_b.initial)
    nodes = {start}
    transitions = set()
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        for action, witness, nxt in transitions_of(pair):
            transitions.add((pair, action, witness, nxt))
            if nxt not in nodes:
                nodes.add(nxt)
                queue.append(nxt)
    return nodes, transitions


def shuffle_product(lts_a: InducedLts, lts_b: InducedLts):
    """Interleaving of the component LTSs: either side moves alone."""

    def moves(pair):
        pa, pb = pair
        for a, w, t in lts_a.successors[pa]:
            yield a, ("left", w), (t, pb)
        for a, w, t in lts_b.successors[pb]:
            yield a, ("right", w), (pa, t)

    return _pairs_lts(lts_a, lts_b, moves)


def synchronized_product(lts_a: InducedLts, lts_b: InducedLts):
    """Action-synchronized product: both sides move on a shared action."""

    def moves(pair):
        pa, pb = pair
        for a, wa, ta in lts_a.successors[pa]:
            for b, wb, tb in lts_b.successors[pb]:
                if a == b:
                    yield a, (wa, wb), (ta, tb)

    return _pairs_lts(lts_a, lts_b, moves)


# --- naive bisimulation fixpoint -------------------------------------------

def naive_bisimilar(lts_a: InducedLts, lts_b: InducedLts) -> bool:
    """Greatest-fixpoint bisimilarity check by repeated pair deletion."""
    rel = {(p, q) for p in lts_a.nodes for q in lts_b.nodes}

    def transfers(p, q) -> bool:
        for a, _w, p2 in lts_a.successors[p]:
            if not any(b == a and (p2, q2) in rel for b, _w2, q2 in lts_b.successors[q]):
                return False
        for b, _w, q2 in lts_b.successors[q]:
            if not any(a == b and (p2, q2) in rel for a, _w2, p2 in lts_a.successors[p]):
                return False
        return True

    changed = True
    while changed:
        changed = False
        for pair in sorted(rel, key=str):
            if not transfers(*pair):
                rel.discard(pair)
                changed = True
    return (lts_a.initial, lts_b.initial) in rel


# --- random model generator -------------------------------------------------

ACTIONS = ("a", "b", "c")


def random_graph(
    rng: random.Random,
    max_states: int = 4,
    max_edges: int = 6,
    name: str = "G",
    ground_bias: float = 0.55,
) -> ReactiveGraph:
    """A small arbitrary reactive graph; always passes validation."""
    while True:
        n_states = rng.randint(1, max_states)
        states = [f"S{i}" for i in range(n_states)]
        ids = [f"x{i}" for i in range(rng.randint(0, max_edges))]
        detail = {}
        used = set()
        ok = True
        for e in ids:
            for _ in range(30):
                if not ids or rng.random() < ground_bias:
                    d = Ground(rng.choice(states), rng.choice(ACTIONS), rng.choice(states))
                else:
                    d = Hyper(rng.choice(ids), rng.choice(ids), rng.choice((ON, OFF)))
                if d not in used:
                    break
            else:
                ok = False
                break
            used.add(d)
            detail[e] = d
        if not ok:
            continue
        active0 = frozenset(e for e in ids if rng.random() < 0.8)
        return ReactiveGraph(
            name,
            frozenset(states),
            frozenset(ACTIONS),
            detail,
            rng.choice(states),
            active0,
        )
