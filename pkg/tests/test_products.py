"""Async, sync and intrusive products against independent constructions."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from reactive_graphs.expansion import expand
from reactive_graphs.model import Ground, ReactiveGraph, initial_configuration, step, validate
from reactive_graphs.products import (
    ASYNC,
    InvalidIntrusions,
    IntrusionSpec,
    LEFT,
    MoveNotEnabled,
    ProductMove,
    ProductSystem,
    RIGHT,
    SYNC,
    intrusive_effect,
    parse_intrusions,
    product_enabled,
    product_expand,
    product_step,
)

from _oracles import random_graph, shuffle_product, synchronized_product
from conftest import fixture_text


@pytest.fixture(scope="module")
def coffee_intrusion(usr, vm):
    return parse_intrusions(fixture_text("user_vm.ri"), usr, vm)


@pytest.fixture(scope="module")
def usr_vm(usr, vm, coffee_intrusion):
    return ProductSystem(usr, vm, coffee_intrusion, ASYNC)


# --- intrusive effect ---------------------------------------------------------

def test_intrusion_fixture_parses(coffee_intrusion):
    assert coffee_intrusion.gamma_plus == frozenset()
    assert coffee_intrusion.gamma_minus == {(RIGHT, "e2", "u2")}


def test_half_price_coin_withdraws_get_product(usr, coffee_intrusion):
    alpha = intrusive_effect(LEFT, {"u1", "u2"}, RIGHT, "e2", coffee_intrusion, usr)
    assert alpha == {"u1"}


def test_foreign_edge_with_empty_spec_is_identity(usr):
    spec = IntrusionSpec.empty()
    assert intrusive_effect(LEFT, {"u1", "u2"}, RIGHT, "e1", spec, usr) == {"u1", "u2"}


def test_own_edge_applies_plain_closure(vm, coffee_intrusion):
    mine = intrusive_effect(RIGHT, vm.active0, RIGHT, "e2", coffee_intrusion, vm)
    assert mine == step(initial_configuration(vm), "e2", vm).next.active


def test_intrusion_deactivation_precedence(usr):
    spec = IntrusionSpec(
        gamma_plus=frozenset({(RIGHT, "e2", "u2")}),
        gamma_minus=frozenset({(RIGHT, "e2", "u2")}),
    )
    assert intrusive_effect(LEFT, {"u1", "u2"}, RIGHT, "e2", spec, usr) == {"u1"}


# --- enabled moves --------------------------------------------------------------

def test_async_enabled_lists_both_sides(usr_vm):
    moves = product_enabled(usr_vm.initial(), usr_vm)
    assert [m.describe() for m in moves] == [
        "left.u1 by 'coin'",
        "right.e1 by '1eur'",
        "right.e2 by '0.5eur'",
    ]


def test_sync_disjoint_alphabets_never_move(usr, vm):
    system = ProductSystem(usr, vm, IntrusionSpec.empty(), SYNC)
    assert product_enabled(system.initial(), system) == []


def test_sync_shared_action_pairs_up():
    a = validate(ReactiveGraph.of("A", {"e": Ground("P", "go", "Q")}, "P"))
    b = validate(ReactiveGraph.of("B", {"f": Ground("X", "go", "Y")}, "X"))
    system = ProductSystem(a, b, IntrusionSpec.empty(), SYNC)
    moves = product_enabled(system.initial(), system)
    assert moves == [ProductMove("go", "e", "f")]


# --- stepping ---------------------------------------------------------------------

def test_async_intrusive_step_fig4(usr_vm):
    pc = usr_vm.initial()
    effect = product_step(pc, ProductMove("0.5eur", None, "e2"), usr_vm)
    # acting side takes its ordinary step
    assert effect.right.next == step(pc.right, "e2", usr_vm.right).next
    # passive side keeps its state but loses the intruded edge
    assert effect.left.next.state == "User"
    assert effect.left.next.active == {"u1"}
    assert effect.left.fired is None
    assert effect.left.deactivated == {"u2"}
    assert effect.next.left == effect.left.next
    assert effect.next.right == effect.right.next


def test_async_step_with_empty_gamma_touches_one_side(usr, vm):
    system = ProductSystem(usr, vm, IntrusionSpec.empty(), ASYNC)
    pc = system.initial()
    effect = product_step(pc, ProductMove("coin", "u1", None), system)
    assert effect.left.next == step(pc.left, "u1", usr).next
    assert effect.right.next == pc.right


def test_sync_step_with_empty_gamma_is_componentwise():
    a = validate(ReactiveGraph.of("A", {"e": Ground("P", "go", "Q")}, "P"))
    b = validate(ReactiveGraph.of("B", {"f": Ground("X", "go", "Y")}, "X"))
    system = ProductSystem(a, b, IntrusionSpec.empty(), SYNC)
    pc = system.initial()
    effect = product_step(pc, ProductMove("go", "e", "f"), system)
    assert effect.left.next == step(pc.left, "e", a).next
    assert effect.right.next == step(pc.right, "f", b).next


def test_move_not_enabled(usr_vm):
    with pytest.raises(MoveNotEnabled):
        product_step(usr_vm.initial(), ProductMove("coin", None, "e1"), usr_vm)


def test_intrusions_never_move_the_opposite_state(usr_vm):
    lts = product_expand(usr_vm)
    for source, _a, move, target in lts.transitions:
        if move.left_edge is None:
            assert source.left.state == target.left.state
        if move.right_edge is None:
            assert source.right.state == target.right.state


# --- expansion laws ------------------------------------------------------------------

def _normalize(lts):
    nodes = {(pc.left, pc.right) for pc in lts.nodes}
    transitions = set()
    for s, a, m, t in lts.transitions:
        if m.right_edge is None:
            w = ("left", m.left_edge)
        elif m.left_edge is None:
            w = ("right", m.right_edge)
        else:
            w = (m.left_edge, m.right_edge)
        transitions.add(((s.left, s.right), a, w, (t.left, t.right)))
    return nodes, transitions


def test_async_empty_gamma_is_interleaving(usr, vm):
    system = ProductSystem(usr, vm, IntrusionSpec.empty(), ASYNC)
    assert _normalize(product_expand(system)) == shuffle_product(expand(usr), expand(vm))


def test_sync_empty_gamma_is_synchronized(vm):
    from reactive_graphs.dsl import parse

    clone = parse(fixture_text("vending.rg").replace("rg VM", "rg VMClone")).primary
    system = ProductSystem(vm, clone, IntrusionSpec.empty(), SYNC)
    assert _normalize(product_expand(system)) == synchronized_product(expand(vm), expand(clone))


def test_left_unit_law(vm):
    unit = validate(ReactiveGraph.of("Unit", {}, "Z"))
    system = ProductSystem(unit, vm, IntrusionSpec.empty(), ASYNC)
    nodes, transitions = _normalize(product_expand(system))
    rhs = expand(vm)
    zc = initial_configuration(unit)
    assert nodes == {(zc, n) for n in rhs.nodes}
    assert transitions == {
        ((zc, s), a, ("right", w), (zc, t)) for s, a, w, t in rhs.transitions
    }


def test_product_node_bound(usr, vm, usr_vm):
    lts = product_expand(usr_vm)
    bound = len(usr.states) * len(vm.states) * 2 ** (len(usr.edges) + len(vm.edges))
    assert len(lts.nodes) <= bound


def test_product_expand_deterministic(usr_vm):
    first = product_expand(usr_vm)
    second = product_expand(usr_vm)
    assert first.nodes == second.nodes
    assert first.transitions == second.transitions


@given(st.integers(0, 10**9))
@settings(max_examples=25, deadline=None)
def test_product_laws_on_random_pairs(seed):
    rng = random.Random(seed)
    a = random_graph(rng, max_states=3, max_edges=4, name="A")
    b = random_graph(rng, max_states=3, max_edges=4, name="B")
    lts_a, lts_b = expand(a), expand(b)
    if len(lts_a.nodes) * len(lts_b.nodes) > 1500:
        return
    async_sys = ProductSystem(a, b, IntrusionSpec.empty(), ASYNC)
    assert _normalize(product_expand(async_sys)) == shuffle_product(lts_a, lts_b)
    sync_sys = ProductSystem(a, b, IntrusionSpec.empty(), SYNC)
    assert _normalize(product_expand(sync_sys)) == synchronized_product(lts_a, lts_b)


# --- intrusion files -------------------------------------------------------------------

def test_parse_intrusions_rejects_same_side(usr, vm):
    with pytest.raises(InvalidIntrusions) as exc:
        parse_intrusions("left.u1 disables left.u2;", usr, vm)
    assert [d.code for d in exc.value.diagnostics] == ["SameSideIntrusion"]


def test_parse_intrusions_rejects_unknown_edges(usr, vm):
    with pytest.raises(InvalidIntrusions) as exc:
        parse_intrusions("left.u9 enables right.e1;\nright.e1 disables left.zz;", usr, vm)
    assert [d.code for d in exc.value.diagnostics] == ["UnknownIdentifier", "UnknownIdentifier"]
    assert [d.subject for d in exc.value.diagnostics] == ["u9", "zz"]


def test_parse_intrusions_both_directions(usr, vm):
    spec = parse_intrusions(
        "left.u1 enables right.h4; right.e1 disables left.u1; // comment\n", usr, vm
    )
    assert spec.gamma_plus == {(LEFT, "u1", "h4")}
    assert spec.gamma_minus == {(RIGHT, "e1", "u1")}
