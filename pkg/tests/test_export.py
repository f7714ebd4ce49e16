"""JSON interchange and diagram rendering."""

from __future__ import annotations

import json
import random

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from reactive_graphs.dsl import ParsedInput, parse
from reactive_graphs.expansion import expand
from reactive_graphs.export import (
    SchemaError,
    from_json,
    lts_schema,
    lts_to_dict,
    lts_to_dot,
    lts_to_mermaid,
    model_schema,
    to_diagram,
    to_dot,
    to_json,
    to_mermaid,
)
from reactive_graphs.model import initial_configuration, step
from reactive_graphs.products import ASYNC, IntrusionSpec, ProductSystem, product_expand

from _oracles import random_graph
from conftest import GOLDEN


# --- JSON -------------------------------------------------------------------

def test_model_round_trip_bit_identical(vm, fts):
    for g in (vm, fts):
        text = to_json(g)
        assert to_json(from_json(text)) == text
        assert from_json(text) == g


@given(st.integers(0, 10**9))
def test_model_round_trip_random(seed):
    g = random_graph(random.Random(seed))
    assert from_json(to_json(g)) == g


def test_missing_init_reports_pointer(vm):
    doc = json.loads(to_json(vm))
    del doc["init"]
    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(doc))
    assert exc.value.path == "/init"


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d.update(schema="nope"), "/schema"),
        (lambda d: d.update(init="Ghost"), "/init"),
        (lambda d: d["edges"]["e1"].update(source="Ghost"), "/edges/e1/source"),
        (lambda d: d["edges"]["h1"].update(polarity="sideways"), "/edges/h1/polarity"),
        (lambda d: d["edges"]["h5"].update(target="zz"), "/edges/h5/target"),
        (lambda d: d.update(active=["nope"]), "/active/0"),
    ],
)
def test_schema_errors_carry_pointers(vm, mutate, path):
    doc = json.loads(to_json(vm))
    mutate(doc)
    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(doc))
    assert exc.value.path == path


def test_not_json_at_all():
    with pytest.raises(SchemaError):
        from_json("{nope")


def test_fts_lts_serializes_with_51_nodes(fts):
    doc = lts_to_dict(expand(fts))
    assert len(doc["nodes"]) == 51
    assert len(doc["transitions"]) == 101
    assert doc["initial"] == 0
    assert doc["truncated"] is False


def test_documents_validate_against_embedded_schemas(vm, fts, usr):
    model_doc = model_schema()
    lts_doc = lts_schema()
    for g in (vm, fts, usr):
        jsonschema.validate(json.loads(to_json(g)), model_doc)
        jsonschema.validate(lts_to_dict(expand(g)), lts_doc)
    product = ProductSystem(usr, vm, IntrusionSpec.empty(), ASYNC)
    jsonschema.validate(lts_to_dict(product_expand(product)), lts_doc)


def test_parsed_input_serialization(vm_vs_lts):
    doc = json.loads(to_json(vm_vs_lts))
    assert doc["schema"] == "parsed-input@1"
    assert doc["primary"]["name"] == "VM"
    assert doc["comparand"]["name"] == "Unfolded"
    single = ParsedInput(vm_vs_lts.primary, None)
    assert json.loads(to_json(single))["comparand"] is None


def test_json_deterministic(vm):
    assert to_json(vm) == to_json(vm)
    assert to_json(expand(vm)) == to_json(expand(vm))


# --- diagrams -----------------------------------------------------------------

def test_vm_global_mermaid_structure(vm):
    text = to_mermaid(vm)
    lines = text.splitlines()
    assert lines[0] == "flowchart LR"
    # 3 state nodes, 4 ground label nodes, one junction for h4
    assert sum(1 for l in lines if l.strip().startswith("S") and "([" in l) == 3
    assert sum(1 for l in lines if l.strip().startswith("E") and '["' in l) == 4
    assert sum(1 for l in lines if l.strip().startswith("J") and "((" in l) == 1
    # 5 hyper polarity links (4 disabling, 1 enabling), exactly one dashed
    assert sum(l.count("--x") + l.count("-.-x") for l in lines) == 4
    assert sum(l.count("--o") + l.count("-.-o") for l in lines) == 1
    assert sum(l.count("-.-") for l in lines) == 1


def test_vm_global_mermaid_golden(vm):
    assert to_mermaid(vm) + "\n" == (GOLDEN / "vending.global.mmd").read_text(encoding="utf-8")


def test_vm_global_dot_golden(vm):
    assert to_dot(vm) + "\n" == (GOLDEN / "vending.global.dot").read_text(encoding="utf-8")


def test_vm_local_view_initial(vm):
    text = to_mermaid(vm, at=initial_configuration(vm))
    lines = text.splitlines()
    # all states, all four (active) ground edges as direct arrows, no hypers
    assert sum(1 for l in lines if "([" in l) == 3
    assert sum(1 for l in lines if "-->|" in l) == 4
    assert ":::current" in text
    current = next(l for l in lines if ":::current" in l)
    assert current.strip().startswith("S2")  # Insert is third in sorted state order
    assert "--x" not in text and "--o" not in text


def test_local_view_drops_deactivated_edges(vm):
    after = step(initial_configuration(vm), "e1", vm).next
    text = to_mermaid(vm, at=after)
    assert sum(1 for l in text.splitlines() if "-->|" in l) == 2
    assert '"1eur"' not in text


def test_empty_model_diagram():
    g = parse("rg X { init A; }").primary
    assert to_mermaid(g) == 'flowchart LR\n  S0(["A"])'


def test_diagram_determinism_and_dispatch(vm):
    assert to_diagram(vm) == to_mermaid(vm)
    assert to_diagram(vm, fmt="dot") == to_dot(vm)
    assert to_diagram(vm) == to_diagram(vm)
    with pytest.raises(ValueError):
        to_diagram(vm, fmt="svg")


def test_lts_diagrams(vm):
    lts = expand(vm)
    mm = lts_to_mermaid(lts)
    assert mm.count("-->") == 6
    assert mm.count('(["') == 7
    dot = lts_to_dot(lts)
    assert dot.count(" -> ") == 6
    assert dot.splitlines()[0] == "digraph lts {"


def test_quote_escaping_in_labels():
    g = parse('rg X { init A; e1: A --> A by "sa\\"y"; }').primary
    assert '#quot;' in to_mermaid(g)
    assert '\\"' in to_dot(g)
