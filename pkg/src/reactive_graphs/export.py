"""Serialization: canonical JSON interchange plus diagram markup.

JSON is the lossless format shared with the session protocol; diagrams
come in two structurally equivalent flavours (mermaid and DOT). Diagram
output follows the visual language of the graphical notation: every
ground edge is drawn through an action-label node so hyper edges can
point from edge to edge; activating and deactivating hyper links use
distinct arrow tips, and inactive edges are dashed.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from typing import Any

from .dsl import ParsedInput
from .expansion import InducedLts
from .model import (
    Configuration,
    Ground,
    Hyper,
    OFF,
    ON,
    ReactiveGraph,
    validate,
)
from .products import ProductConfiguration, ProductMove

MODEL_SCHEMA_ID = "reactive-graph@1"
LTS_SCHEMA_ID = "induced-lts@1"
PARSED_SCHEMA_ID = "parsed-input@1"

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(-[A-Za-z0-9_]+)*$")


class SchemaError(Exception):
    """A JSON document does not match the model schema; ``path`` is a
    JSON pointer to the offending location."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
        self.message = message


def model_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schemas/reactive-graph.schema.json").read_text())


def lts_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schemas/induced-lts.schema.json").read_text())


def model_to_dict(g: ReactiveGraph) -> dict:
    edges: dict[str, dict] = {}
    for e in sorted(g.detail):
        d = g.detail[e]
        if isinstance(d, Ground):
            edges[e] = {"kind": "ground", "source": d.source, "action": d.action, "target": d.target}
        else:
            edges[e] = {"kind": "hyper", "source": d.source, "target": d.target, "polarity": d.polarity}
    return {
        "schema": MODEL_SCHEMA_ID,
        "name": g.name,
        "states": sorted(g.states),
        "actions": sorted(g.actions),
        "init": g.init,
        "active": sorted(g.active0),
        "edges": edges,
    }


def _config_to_dict(c) -> dict:
    if isinstance(c, ProductConfiguration):
        return {"left": _config_to_dict(c.left), "right": _config_to_dict(c.right)}
    return {"state": c.state, "active": sorted(c.active)}


def _witness_to_dict(w) -> dict:
    if isinstance(w, ProductMove):
        return {"move": {"action": w.action, "left_edge": w.left_edge, "right_edge": w.right_edge}}
    return {"edge": w}


def lts_to_dict(lts: InducedLts) -> dict:
    index = lts.index
    return {
        "schema": LTS_SCHEMA_ID,
        "initial": index[lts.initial],
        "truncated": lts.truncated,
        "nodes": [_config_to_dict(n) for n in lts.nodes],
        "transitions": [
            {"source": index[s], "action": a, "target": index[t], **_witness_to_dict(w)}
            for s, a, w, t in lts.transitions
        ],
    }


def to_json(obj) -> str:
    """Canonical JSON text (sorted keys, two-space indent) for a model,
    an induced LTS, or a whole parsed input."""
    if isinstance(obj, ReactiveGraph):
        doc: Any = model_to_dict(obj)
    elif isinstance(obj, InducedLts):
        doc = lts_to_dict(obj)
    elif isinstance(obj, ParsedInput):
        doc = {
            "schema": PARSED_SCHEMA_ID,
            "primary": model_to_dict(obj.primary),
            "comparand": model_to_dict(obj.comparand) if obj.comparand is not None else None,
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, indent=2, sort_keys=True)


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(path, message)


def _ident(value, path: str) -> str:
    _expect(isinstance(value, str), path, "expected a string")
    _expect(_IDENT.match(value) is not None, path, f"{value!r} is not a valid identifier")
    return value


def from_json(text: str) -> ReactiveGraph:
    """Parse canonical model JSON back into a validated ReactiveGraph."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"not valid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "", "expected an object")
    _expect("schema" in doc, "/schema", "missing")
    _expect(doc["schema"] == MODEL_SCHEMA_ID, "/schema", f"expected {MODEL_SCHEMA_ID!r}")
    for key in ("name", "states", "actions", "init", "active", "edges"):
        _expect(key in doc, f"/{key}", "missing")
    name = _ident(doc["name"], "/name")
    _expect(isinstance(doc["states"], list), "/states", "expected an array")
    states = []
    for i, s in enumerate(doc["states"]):
        states.append(_ident(s, f"/states/{i}"))
    _expect(len(set(states)) == len(states), "/states", "duplicate state")
    _expect(isinstance(doc["actions"], list), "/actions", "expected an array")
    actions = []
    for i, a in enumerate(doc["actions"]):
        _expect(isinstance(a, str), f"/actions/{i}", "expected a string")
        actions.append(a)
    init = _ident(doc["init"], "/init")
    _expect(init in states, "/init", f"{init!r} is not a declared state")
    _expect(isinstance(doc["edges"], dict), "/edges", "expected an object")
    detail: dict = {}
    seen: dict = {}
    for e in sorted(doc["edges"]):
        path = f"/edges/{e}"
        _ident(e, path)
        entry = doc["edges"][e]
        _expect(isinstance(entry, dict), path, "expected an object")
        kind = entry.get("kind")
        _expect(kind in ("ground", "hyper"), f"{path}/kind", "expected 'ground' or 'hyper'")
        if kind == "ground":
            for key in ("source", "action", "target"):
                _expect(key in entry, f"{path}/{key}", "missing")
            _expect(entry["source"] in states, f"{path}/source", f"{entry['source']!r} is not a declared state")
            _expect(entry["target"] in states, f"{path}/target", f"{entry['target']!r} is not a declared state")
            _expect(isinstance(entry["action"], str), f"{path}/action", "expected a string")
            _expect(entry["action"] in actions, f"{path}/action", f"{entry['action']!r} is not a declared action")
            d = Ground(entry["source"], entry["action"], entry["target"])
        else:
            for key in ("source", "target", "polarity"):
                _expect(key in entry, f"{path}/{key}", "missing")
            _expect(entry["polarity"] in (ON, OFF), f"{path}/polarity", "expected 'on' or 'off'")
            _expect(entry["source"] in doc["edges"], f"{path}/source", f"unknown edge {entry['source']!r}")
            _expect(entry["target"] in doc["edges"], f"{path}/target", f"unknown edge {entry['target']!r}")
            d = Hyper(entry["source"], entry["target"], entry["polarity"])
        _expect(d not in seen, path, f"duplicates edge {seen.get(d)!r}")
        seen[d] = e
        detail[e] = d
    _expect(isinstance(doc["active"], list), "/active", "expected an array")
    active = []
    for i, e in enumerate(doc["active"]):
        _expect(isinstance(e, str) and e in detail, f"/active/{i}", f"{e!r} is not a declared edge")
        active.append(e)
    graph = ReactiveGraph(
        name, frozenset(states), frozenset(actions), detail, init, frozenset(active)
    )
    return validate(graph)


# --- diagrams -------------------------------------------------------------

def _mermaid_label(text: str) -> str:
    return text.replace('"', "#quot;")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _diagram_plan(g: ReactiveGraph):
    """Node naming shared by both diagram backends.

    States get S-ids, ground edges get E-label nodes. A hyper edge that
    is an endpoint of another hyper edge gets a J-junction node so the
    edge-to-edge arrow has something to attach to; other hyper edges are
    drawn as a single arrow between their endpoints' nodes.
    """
    states = {s: f"S{i}" for i, s in enumerate(sorted(g.states))}
    grounds = {e: f"E{i}" for i, e in enumerate(g.ground_ids())}
    hyper_endpoints = set()
    for e in g.hyper_ids():
        d = g.detail[e]
        for ref in (d.source, d.target):
            if isinstance(g.detail[ref], Hyper):
                hyper_endpoints.add(ref)
    junctions = {e: f"J{i}" for i, e in enumerate(sorted(hyper_endpoints))}
    node_of = {**grounds, **junctions}
    return states, grounds, junctions, node_of


def to_mermaid(g: ReactiveGraph, at: "Configuration | None" = None) -> str:
    """Mermaid flowchart; global structure view, or the simplified local
    view (active ground edges only, current state marked) when ``at`` is
    given."""
    lines = ["flowchart LR"]
    states, grounds, junctions, node_of = _diagram_plan(g)
    if at is not None:
        for s in sorted(g.states):
            lines.append(f'  {states[s]}(["{_mermaid_label(s)}"])')
        lines.append(f"  {states[at.state]}:::current")
        for e in g.ground_ids():
            d = g.detail[e]
            if e in at.active:
                lines.append(f'  {states[d.source]} -->|"{_mermaid_label(d.action)}"| {states[d.target]}')
        lines.append("  classDef current stroke-width:3px,stroke:#e67e22")
        return "\n".join(lines)
    for s in sorted(g.states):
        lines.append(f'  {states[s]}(["{_mermaid_label(s)}"])')
    for e in g.ground_ids():
        lines.append(f'  {grounds[e]}["{_mermaid_label(g.detail[e].action)}"]')
    for e in sorted(junctions):
        lines.append(f'  {junctions[e]}(("{_mermaid_label(e)}"))')
    for e in g.ground_ids():
        d = g.detail[e]
        link, arrow = ("---", "-->") if e in g.active0 else ("-.-", "-.->")
        lines.append(f"  {states[d.source]} {link} {grounds[e]}")
        lines.append(f"  {grounds[e]} {arrow} {states[d.target]}")
    for e in g.hyper_ids():
        d = g.detail[e]
        tip = "o" if d.polarity == ON else "x"
        arrow = f"--{tip}" if e in g.active0 else f"-.-{tip}"
        if e in junctions:
            lines.append(f"  {node_of[d.source]} --- {junctions[e]}")
            lines.append(f"  {junctions[e]} {arrow} {node_of[d.target]}")
        else:
            lines.append(f"  {node_of[d.source]} {arrow} {node_of[d.target]}")
    return "\n".join(lines)


def to_dot(g: ReactiveGraph, at: "Configuration | None" = None) -> str:
    """DOT digraph, structurally equivalent to the mermaid output."""
    name = _dot_quote(g.name)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    states, grounds, junctions, node_of = _diagram_plan(g)
    if at is not None:
        for s in sorted(g.states):
            style = ', penwidth=3, color="#e67e22"' if s == at.state else ""
            lines.append(f'  {states[s]} [label={_dot_quote(s)}, shape=box, style=rounded{style}];')
        for e in g.ground_ids():
            d = g.detail[e]
            if e in at.active:
                lines.append(f"  {states[d.source]} -> {states[d.target]} [label={_dot_quote(d.action)}];")
        lines.append("}")
        return "\n".join(lines)
    for s in sorted(g.states):
        lines.append(f"  {states[s]} [label={_dot_quote(s)}, shape=box, style=rounded];")
    for e in g.ground_ids():
        lines.append(f'  {grounds[e]} [label={_dot_quote(g.detail[e].action)}, shape=box, style=filled, fillcolor=lightgray];')
    for e in sorted(junctions):
        lines.append(f"  {junctions[e]} [label={_dot_quote(e)}, shape=circle, fontsize=10];")
    for e in g.ground_ids():
        d = g.detail[e]
        dashed = "" if e in g.active0 else ", style=dashed"
        lines.append(f"  {states[d.source]} -> {grounds[e]} [arrowhead=none{dashed}];")
        lines.append(f"  {grounds[e]} -> {states[d.target]} [arrowhead=normal{dashed}];")
    for e in g.hyper_ids():
        d = g.detail[e]
        tip = "odot" if d.polarity == ON else "box"
        dashed = "" if e in g.active0 else ", style=dashed"
        if e in junctions:
            lines.append(f"  {node_of[d.source]} -> {junctions[e]} [arrowhead=none];")
            lines.append(f"  {junctions[e]} -> {node_of[d.target]} [arrowhead={tip}, color=red{dashed}];")
        else:
            lines.append(f"  {node_of[d.source]} -> {node_of[d.target]} [arrowhead={tip}, color=red{dashed}];")
    lines.append("}")
    return "\n".join(lines)


def to_diagram(g: ReactiveGraph, at: "Configuration | None" = None, fmt: str = "mermaid") -> str:
    """Diagram markup for ``g``: the global structure view, or the local
    view at a configuration when ``at`` is given."""
    if fmt == "mermaid":
        return to_mermaid(g, at)
    if fmt == "dot":
        return to_dot(g, at)
    raise ValueError(f"unknown diagram format {fmt!r}")


def _node_label(node) -> str:
    if isinstance(node, ProductConfiguration):
        return f"{node.left.state} || {node.right.state}"
    return node.state


def lts_to_mermaid(lts: InducedLts) -> str:
    """The induced LTS as a mermaid flowchart (nodes carry state names)."""
    lines = ["flowchart LR"]
    for i, node in enumerate(lts.nodes):
        lines.append(f'  N{i}(["{_mermaid_label(_node_label(node))}"])')
    index = lts.index
    for s, a, _w, t in lts.transitions:
        lines.append(f'  N{index[s]} -->|"{_mermaid_label(a)}"| N{index[t]}')
    return "\n".join(lines)


def lts_to_dot(lts: InducedLts) -> str:
    lines = ["digraph lts {", "  rankdir=LR;"]
    for i, node in enumerate(lts.nodes):
        shape = ", penwidth=2" if i == lts.index[lts.initial] else ""
        lines.append(f"  N{i} [label={_dot_quote(_node_label(node))}, shape=box, style=rounded{shape}];")
    index = lts.index
    for s, a, _w, t in lts.transitions:
        lines.append(f"  N{index[s]} -> N{index[t]} [label={_dot_quote(a)}];")
    lines.append("}")
    return "\n".join(lines)
