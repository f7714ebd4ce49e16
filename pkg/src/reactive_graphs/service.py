"""Stateful session service: every engine operation behind a JSON protocol.

One session holds one loaded model (plus optional comparand), its current
configuration, and optionally one loaded product. Requests are objects
``{"id": ..., "op": ..., "payload": {...}}``; each gets exactly one
response ``{"id": ..., "ok": true, "result": ...}`` or
``{"id": ..., "ok": false, "error": {"code": ..., "message": ...}}``.
Transported as newline-delimited JSON over stdio or a local socket.
"""

from __future__ import annotations

import json
import socketserver
import sys
from typing import Any

from . import analysis, export, products
from .dsl import ParseFailure, parse
from .expansion import expand, stats
from .model import (
    Configuration,
    EdgeNotEnabled,
    ModelError,
    ReactiveGraph,
    UnknownEdge,
    enabled,
    initial_configuration,
    step,
)
from .products import (
    InvalidIntrusions,
    IntrusionSpec,
    MoveNotEnabled,
    ProductMove,
    ProductSystem,
    parse_intrusions,
    product_enabled,
    product_step,
)

DEFAULT_MAX_STATES = 10_000


class ServiceError(Exception):
    def __init__(self, code: str, message: str, **extra: Any):
        super().__init__(message)
        self.code = code
        self.extra = extra


def _config_dict(c) -> dict:
    return export._config_to_dict(c)


def _moves_list(moves) -> list[dict]:
    return [{"edge": e, "action": a, "target": t} for e, a, t in moves]


def _product_moves_list(moves: list[ProductMove]) -> list[dict]:
    return [{"action": m.action, "left_edge": m.left_edge, "right_edge": m.right_edge} for m in moves]


def _effect_dict(effect) -> dict:
    return {
        "fired": effect.fired,
        "action": effect.action,
        "activated": sorted(effect.activated),
        "deactivated": sorted(effect.deactivated),
        "conflicts": sorted(effect.conflicts),
        "next": _config_dict(effect.next),
    }


def _trace_dict(trace: analysis.Trace) -> dict:
    return {
        "steps": [{"edge": e, "action": a} for e, a in trace.steps],
        "endpoint": _config_dict(trace.endpoint),
    }


def _diag_list(diagnostics) -> list[dict]:
    out = []
    for d in diagnostics:
        entry = {"code": d.code, "subject": d.subject, "message": d.message}
        if d.span is not None:
            entry["line"] = d.span.line
            entry["column"] = d.span.column
            entry["length"] = d.span.length
        out.append(entry)
    return out


class Session:
    """One logical thread of engine state; requests handled strictly in order."""

    def __init__(self) -> None:
        self._graph: ReactiveGraph | None = None
        self._comparand: ReactiveGraph | None = None
        self._config: Configuration | None = None
        self._product: ProductSystem | None = None
        self._product_config = None

    # -- helpers

    def _require_graph(self) -> ReactiveGraph:
        if self._graph is None:
            raise ServiceError("NoModel", "no model loaded; send 'load' first")
        return self._graph

    def _require_product(self) -> ProductSystem:
        if self._product is None:
            raise ServiceError("NoProduct", "no product loaded; send 'product-load' first")
        return self._product

    def _state_result(self) -> dict:
        g = self._require_graph()
        return {
            "config": _config_dict(self._config),
            "moves": _moves_list(enabled(self._config, g)),
        }

    def _product_state_result(self) -> dict:
        sys_ = self._require_product()
        return {
            "config": _config_dict(self._product_config),
            "moves": _product_moves_list(product_enabled(self._product_config, sys_)),
        }

    # -- request dispatch

    def handle(self, request: Any) -> dict:
        if not isinstance(request, dict):
            return {"id": None, "ok": False, "error": {"code": "BadRequest", "message": "request must be an object"}}
        rid = request.get("id")
        op = request.get("op")
        payload = request.get("payload") or {}
        if not isinstance(payload, dict):
            return {"id": rid, "ok": False, "error": {"code": "BadRequest", "message": "payload must be an object"}}
        handler = getattr(self, "_op_" + str(op).replace("-", "_"), None)
        if not isinstance(op, str) or handler is None:
            return {"id": rid, "ok": False, "error": {"code": "UnknownOp", "message": f"unknown op {op!r}"}}
        try:
            result = handler(payload)
        except ServiceError as exc:
            return {"id": rid, "ok": False, "error": {"code": exc.code, "message": str(exc), **exc.extra}}
        except ParseFailure as exc:
            return {
                "id": rid,
                "ok": False,
                "error": {"code": "ParseError", "message": str(exc), "diagnostics": _diag_list(exc.diagnostics)},
            }
        except InvalidIntrusions as exc:
            return {
                "id": rid,
                "ok": False,
                "error": {"code": "InvalidIntrusions", "message": str(exc), "diagnostics": _diag_list(exc.diagnostics)},
            }
        except (EdgeNotEnabled, MoveNotEnabled, UnknownEdge) as exc:
            return {"id": rid, "ok": False, "error": {"code": type(exc).__name__, "message": str(exc)}}
        except ModelError as exc:
            return {"id": rid, "ok": False, "error": {"code": "ModelError", "message": str(exc)}}
        return {"id": rid, "ok": True, "result": result}

    # -- single-model ops

    def _op_load(self, payload: dict) -> dict:
        source = payload.get("source")
        if not isinstance(source, str):
            raise ServiceError("BadRequest", "'source' must be a string")
        parsed = parse(source)
        self._graph = parsed.primary
        self._comparand = parsed.comparand
        self._config = initial_configuration(self._graph)
        g = self._graph
        return {
            "name": g.name,
            "comparand": self._comparand.name if self._comparand else None,
            "states": len(g.states),
            "ground_edges": len(g.ground_ids()),
            "hyper_edges": len(g.hyper_ids()),
            **self._state_result(),
        }

    def _op_enabled(self, payload: dict) -> dict:
        self._require_graph()
        return self._state_result()

    def _op_step(self, payload: dict) -> dict:
        g = self._require_graph()
        edge = payload.get("edge")
        if not isinstance(edge, str):
            raise ServiceError("BadRequest", "'edge' must be a string")
        effect = step(self._config, edge, g)
        self._config = effect.next
        return {"effect": _effect_dict(effect), **self._state_result()}

    def _op_reset(self, payload: dict) -> dict:
        g = self._require_graph()
        self._config = initial_configuration(g)
        return self._state_result()

    def _op_expand(self, payload: dict) -> dict:
        g = self._require_graph()
        max_states = payload.get("max_states", DEFAULT_MAX_STATES)
        if max_states is not None and (not isinstance(max_states, int) or max_states < 1):
            raise ServiceError("BadRequest", "'max_states' must be a positive integer or null")
        lts = expand(g, max_states)
        return {"lts": export.lts_to_dict(lts)}

    def _op_stats(self, payload: dict) -> dict:
        g = self._require_graph()
        lts = expand(g)
        s = stats(g, lts)
        return {
            "rg_states": s.rg_states,
            "rg_ground_edges": s.rg_ground_edges,
            "rg_hyper_edges": s.rg_hyper_edges,
            "lts_states": s.lts_states,
            "lts_edges": s.lts_edges,
        }

    def _op_deadlocks(self, payload: dict) -> dict:
        g = self._require_graph()
        found = analysis.find_deadlocks(g)
        return {
            "count": len(found),
            "deadlocks": [{"config": _config_dict(c), "trace": _trace_dict(t)} for c, t in found],
        }

    def _op_conflicts(self, payload: dict) -> dict:
        g = self._require_graph()
        found = analysis.find_conflicts(g)
        return {
            "count": len(found),
            "conflicts": [
                {"trace": _trace_dict(w.trace), "fired": w.fired, "conflicting": sorted(w.conflicts)}
                for w in found
            ],
        }

    def _op_unreachable(self, payload: dict) -> dict:
        g = self._require_graph()
        states = analysis.unreachable_states(g)
        ground, hyper = analysis.unreachable_edges(g)
        return {
            "states": sorted(states),
            "ground_edges": sorted(ground),
            "hyper_edges": sorted(hyper),
        }

    def _op_bisim(self, payload: dict) -> dict:
        g = self._require_graph()
        if self._comparand is None:
            raise ServiceError("NoComparand", "loaded source has no '~' comparand")
        result = analysis.bisimilar(g, self._comparand)
        if result.bisimilar:
            pairs = sorted(result.relation, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
            return {
                "bisimilar": True,
                "relation_size": len(pairs),
                "relation": [[_config_dict(a), _config_dict(b)] for a, b in pairs],
            }
        ce = result.counterexample
        return {
            "bisimilar": False,
            "counterexample": {
                "side": ce.side,
                "action": ce.action,
                "kind": ce.kind,
                "trace": _trace_dict(ce.trace),
            },
        }

    # -- product ops

    def _op_product_load(self, payload: dict) -> dict:
        for key in ("left_source", "right_source"):
            if not isinstance(payload.get(key), str):
                raise ServiceError("BadRequest", f"'{key}' must be a string")
        mode = payload.get("mode", products.ASYNC)
        if mode not in (products.ASYNC, products.SYNC):
            raise ServiceError("BadRequest", "'mode' must be 'async' or 'sync'")
        left = parse(payload["left_source"]).primary
        right = parse(payload["right_source"]).primary
        intrusions_source = payload.get("intrusions_source")
        if intrusions_source is None:
            spec = IntrusionSpec.empty()
        elif isinstance(intrusions_source, str):
            spec = parse_intrusions(intrusions_source, left, right)
        else:
            raise ServiceError("BadRequest", "'intrusions_source' must be a string")
        self._product = ProductSystem(left, right, spec, mode)
        self._product_config = self._product.initial()
        return {
            "left": left.name,
            "right": right.name,
            "mode": mode,
            "intrusions": {"enables": len(spec.gamma_plus), "disables": len(spec.gamma_minus)},
            **self._product_state_result(),
        }

    def _op_product_enabled(self, payload: dict) -> dict:
        self._require_product()
        return self._product_state_result()

    def _op_product_step(self, payload: dict) -> dict:
        sys_ = self._require_product()
        move = payload.get("move")
        if not isinstance(move, dict) or not isinstance(move.get("action"), str):
            raise ServiceError("BadRequest", "'move' must be an object with an 'action'")
        pm = ProductMove(move["action"], move.get("left_edge"), move.get("right_edge"))
        effect = product_step(self._product_config, pm, sys_)
        self._product_config = effect.next
        return {
            "effect": {"left": _effect_dict(effect.left), "right": _effect_dict(effect.right)},
            **self._product_state_result(),
        }

    # -- export

    def _op_export(self, payload: dict) -> dict:
        g = self._require_graph()
        what = payload.get("what", "model")
        if what == "model":
            return {"text": export.to_json(g)}
        if what == "lts":
            max_states = payload.get("max_states", DEFAULT_MAX_STATES)
            return {"text": export.to_json(expand(g, max_states))}
        if what == "diagram":
            fmt = payload.get("format", "mermaid")
            if fmt not in ("mermaid", "dot"):
                raise ServiceError("BadRequest", "'format' must be 'mermaid' or 'dot'")
            view = payload.get("view", "global")
            if view == "global":
                return {"text": export.to_diagram(g, None, fmt)}
            if view == "local":
                return {"text": export.to_diagram(g, self._config, fmt)}
            raise ServiceError("BadRequest", "'view' must be 'global' or 'local'")
        raise ServiceError("BadRequest", "'what' must be 'model', 'lts' or 'diagram'")


def encode_response(response: dict) -> str:
    return json.dumps(response, sort_keys=True, separators=(",", ":"))


def handle_line(session: Session, line: str) -> str:
    """Decode one request line, dispatch it, encode the response."""
    try:
        request = json.loads(line)
    except json.JSONDecodeError as exc:
        return encode_response(
            {"id": None, "ok": False, "error": {"code": "BadRequest", "message": f"invalid JSON: {exc}"}}
        )
    return encode_response(session.handle(request))


def serve_stdio(stdin=None, stdout=None) -> None:
    """Run one session over newline-delimited JSON on stdio."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    session = Session()
    for line in stdin:
        if not line.strip():
            continue
        stdout.write(handle_line(session, line) + "\n")
        stdout.flush()


class _SessionHandler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        session = Session()
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace")
            if not line.strip():
                continue
            self.wfile.write((handle_line(session, line) + "\n").encode("utf-8"))


class SessionServer(socketserver.ThreadingTCPServer):
    """One independent session per connection, on localhost."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, port: int):
        super().__init__(("127.0.0.1", port), _SessionHandler)


def serve_tcp(port: int) -> None:
    with SessionServer(port) as server:
        host, bound_port = server.server_address
        print(f"listening on {host}:{bound_port}", flush=True)
        server.serve_forever()
