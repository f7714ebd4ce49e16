"""Command-line front end.

Exit codes: 0 = success / property holds, 1 = property violated
(deadlock found, conflicts found, not bisimilar), 2 = usage or parse
error. Analysis findings are results, not errors: they go to stdout.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, export, service
from .dsl import ParseFailure, parse, pretty
from .expansion import expand, stats
from .model import EdgeNotEnabled, enabled, initial_configuration, step
from .products import (
    ASYNC,
    SYNC,
    InvalidIntrusions,
    IntrusionSpec,
    ProductSystem,
    parse_intrusions,
    product_enabled,
    product_expand,
)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _print_diagnostics(path: str, diagnostics) -> None:
    for d in diagnostics:
        where = f"{path}:{d.span}" if d.span is not None else path
        print(f"{where}: {d.code}: {d.message}", file=sys.stderr)


def _load(path: str):
    """Parse a model file; on failure print diagnostics and return None."""
    try:
        return parse(_read(path))
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
        return None
    except ParseFailure as exc:
        _print_diagnostics(path, exc.diagnostics)
        return None


def _cmd_check(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    names = parsed.primary.name + (f" ~ {parsed.comparand.name}" if parsed.comparand else "")
    print(f"ok: {names}")
    return 0


def _cmd_lts(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    lts = expand(parsed.primary, args.max_states)
    if args.format == "json":
        print(export.to_json(lts))
    elif args.format == "mermaid":
        print(export.lts_to_mermaid(lts))
    else:
        print(export.lts_to_dot(lts))
    if lts.truncated:
        print(f"note: truncated at {args.max_states} states", file=sys.stderr)
    return 0


def _cmd_stats(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    g = parsed.primary
    s = stats(g, expand(g))
    print(
        f"RG: {s.rg_states} states, {s.rg_ground_edges} ground, {s.rg_hyper_edges} hyper; "
        f"LTS: {s.lts_states} states, {s.lts_edges} edges"
    )
    return 0


def _format_trace(trace: analysis.Trace) -> str:
    if not trace.steps:
        return "(initial configuration)"
    return " . ".join(f"{a}[{e}]" for e, a in trace.steps)


def _cmd_analyze(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    g = parsed.primary
    run_all = not (args.deadlocks or args.conflicts or args.unreachable)
    summary = []
    details: list[str] = []
    findings = 0
    if args.deadlocks or run_all:
        deadlocks = analysis.find_deadlocks(g)
        summary.append(f"{len(deadlocks)} deadlocks")
        findings += len(deadlocks)
        for c, trace in deadlocks:
            details.append(f"deadlock at {c.state} via {_format_trace(trace)}")
    if args.conflicts or run_all:
        conflicts = analysis.find_conflicts(g)
        summary.append(f"{len(conflicts)} conflicts")
        findings += len(conflicts)
        for w in conflicts:
            details.append(
                f"conflict on {', '.join(sorted(w.conflicts))} firing {w.fired} after {_format_trace(w.trace)}"
            )
    if args.unreachable or run_all:
        states = analysis.unreachable_states(g)
        ground, hyper = analysis.unreachable_edges(g)
        summary.append(f"{len(states)} unreachable states")
        summary.append(f"{len(ground) + len(hyper)} unreachable edges")
        findings += len(states) + len(ground) + len(hyper)
        for s in sorted(states):
            details.append(f"unreachable state {s}")
        for e in sorted(ground):
            details.append(f"ground edge {e} never fires")
        for e in sorted(hyper):
            details.append(f"hyper edge {e} never triggers")
    print(", ".join(summary))
    for line in details:
        print(line)
    return 1 if findings else 0


def _cmd_bisim(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    if parsed.comparand is None:
        print(f"{args.file}: expected two models separated by '~'", file=sys.stderr)
        return 2
    result = analysis.bisimilar(parsed.primary, parsed.comparand)
    if result.bisimilar:
        print(f"bisimilar: {len(result.relation)} related configuration pairs")
        if args.show_relation:
            for a, b in sorted(result.relation, key=lambda p: (p[0].sort_key(), p[1].sort_key())):
                print(f"  {a.state} {{{', '.join(sorted(a.active))}}}  ~  {b.state} {{{', '.join(sorted(b.active))}}}")
        return 0
    ce = result.counterexample
    names = {"left": parsed.primary.name, "right": parsed.comparand.name}
    print(
        f"not bisimilar: after {_format_trace(ce.trace)}, "
        f"action {ce.action!r} is available only in {names[ce.side]} ({ce.side})"
    )
    if ce.kind == "branching":
        print("note: systems are trace-equivalent; the trace follows one play of the bisimulation game")
    return 1


def _cmd_step(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    g = parsed.primary
    config = initial_configuration(g)
    out = sys.stdout
    print(f"stepping {g.name}; enter a number or edge id, 'r' to reset, 'q' to quit", file=out)
    while True:
        moves = enabled(config, g)
        print(f"state: {config.state}  active: {{{', '.join(sorted(config.active))}}}", file=out)
        if not moves:
            print("no enabled transitions (deadlock); 'r' to reset, 'q' to quit", file=out)
        else:
            for i, (e, action, target) in enumerate(moves, start=1):
                print(f"  {i}) {e}: {action} -> {target}", file=out)
        line = sys.stdin.readline()
        if not line:
            return 0
        choice = line.strip()
        if not choice:
            continue
        if choice in ("q", "quit"):
            return 0
        if choice in ("r", "reset"):
            config = initial_configuration(g)
            continue
        edge = None
        if choice.isdigit() and 1 <= int(choice) <= len(moves):
            edge = moves[int(choice) - 1][0]
        elif any(e == choice for e, _a, _t in moves):
            edge = choice
        if edge is None:
            print(f"not an enabled move: {choice}", file=out)
            continue
        effect = step(config, edge, g)
        config = effect.next

        def fmt(edges):
            return "{" + ", ".join(sorted(edges)) + "}" if edges else "-"

        print(
            f"fired {edge} ({effect.action}); activated: {fmt(effect.activated)}; "
            f"deactivated: {fmt(effect.deactivated)}; conflicts: {fmt(effect.conflicts)}",
            file=out,
        )


def _cmd_product(args) -> int:
    left_parsed = _load(args.left)
    right_parsed = _load(args.right)
    if left_parsed is None or right_parsed is None:
        return 2
    left, right = left_parsed.primary, right_parsed.primary
    spec = IntrusionSpec.empty()
    if args.intrusions:
        try:
            spec = parse_intrusions(_read(args.intrusions), left, right)
        except OSError as exc:
            print(f"{args.intrusions}: {exc.strerror or exc}", file=sys.stderr)
            return 2
        except InvalidIntrusions as exc:
            _print_diagnostics(args.intrusions, exc.diagnostics)
            return 2
    system = ProductSystem(left, right, spec, args.mode)
    if args.expand:
        lts = product_expand(system, args.max_states)
        print(export.to_json(lts))
        if lts.truncated:
            print(f"note: truncated at {args.max_states} states", file=sys.stderr)
        return 0
    print(
        f"product {left.name} ({args.mode}) {right.name}; "
        f"intrusions: {len(spec.gamma_plus)} enables, {len(spec.gamma_minus)} disables"
    )
    for move in product_enabled(system.initial(), system):
        print(f"  {move.describe()}")
    return 0


def _cmd_pretty(args) -> int:
    parsed = _load(args.file)
    if parsed is None:
        return 2
    print(pretty(parsed.primary))
    if parsed.comparand is not None:
        print("~")
        print(pretty(parsed.comparand))
    return 0


def _cmd_serve(args) -> int:
    if args.port is not None:
        service.serve_tcp(args.port)
    else:
        service.serve_stdio()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgtool", description="Model, simulate and analyse multi-action reactive graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate a model file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("lts", help="expand the induced LTS")
    p.add_argument("file")
    p.add_argument("--max-states", type=int, default=service.DEFAULT_MAX_STATES)
    p.add_argument("--format", choices=("json", "dot", "mermaid"), default="json")
    p.set_defaults(func=_cmd_lts)

    p = sub.add_parser("stats", help="graph and LTS sizes")
    p.add_argument("file")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("analyze", help="deadlocks, conflicts, unreachable states/edges")
    p.add_argument("file")
    p.add_argument("--deadlocks", action="store_true")
    p.add_argument("--conflicts", action="store_true")
    p.add_argument("--unreachable", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bisim", help="strong bisimulation between the two '~'-separated models")
    p.add_argument("file")
    p.add_argument("--show-relation", action="store_true")
    p.set_defaults(func=_cmd_bisim)

    p = sub.add_parser("step", help="interactive stepper")
    p.add_argument("file")
    p.set_defaults(func=_cmd_step)

    p = sub.add_parser("product", help="compose two models")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--intrusions", metavar="FILE")
    p.add_argument("--mode", choices=(ASYNC, SYNC), default=ASYNC)
    p.add_argument("--expand", action="store_true")
    p.add_argument("--max-states", type=int, default=service.DEFAULT_MAX_STATES)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("pretty", help="canonical form of a model file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_pretty)

    p = sub.add_parser("serve", help="run the session service")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--stdio", action="store_true", default=True)
    group.add_argument("--port", type=int, default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except EdgeNotEnabled as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
