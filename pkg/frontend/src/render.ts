/**
 * Pure text renderers for the widget panels. The DOM layer prints these
 * verbatim, which keeps every visible line assertable in tests.
 */

import type { WidgetState } from "./widgets.js";

export const DEADLOCK_BANNER = "no enabled transitions (deadlock)";
export const GREYED_OUT = "(waiting for a valid model)";

export function renderParseStatus(state: WidgetState): string[] {
  switch (state.parseStatus.kind) {
    case "idle":
      return ["no model loaded"];
    case "ok": {
      const { name, comparand } = state.parseStatus;
      return [comparand ? `parsed ${name} ~ ${comparand}` : `parsed ${name}`];
    }
    case "error":
      return state.parseStatus.diagnostics.map((d) =>
        d.line !== undefined ? `${d.line}:${d.column}: ${d.code}: ${d.message}` : `${d.code}: ${d.message}`,
      );
  }
}

export function renderStepper(state: WidgetState): string[] {
  if (state.parseStatus.kind !== "ok" || state.config === null) return [GREYED_OUT];
  const lines = [`state: ${state.config.state}`, `active: {${state.config.active.join(", ")}}`];
  if (state.lastEffect) {
    const e = state.lastEffect;
    lines.push(
      `fired ${e.fired} (${e.action}); activated: {${e.activated.join(", ")}}; ` +
        `deactivated: {${e.deactivated.join(", ")}}; conflicts: {${e.conflicts.join(", ")}}`,
    );
  }
  if (state.deadlocked) {
    lines.push(DEADLOCK_BANNER);
  } else {
    for (const move of state.enabledMoves) {
      lines.push(`${move.edge}: ${move.action} -> ${move.target}`);
    }
  }
  return lines;
}

export function renderAnalyses(state: WidgetState): string[] {
  if (state.parseStatus.kind !== "ok") return [GREYED_OUT];
  const a = state.analyses;
  if (!a.stats) return ["(press refresh to run the analyses)"];
  const lines = [
    `RG: ${a.stats.rg_states} states, ${a.stats.rg_ground_edges} ground, ${a.stats.rg_hyper_edges} hyper`,
    `${a.stats.lts_states} states, ${a.stats.lts_edges} edges`,
  ];
  if (a.truncated) lines.push("warning: expansion truncated at the state bound");
  if (a.deadlocks) {
    lines.push(a.deadlocks.count === 0 ? "no deadlocks" : `${a.deadlocks.count} deadlocks`);
    for (const d of a.deadlocks.deadlocks) {
      lines.push(`  deadlock at ${d.config.state} via ${d.trace.steps.map((s) => s.action).join(" . ") || "(initial)"}`);
    }
  }
  if (a.conflicts) {
    lines.push(a.conflicts.count === 0 ? "no contradictory effects" : `${a.conflicts.count} contradictory effects`);
  }
  if (a.unreachable) {
    const n = a.unreachable.states.length + a.unreachable.ground_edges.length + a.unreachable.hyper_edges.length;
    lines.push(n === 0 ? "everything reachable" : `${n} unreachable elements`);
  }
  return lines;
}

export function renderBisim(state: WidgetState): string[] {
  if (state.parseStatus.kind !== "ok") return [GREYED_OUT];
  if (state.parseStatus.comparand === null) return ["(add a second model after '~' to compare)"];
  const b = state.analyses.bisim;
  if (!b) return ["(press refresh to run the comparison)"];
  if (b.bisimilar) return [`bisimilar: ${b.relation_size} related configuration pairs`];
  const ce = b.counterexample!;
  const word = ce.trace.steps.map((s) => s.action).join(" . ") || "(empty trace)";
  return [`not bisimilar: after ${word}, action '${ce.action}' is available only in the ${ce.side} system`];
}
