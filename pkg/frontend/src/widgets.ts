/**
 * Widget state and the operations behind the interactive tool: load or
 * pick a model, step the semantics move by move, and refresh the
 * analysis panels.
 *
 * The controller never computes semantics locally: every field of the
 * state is copied verbatim from one engine response, and `provenance`
 * records which protocol-log entry produced it. In particular the
 * displayed enabled moves are always the engine's answer for the
 * current configuration.
 */

import { EngineClient, EngineError } from "./client.js";
import { EXAMPLES } from "./examples.js";
import type {
  BisimResult,
  Configuration,
  ConflictsResult,
  DeadlocksResult,
  Diagnostic,
  EnabledResult,
  ExpandResult,
  ExportResult,
  LoadResult,
  Move,
  StatsResult,
  StepEffect,
  StepResult,
  UnreachableResult,
} from "./protocol.js";

export type WidgetName =
  | "editor"
  | "globalView"
  | "localView"
  | "runSemantics"
  | "generatedLts"
  | "statistics"
  | "analyses"
  | "bisimulation";

export type ParseStatus =
  | { kind: "idle" }
  | { kind: "ok"; name: string; comparand: string | null }
  | { kind: "error"; diagnostics: Diagnostic[] };

export interface AnalysesState {
  stats: StatsResult | null;
  truncated: boolean;
  deadlocks: DeadlocksResult | null;
  conflicts: ConflictsResult | null;
  unreachable: UnreachableResult | null;
  bisim: BisimResult | null;
}

export interface WidgetState {
  source: string;
  parseStatus: ParseStatus;
  config: Configuration | null;
  enabledMoves: Move[];
  lastEffect: StepEffect | null;
  deadlocked: boolean;
  globalDiagram: string | null;
  localDiagram: string | null;
  analyses: AnalysesState;
  collapsed: Record<WidgetName, boolean>;
  /** state field -> protocol log index of the response it came from */
  provenance: Record<string, number>;
}

const ALL_WIDGETS: WidgetName[] = [
  "editor",
  "globalView",
  "localView",
  "runSemantics",
  "generatedLts",
  "statistics",
  "analyses",
  "bisimulation",
];

function emptyAnalyses(): AnalysesState {
  return { stats: null, truncated: false, deadlocks: null, conflicts: null, unreachable: null, bisim: null };
}

export function initialWidgetState(): WidgetState {
  const collapsed = {} as Record<WidgetName, boolean>;
  for (const w of ALL_WIDGETS) collapsed[w] = w === "globalView";
  return {
    source: "",
    parseStatus: { kind: "idle" },
    config: null,
    enabledMoves: [],
    lastEffect: null,
    deadlocked: false,
    globalDiagram: null,
    localDiagram: null,
    analyses: emptyAnalyses(),
    collapsed,
    provenance: {},
  };
}

export class WidgetController {
  state: WidgetState = initialWidgetState();

  constructor(private readonly client: EngineClient) {}

  get log() {
    return this.client.protocolLog;
  }

  private stamp(field: string): void {
    this.state.provenance[field] = this.client.protocolLog.length - 1;
  }

  private applyConfigAndMoves(result: { config: Configuration; moves: Move[] }): void {
    this.state.config = result.config;
    this.state.enabledMoves = result.moves;
    this.state.deadlocked = result.moves.length === 0;
    this.stamp("config");
    this.stamp("enabledMoves");
  }

  /** Load source text into the session; widgets reset to the new model. */
  async loadSource(source: string): Promise<void> {
    this.state.source = source;
    try {
      const result = await this.client.request<LoadResult>("load", { source });
      this.state.parseStatus = { kind: "ok", name: result.name, comparand: result.comparand };
      this.stamp("parseStatus");
      this.state.lastEffect = null;
      this.state.analyses = emptyAnalyses();
      this.state.globalDiagram = null;
      this.state.localDiagram = null;
      this.applyConfigAndMoves(result);
    } catch (err) {
      if (err instanceof EngineError && err.error.code === "ParseError") {
        // other widgets grey out: they keep no stale facts around
        this.state.parseStatus = { kind: "error", diagnostics: err.error.diagnostics ?? [] };
        this.state.config = null;
        this.state.enabledMoves = [];
        this.state.deadlocked = false;
        this.state.lastEffect = null;
        this.state.analyses = emptyAnalyses();
        this.state.globalDiagram = null;
        this.state.localDiagram = null;
        return;
      }
      throw err;
    }
  }

  /** Load one of the bundled examples by its menu key. */
  async selectExample(key: string): Promise<void> {
    const example = EXAMPLES[key];
    if (!example) throw new Error(`no bundled example named ${JSON.stringify(key)}`);
    await this.loadSource(example.source);
  }

  /**
   * Fire one of the displayed moves. The move must be among the
   * currently displayed enabled moves; on an engine error the view
   * keeps the last good state.
   */
  async stepMove(edge: string): Promise<StepEffect> {
    if (!this.state.enabledMoves.some((m) => m.edge === edge)) {
      throw new Error(`move ${edge} is not among the displayed enabled moves`);
    }
    const result = await this.client.request<StepResult>("step", { edge });
    this.state.lastEffect = result.effect;
    this.stamp("lastEffect");
    this.applyConfigAndMoves(result);
    return result.effect;
  }

  async reset(): Promise<void> {
    const result = await this.client.request<EnabledResult>("reset", {});
    this.state.lastEffect = null;
    this.applyConfigAndMoves(result);
  }

  async refreshDiagrams(): Promise<void> {
    const global = await this.client.request<ExportResult>("export", {
      what: "diagram",
      view: "global",
      format: "mermaid",
    });
    this.state.globalDiagram = global.text;
    this.stamp("globalDiagram");
    const local = await this.client.request<ExportResult>("export", {
      what: "diagram",
      view: "local",
      format: "mermaid",
    });
    this.state.localDiagram = local.text;
    this.stamp("localDiagram");
  }

  /** Refresh the LTS, statistics, deadlock/conflict/unreachable panels. */
  async refreshAnalyses(maxStates = 10_000): Promise<void> {
    const expand = await this.client.request<ExpandResult>("expand", { max_states: maxStates });
    this.state.analyses.truncated = expand.lts.truncated;
    this.stamp("analyses.truncated");
    this.state.analyses.stats = await this.client.request<StatsResult>("stats", {});
    this.stamp("analyses.stats");
    this.state.analyses.deadlocks = await this.client.request<DeadlocksResult>("deadlocks", {});
    this.stamp("analyses.deadlocks");
    this.state.analyses.conflicts = await this.client.request<ConflictsResult>("conflicts", {});
    this.stamp("analyses.conflicts");
    this.state.analyses.unreachable = await this.client.request<UnreachableResult>("unreachable", {});
    this.stamp("analyses.unreachable");
    if (this.state.parseStatus.kind === "ok" && this.state.parseStatus.comparand !== null) {
      this.state.analyses.bisim = await this.client.request<BisimResult>("bisim", {});
      this.stamp("analyses.bisim");
    } else {
      this.state.analyses.bisim = null;
    }
  }

  toggle(widget: WidgetName): void {
    this.state.collapsed[widget] = !this.state.collapsed[widget];
  }
}
