/**
 * Session protocol spoken with the engine: newline-delimited JSON
 * request/response pairs. Every request gets exactly one response with
 * the same correlation id.
 */

export type RequestId = string | number;

export interface SessionRequest {
  id: RequestId;
  op: string;
  payload?: Record<string, unknown>;
}

export interface Diagnostic {
  code: string;
  subject: string;
  message: string;
  line?: number;
  column?: number;
  length?: number;
}

export interface SessionError {
  code: string;
  message: string;
  diagnostics?: Diagnostic[];
}

export interface SessionResponse {
  id: RequestId | null;
  ok: boolean;
  result?: unknown;
  error?: SessionError;
}

export interface Configuration {
  state: string;
  active: string[];
}

export interface Move {
  edge: string;
  action: string;
  target: string;
}

export interface StepEffect {
  fired: string | null;
  action: string;
  activated: string[];
  deactivated: string[];
  conflicts: string[];
  next: Configuration;
}

export interface TraceStep {
  edge: string;
  action: string;
}

export interface Trace {
  steps: TraceStep[];
  endpoint: Configuration;
}

export interface LoadResult {
  name: string;
  comparand: string | null;
  states: number;
  ground_edges: number;
  hyper_edges: number;
  config: Configuration;
  moves: Move[];
}

export interface StepResult {
  effect: StepEffect;
  config: Configuration;
  moves: Move[];
}

export interface EnabledResult {
  config: Configuration;
  moves: Move[];
}

export interface LtsDoc {
  schema: string;
  initial: number;
  truncated: boolean;
  nodes: Configuration[];
  transitions: { source: number; action: string; edge?: string; target: number }[];
}

export interface ExpandResult {
  lts: LtsDoc;
}

export interface StatsResult {
  rg_states: number;
  rg_ground_edges: number;
  rg_hyper_edges: number;
  lts_states: number;
  lts_edges: number;
}

export interface DeadlocksResult {
  count: number;
  deadlocks: { config: Configuration; trace: Trace }[];
}

export interface ConflictsResult {
  count: number;
  conflicts: { trace: Trace; fired: string; conflicting: string[] }[];
}

export interface UnreachableResult {
  states: string[];
  ground_edges: string[];
  hyper_edges: string[];
}

export interface BisimCounterexample {
  side: "left" | "right";
  action: string;
  kind: "trace" | "branching";
  trace: Trace;
}

export interface BisimResult {
  bisimilar: boolean;
  relation_size?: number;
  relation?: [Configuration, Configuration][];
  counterexample?: BisimCounterexample;
}

export interface ExportResult {
  text: string;
}
