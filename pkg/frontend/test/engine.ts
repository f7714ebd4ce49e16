/**
 * Test harness: spawn the real engine process (`serve --stdio`) from the
 * repository root and wrap it in an EngineClient.
 */

import { readFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { EngineClient } from "../src/client.js";
import { StdioEngineTransport } from "../src/nodeTransport.js";

// compiled location: frontend/dist/test/engine.js
export const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..", "..");

export function startEngine(): EngineClient {
  const python = process.env.PYTHON ?? "python3";
  const transport = new StdioEngineTransport(
    [python, "-m", "reactive_graphs.cli", "serve", "--stdio"],
    { cwd: REPO_ROOT },
  );
  return new EngineClient(transport);
}

export function fixtureText(name: string): string {
  return readFileSync(path.join(REPO_ROOT, "fixtures", name), "utf-8");
}
