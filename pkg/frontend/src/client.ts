/**
 * Engine client: request correlation, single in-flight request, and a
 * protocol log so every displayed fact can be traced to one response.
 */

import type { SessionError, SessionRequest, SessionResponse } from "./protocol.js";

export interface Transport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
  close(): void;
}

export class EngineError extends Error {
  constructor(public readonly error: SessionError) {
    super(`${error.code}: ${error.message}`);
  }
}

export interface LogEntry {
  request: SessionRequest;
  response: SessionResponse;
}

export class EngineClient {
  /** Completed request/response pairs, in order. */
  readonly protocolLog: LogEntry[] = [];

  private nextId = 1;
  private queue: Promise<unknown> = Promise.resolve();
  private pending: {
    request: SessionRequest;
    resolve: (response: SessionResponse) => void;
    reject: (err: Error) => void;
  } | null = null;

  constructor(private readonly transport: Transport) {
    transport.onLine((line) => this.receive(line));
  }

  /**
   * Send one request; resolves with the result or rejects with
   * EngineError. Requests are serialized: at most one is in flight.
   */
  request<T>(op: string, payload?: Record<string, unknown>): Promise<T> {
    const run = () =>
      new Promise<SessionResponse>((resolve, reject) => {
        const request: SessionRequest = { id: this.nextId++, op, ...(payload ? { payload } : {}) };
        this.pending = { request, resolve, reject };
        this.transport.send(JSON.stringify(request));
      });
    const settled = this.queue.then(run, run);
    this.queue = settled.catch(() => undefined);
    return settled.then((response) => {
      if (!response.ok || response.error) {
        throw new EngineError(response.error ?? { code: "Unknown", message: "missing error body" });
      }
      return response.result as T;
    });
  }

  close(): void {
    this.transport.close();
  }

  private receive(line: string): void {
    if (!line.trim()) return;
    const entry = this.pending;
    if (entry === null) return; // unsolicited line; nothing waits for it
    let response: SessionResponse;
    try {
      response = JSON.parse(line) as SessionResponse;
    } catch (err) {
      this.pending = null;
      entry.reject(new Error(`engine sent unparseable line: ${line}`));
      return;
    }
    if (response.id !== entry.request.id) {
      this.pending = null;
      entry.reject(new Error(`response id ${String(response.id)} does not match request ${String(entry.request.id)}`));
      return;
    }
    this.pending = null;
    this.protocolLog.push({ request: entry.request, response });
    entry.resolve(response);
  }
}

/**
 * Browser-side transport: the same line protocol over a WebSocket (an
 * external bridge forwards lines to a local `serve` process). Selected
 * at build/boot time; node processes use the transports in
 * nodeTransport.ts instead.
 */
export class WebSocketTransport implements Transport {
  private handler: ((line: string) => void) | null = null;
  private readonly socket: WebSocket;
  private readonly backlog: string[] = [];
  private open = false;

  constructor(url: string) {
    this.socket = new WebSocket(url);
    this.socket.addEventListener("open", () => {
      this.open = true;
      for (const line of this.backlog.splice(0)) this.socket.send(line + "\n");
    });
    this.socket.addEventListener("message", (event) => {
      for (const line of String(event.data).split("\n")) {
        if (line.trim() && this.handler) this.handler(line);
      }
    });
  }

  send(line: string): void {
    if (this.open) this.socket.send(line + "\n");
    else this.backlog.push(line);
  }

  onLine(handler: (line: string) => void): void {
    this.handler = handler;
  }

  close(): void {
    this.socket.close();
  }
}
