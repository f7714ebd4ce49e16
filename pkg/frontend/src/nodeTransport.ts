/**
 * Node-only transports: spawn the engine on stdio, or dial a local
 * socket. Never imported by the browser bundle.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { connect, type Socket } from "node:net";

import type { Transport } from "./client.js";

function splitLines(handler: (line: string) => void): (chunk: Buffer | string) => void {
  let buffer = "";
  return (chunk) => {
    buffer += chunk.toString();
    let at: number;
    while ((at = buffer.indexOf("\n")) >= 0) {
      const line = buffer.slice(0, at);
      buffer = buffer.slice(at + 1);
      if (line.trim()) handler(line);
    }
  };
}

export class StdioEngineTransport implements Transport {
  private readonly proc: ChildProcess;
  private handler: ((line: string) => void) | null = null;

  constructor(command: string[], options: { cwd?: string } = {}) {
    const [cmd, ...args] = command;
    this.proc = spawn(cmd, args, { cwd: options.cwd, stdio: ["pipe", "pipe", "inherit"] });
    this.proc.stdout!.on(
      "data",
      splitLines((line) => {
        if (this.handler) this.handler(line);
      }),
    );
  }

  send(line: string): void {
    this.proc.stdin!.write(line + "\n");
  }

  onLine(handler: (line: string) => void): void {
    this.handler = handler;
  }

  close(): void {
    this.proc.stdin!.end();
    this.proc.kill();
  }
}

export class TcpEngineTransport implements Transport {
  private readonly socket: Socket;
  private handler: ((line: string) => void) | null = null;

  constructor(port: number, host = "127.0.0.1") {
    this.socket = connect(port, host);
    this.socket.on(
      "data",
      splitLines((line) => {
        if (this.handler) this.handler(line);
      }),
    );
  }

  send(line: string): void {
    this.socket.write(line + "\n");
  }

  onLine(handler: (line: string) => void): void {
    this.handler = handler;
  }

  close(): void {
    this.socket.end();
  }
}
