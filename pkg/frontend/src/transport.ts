/** Transports: a child-process pipe to the backend CLI (node) and an
 * in-memory loopback used by the unit tests. */
import { spawn, ChildProcessWithoutNullStreams } from "node:child_process";

import { Transport } from "./protocol.js";

export class ProcessTransport implements Transport {
  private child: ChildProcessWithoutNullStreams;
  private handlers: ((line: string) => void)[] = [];
  private buffer = "";

  constructor(command = "beadsim", args: string[] = ["serve"]) {
    this.child = spawn(command, args, { stdio: ["pipe", "pipe", "pipe"] });
    this.child.stdout.setEncoding("utf-8");
    this.child.stdout.on("data", (chunk: string) => {
      this.buffer += chunk;
      let index;
      while ((index = this.buffer.indexOf("\n")) >= 0) {
        const line = this.buffer.slice(0, index);
        this.buffer = this.buffer.slice(index + 1);
        for (const handler of this.handlers) handler(line);
      }
    });
  }

  send(line: string): void {
    this.child.stdin.write(line);
  }

  onLine(handler: (line: string) => void): void {
    this.handlers.push(handler);
  }

  close(): void {
    this.child.stdin.end();
    this.child.kill();
  }
}

/** Loopback transport fed by a request handler; used in unit tests. */
export class LoopbackTransport implements Transport {
  private handlers: ((line: string) => void)[] = [];

  constructor(private readonly respond: (request: string) => string | Promise<string>) {}

  send(line: string): void {
    Promise.resolve(this.respond(line.trim())).then((response) => {
      for (const handler of this.handlers) handler(response);
    });
  }

  onLine(handler: (line: string) => void): void {
    this.handlers.push(handler);
  }

  close(): void {
    this.handlers = [];
  }
}
