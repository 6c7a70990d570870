import { describe, expect, it } from "vitest";

import { SessionClient, SessionErrorResponse } from "../src/protocol.js";
import { LoopbackTransport } from "../src/transport.js";

function loopbackClient(routes: Record<string, (params: any) => unknown>): SessionClient {
  const transport = new LoopbackTransport((request) => {
    const message = JSON.parse(request);
    const route = routes[message.method];
    if (!route) {
      return JSON.stringify({
        id: message.id,
        error: { code: "unknown_method", message: `unknown method ${message.method}` },
      });
    }
    return JSON.stringify({ id: message.id, result: route(message.params) });
  });
  return new SessionClient(transport);
}

describe("SessionClient", () => {
  it("matches responses to requests by id", async () => {
    const client = loopbackClient({
      step_to: (params) => ({ step: params.k, t: 1.0, selected: null, branches: [] }),
    });
    const [a, b] = await Promise.all([client.stepTo(1), client.stepTo(2)]);
    expect(a.step).toBe(1);
    expect(b.step).toBe(2);
  });

  it("surfaces structured errors", async () => {
    const client = loopbackClient({});
    await expect(client.request("definitely_not_a_method")).rejects.toThrowError(
      SessionErrorResponse,
    );
    await expect(client.request("definitely_not_a_method")).rejects.toMatchObject({
      code: "unknown_method",
    });
  });

  it("validates preset listings", async () => {
    const client = loopbackClient({
      list_presets: () => [
        { name: "ghz", kind: "circuit", qubit_count: 3, description: "GHZ preparation" },
      ],
    });
    const presets = await client.listPresets();
    expect(presets[0].name).toBe("ghz");
  });

  it("rejects malformed snapshots", async () => {
    const client = loopbackClient({ snapshot: () => ({ nope: true }) });
    await expect(client.snapshot()).rejects.toThrow();
  });

  it("renders zero-probability branches greyed", async () => {
    const { branchColumns } = await import("../src/branches.js");
    const columns = branchColumns({
      step: 3,
      t: 1.0,
      selected: "1",
      branches: [
        { bits: "0", outcomes: [[1, 0]], probability: 0.0, mixed: false },
        { bits: "1", outcomes: [[1, 1]], probability: 1.0, mixed: false },
      ],
    });
    expect(columns[0].greyed).toBe(true);
    expect(columns[1].greyed).toBe(false);
    expect(columns[1].selected).toBe(true);
    expect(columns[1].percent).toBe("100.0%");
  });

  it("ignores non-protocol output lines", async () => {
    const transport = new LoopbackTransport((request) => {
      const message = JSON.parse(request);
      return JSON.stringify({ id: message.id, result: { ok: true } });
    });
    const client = new SessionClient(transport);
    transport.send; // keep reference
    // a stray log line must not break pending requests
    (transport as any).handlers?.forEach?.((h: any) => h("backend: warming up"));
    const result = await client.request<{ ok: boolean }>("anything");
    expect(result.ok).toBe(true);
  });
});
