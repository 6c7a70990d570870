/**
 * Session protocol client: newline-delimited JSON request/response over a
 * pluggable transport. The UI performs no quantum math; every number it
 * displays originates from a snapshot payload produced by the backend.
 */
import { z } from "zod";

export const BranchSchema = z.object({
  bits: z.string(),
  outcomes: z.array(z.tuple([z.number(), z.number()])),
  probability: z.number(),
  mixed: z.boolean(),
});
export type Branch = z.infer<typeof BranchSchema>;

export const BranchSummarySchema = z.object({
  step: z.number(),
  t: z.number(),
  selected: z.string().nullable(),
  branches: z.array(BranchSchema),
});
export type BranchSummary = z.infer<typeof BranchSummarySchema>;

export const BeadRecordSchema = z.object({
  id: z.string(),
  kind: z.string(),
  label: z.string(),
  omit: z.boolean(),
  extended_scale: z.boolean(),
});
export type BeadRecord = z.infer<typeof BeadRecordSchema>;

export const SnapshotSchema = z.object({
  version: z.number(),
  qubit_count: z.number(),
  meta: z.object({
    variant: z.string(),
    mode: z.string(),
    scheme: z.string(),
    connected_scheme: z.string(),
    plot: z.string(),
    complete: z.boolean(),
    separation: z.string(),
    mixed: z.boolean(),
    mesh: z.object({ rings: z.number(), segments: z.number() }),
  }),
  labels: z.array(BeadRecordSchema),
  coefficients: z.record(z.string(), z.record(z.string(), z.number())),
  // colors are large (vertices x rgb); validated shallowly for throughput
  colors: z.record(z.string(), z.array(z.unknown()).nullable()),
  layout: z.object({
    positions: z.record(z.string(), z.array(z.number())),
    norms: z.record(z.string(), z.number()),
    radii: z.record(z.string(), z.number()),
    arcs: z.array(z.object({ between: z.array(z.number()), thickness: z.number() })),
  }),
  branches: z.array(BranchSchema).optional(),
  position: z.object({ step: z.number(), t: z.number() }).optional(),
});
export type Snapshot = z.infer<typeof SnapshotSchema>;

export const PresetInfoSchema = z.object({
  name: z.string(),
  kind: z.string(),
  qubit_count: z.number(),
  description: z.string(),
});
export type PresetInfo = z.infer<typeof PresetInfoSchema>;

export interface ProtocolError {
  code: string;
  message: string;
}

export class SessionErrorResponse extends Error {
  constructor(public readonly code: string, message: string) {
    super(message);
  }
}

/** Transport delivering one JSON response line per request line. */
export interface Transport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
  close(): void;
}

interface Pending {
  resolve: (value: unknown) => void;
  reject: (err: Error) => void;
}

export interface DisplayParams {
  variant?: string;
  scheme?: string;
  connected_scheme?: string;
  mode?: string;
  plot?: string;
  rings?: number;
  segments?: number;
}

export class SessionClient {
  private nextId = 1;
  private pending = new Map<number, Pending>();

  constructor(private readonly transport: Transport) {
    transport.onLine((line) => this.dispatch(line));
  }

  private dispatch(line: string): void {
    if (!line.trim()) return;
    let message: { id?: number; result?: unknown; error?: ProtocolError };
    try {
      message = JSON.parse(line);
    } catch {
      return; // not a protocol line (e.g. backend logging)
    }
    const waiting = message.id === undefined ? undefined : this.pending.get(message.id);
    if (!waiting) return;
    this.pending.delete(message.id!);
    if (message.error) {
      waiting.reject(new SessionErrorResponse(message.error.code, message.error.message));
    } else {
      waiting.resolve(message.result);
    }
  }

  request<T = unknown>(method: string, params?: Record<string, unknown>): Promise<T> {
    const id = this.nextId++;
    const line = JSON.stringify({ id, method, params: params ?? {} });
    return new Promise<T>((resolve, reject) => {
      this.pending.set(id, { resolve: resolve as (v: unknown) => void, reject });
      this.transport.send(line + "\n");
    });
  }

  async listPresets(): Promise<PresetInfo[]> {
    const raw = await this.request<unknown>("list_presets");
    return z.array(PresetInfoSchema).parse(raw);
  }

  loadPreset(name: string): Promise<{ qubit_count: number; step_count: number }> {
    return this.request("load_circuit", { preset: name });
  }

  loadDocument(document: unknown): Promise<{ qubit_count: number; step_count: number }> {
    return this.request("load_circuit", { document });
  }

  async stepTo(k: number): Promise<BranchSummary> {
    return BranchSummarySchema.parse(await this.request("step_to", { k }));
  }

  async seek(k: number, t: number): Promise<BranchSummary> {
    return BranchSummarySchema.parse(await this.request("seek", { k, t }));
  }

  async selectBranch(bits: string | null): Promise<BranchSummary> {
    return BranchSummarySchema.parse(await this.request("select_branch", { bits }));
  }

  setDisplay(params: DisplayParams): Promise<unknown> {
    return this.request("set_display", { ...params });
  }

  async snapshot(params?: { rings?: number; segments?: number }): Promise<Snapshot> {
    return SnapshotSchema.parse(await this.request("snapshot", { ...params }));
  }

  editCircuit(ops: unknown[]): Promise<{ document: unknown }> {
    return this.request("edit_circuit", { ops });
  }

  measureNow(qubit: number, direction: [number, number, number]): Promise<BranchSummary> {
    return this.request("measure_now", { qubit, direction });
  }

  exportTo(what: string, path: string): Promise<{ written: string[] }> {
    return this.request("export", { what, path });
  }

  close(): void {
    this.transport.close();
  }
}
