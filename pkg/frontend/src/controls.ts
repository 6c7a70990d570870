/** Display controls and the timeline scrubber state machine. */
import { DisplayParams, SessionClient, Snapshot } from "./protocol.js";

export const VARIANTS = ["A", "B", "C", "D", "E", "F", "G", "H", "I", "J"] as const;
export type Variant = (typeof VARIANTS)[number];

export const SCHEMES = [
  "red-green-discontinuous",
  "yellow-blue-discontinuous",
  "red-green-continuous",
  "yellow-blue-continuous",
  "drops-linear",
  "red-blue-discontinuous",
  "yellow-green-discontinuous",
  "black-white-high-contrast",
  "red-green-high-contrast",
  "yellow-blue-high-contrast",
] as const;

export const MODES = ["beads", "drops", "natural"] as const;
export const PLOTS = ["sphere", "radial-magnitude", "norm-radius", "norm-volume"] as const;

export interface DisplayState {
  variant: Variant;
  scheme: (typeof SCHEMES)[number];
  mode: (typeof MODES)[number];
  plot: (typeof PLOTS)[number];
  rings: number;
  segments: number;
}

export const DEFAULT_DISPLAY: DisplayState = {
  variant: "A",
  scheme: "red-green-discontinuous",
  mode: "beads",
  plot: "sphere",
  rings: 24,
  segments: 48,
};

export class DisplayControls {
  state: DisplayState = { ...DEFAULT_DISPLAY };

  constructor(private readonly client: SessionClient) {}

  async apply(update: Partial<DisplayState>): Promise<Snapshot> {
    this.state = { ...this.state, ...update };
    const params: DisplayParams = { ...this.state };
    await this.client.setDisplay(params);
    return this.client.snapshot();
  }
}

/**
 * Timeline scrubber: serializes seek+snapshot round trips and drops stale
 * frames. Optimistic updates are forbidden for quantum state, so the
 * viewport only ever shows a snapshot the backend produced.
 */
export class TimelineScrubber {
  private inFlight = false;
  private queued: { step: number; t: number } | null = null;
  snapshotCount = 0;

  constructor(
    private readonly client: SessionClient,
    private readonly present: (snapshot: Snapshot) => void,
  ) {}

  async scrubTo(step: number, t: number): Promise<void> {
    this.queued = { step, t };
    if (this.inFlight) return;
    this.inFlight = true;
    try {
      while (this.queued) {
        const target = this.queued;
        this.queued = null;
        // pipelined: the backend serializes requests in order, so the seek
        // and its snapshot share one round trip
        const seekDone = this.client.seek(target.step, target.t);
        const snapshotDone = this.client.snapshot();
        await seekDone;
        const snapshot = await snapshotDone;
        this.snapshotCount += 1;
        this.present(snapshot);
      }
    } finally {
      this.inFlight = false;
    }
  }
}
