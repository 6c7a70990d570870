/**
 * Browser entry point: wires the circuit builder, timeline scrubber, branch
 * explorer, display controls, and the three.js viewport to one session.
 * Everything quantum arrives pre-computed in snapshot payloads.
 */
import { WebGLRenderer } from "three";

import { BranchExplorer, branchColumns } from "./branches.js";
import { UICircuitModel } from "./circuitModel.js";
import { DisplayControls, TimelineScrubber } from "./controls.js";
import { SessionClient, Snapshot, Transport } from "./protocol.js";
import { parseSnapshot } from "./sceneModel.js";
import { Viewport } from "./viewport.js";

export interface App {
  client: SessionClient;
  model: UICircuitModel;
  controls: DisplayControls;
  scrubber: TimelineScrubber;
  branches: BranchExplorer;
  viewport: Viewport;
  present(snapshot: Snapshot): void;
  /** Push accumulated local edits through the protocol and refresh. */
  syncEdits(): Promise<Snapshot>;
}

export function createApp(transport: Transport, canvas?: HTMLCanvasElement): App {
  const client = new SessionClient(transport);
  const viewport = new Viewport(canvas ? canvas.width / canvas.height : 16 / 9);
  let renderer: WebGLRenderer | null = null;
  if (canvas && typeof window !== "undefined") {
    renderer = new WebGLRenderer({ canvas, antialias: true });
  }
  const present = (snapshot: Snapshot) => {
    const scene = parseSnapshot(snapshot);
    viewport.present(scene);
    if (renderer) renderer.render(viewport.scene, viewport.camera);
  };
  const model = new UICircuitModel(2);
  const controls = new DisplayControls(client);
  const scrubber = new TimelineScrubber(client, present);
  const branches = new BranchExplorer(client);
  return {
    client,
    model,
    controls,
    scrubber,
    branches,
    viewport,
    present,
    async syncEdits() {
      const ops = model.drainPatches();
      if (ops.length > 0) {
        await client.editCircuit(ops);
      }
      const snapshot = await client.snapshot();
      present(snapshot);
      return snapshot;
    },
  };
}

export { branchColumns };
