/**
 * Viewport scene model: parses snapshot payloads into renderable bead
 * geometry. Vertex positions come from the snapshot's mesh resolution and
 * the bead's layout radius; vertex colors arrive pre-evaluated from the
 * backend, so no physics happens here.
 */
import { Snapshot, BeadRecord } from "./protocol.js";

export interface CameraPreset {
  name: "top" | "oblique";
  position: [number, number, number];
  up: [number, number, number];
}

/** Matches the figure conventions: a top view and an oblique view. */
export const CAMERA_PRESETS: Record<string, CameraPreset> = {
  top: { name: "top", position: [0, 0, 14], up: [0, 1, 0] },
  oblique: { name: "oblique", position: [9, -9, 9], up: [0, 0, 1] },
};

export interface BeadGeometry {
  id: string;
  kind: string;
  label: string;
  center: [number, number, number];
  radius: number;
  /** interleaved xyz positions on the unit sphere, scaled by radius */
  positions: Float32Array;
  /** interleaved rgb in [0,1], one triple per vertex */
  colors: Float32Array;
  /** triangle indices into the vertex list */
  indices: Uint32Array;
  extendedScale: boolean;
}

export interface ArcGeometry {
  between: number[];
  thickness: number;
  endpoints: [number, number, number][];
}

export interface ViewportScene {
  qubitCount: number;
  variant: string;
  complete: boolean;
  mixed: boolean;
  beads: BeadGeometry[];
  arcs: ArcGeometry[];
}

/** Deterministic UV-sphere vertex order shared with the backend meshes. */
export function sphereVertices(rings: number, segments: number): Float32Array {
  const out = new Float32Array((rings + 1) * (segments + 1) * 3);
  let k = 0;
  for (let i = 0; i <= rings; i++) {
    const theta = (Math.PI * i) / rings;
    for (let j = 0; j <= segments; j++) {
      const phi = (2 * Math.PI * j) / segments;
      out[k++] = Math.sin(theta) * Math.cos(phi);
      out[k++] = Math.sin(theta) * Math.sin(phi);
      out[k++] = Math.cos(theta);
    }
  }
  return out;
}

export function sphereIndices(rings: number, segments: number): Uint32Array {
  const cols = segments + 1;
  const faces: number[] = [];
  for (let i = 0; i < rings; i++) {
    for (let j = 0; j < segments; j++) {
      const v00 = i * cols + j;
      const v01 = i * cols + j + 1;
      const v10 = (i + 1) * cols + j;
      const v11 = (i + 1) * cols + j + 1;
      if (i > 0) faces.push(v00, v10, v01);
      if (i < rings - 1) faces.push(v01, v10, v11);
    }
  }
  return new Uint32Array(faces);
}

export function parseSnapshot(snapshot: Snapshot): ViewportScene {
  const { rings, segments } = snapshot.meta.mesh;
  const unit = sphereVertices(rings, segments);
  const indices = sphereIndices(rings, segments);
  const beads: BeadGeometry[] = [];
  for (const record of snapshot.labels) {
    if (record.omit) continue;
    const rawColors = snapshot.colors[record.id] as number[][] | null | undefined;
    if (!rawColors) continue;
    const position = snapshot.layout.positions[record.id] ?? [0, 0, 0];
    const radius = snapshot.layout.radii[record.id] ?? 1.0;
    // channels arrive as 8-bit ints (the PLY color resolution)
    const colors = new Float32Array(rawColors.length * 3);
    for (let i = 0; i < rawColors.length; i++) {
      const rgb = rawColors[i];
      if (!Array.isArray(rgb) || rgb.length < 3) {
        throw new Error(`malformed color entry for ${record.id} at vertex ${i}`);
      }
      colors[3 * i] = rgb[0] / 255;
      colors[3 * i + 1] = rgb[1] / 255;
      colors[3 * i + 2] = rgb[2] / 255;
    }
    const positions = new Float32Array(unit.length);
    for (let i = 0; i < unit.length; i++) positions[i] = unit[i] * radius;
    beads.push({
      id: record.id,
      kind: record.kind,
      label: record.label,
      center: [position[0], position[1], position[2] ?? 0],
      radius,
      positions,
      colors,
      indices,
      extendedScale: record.extended_scale,
    });
  }
  const qubitCenters = new Map<number, [number, number, number]>();
  for (const bead of beads) {
    if (bead.kind === "Q") qubitCenters.set(Number(bead.label), bead.center);
  }
  const arcs: ArcGeometry[] = snapshot.layout.arcs.map((arc) => ({
    between: arc.between,
    thickness: arc.thickness,
    endpoints: arc.between
      .map((q) => qubitCenters.get(q))
      .filter((p): p is [number, number, number] => p !== undefined),
  }));
  return {
    qubitCount: snapshot.qubit_count,
    variant: snapshot.meta.variant,
    complete: snapshot.meta.complete,
    mixed: snapshot.meta.mixed,
    beads,
    arcs,
  };
}

/** Bead ids shown by a snapshot, for variant-toggle assertions and menus. */
export function visibleBeadKinds(snapshot: Snapshot): Map<string, BeadRecord[]> {
  const out = new Map<string, BeadRecord[]>();
  for (const record of snapshot.labels) {
    if (record.omit) continue;
    const list = out.get(record.kind) ?? [];
    list.push(record);
    out.set(record.kind, list);
  }
  return out;
}
