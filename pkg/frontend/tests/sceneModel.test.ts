import { describe, expect, it } from "vitest";

import { Snapshot, SnapshotSchema } from "../src/protocol.js";
import {
  CAMERA_PRESETS,
  parseSnapshot,
  sphereIndices,
  sphereVertices,
  visibleBeadKinds,
} from "../src/sceneModel.js";
import { buildSceneGraph } from "../src/viewport.js";

function syntheticSnapshot(): Snapshot {
  const rings = 8;
  const segments = 16;
  const vertexCount = (rings + 1) * (segments + 1);
  const red = Array.from({ length: vertexCount }, () => [255, 0, 0]);
  const blue = Array.from({ length: vertexCount }, () => [0, 0, 255]);
  return SnapshotSchema.parse({
    version: 1,
    qubit_count: 2,
    meta: {
      variant: "F",
      mode: "beads",
      scheme: "red-green-discontinuous",
      connected_scheme: "yellow-blue-discontinuous",
      plot: "sphere",
      complete: true,
      separation: "full",
      mixed: false,
      mesh: { rings, segments },
    },
    labels: [
      { id: "Q:1", kind: "Q", label: "1", omit: false, extended_scale: false },
      { id: "Q:2", kind: "Q", label: "2", omit: false, extended_scale: false },
      { id: "E:12_even", kind: "E", label: "12_even", omit: false, extended_scale: false },
      { id: "E:12_odd", kind: "E", label: "12_odd", omit: true, extended_scale: false },
    ],
    coefficients: {
      "Q:1": { "1,0": 0.5 },
      "Q:2": { "1,0": 0.5 },
      "E:12_even": { "0,0": 1.0, "2,0": 0.3 },
      "E:12_odd": { "1,0": 0.0 },
    },
    colors: {
      "Q:1": red,
      "Q:2": red,
      "E:12_even": blue,
      "E:12_odd": null,
    },
    layout: {
      positions: { "Q:1": [-1.25, 0, 0], "Q:2": [1.25, 0, 0], "E:12_even": [0, -2.5, 0],
                   "E:12_odd": [1.1, -2.5, 0] },
      norms: { "Q:1": 0.5, "Q:2": 0.5, "E:12_even": 0.8, "E:12_odd": 0 },
      radii: { "Q:1": 1, "Q:2": 1, "E:12_even": 1, "E:12_odd": 1 },
      arcs: [{ between: [1, 2], thickness: 0.8 }],
    },
  });
}

describe("sphere geometry", () => {
  it("vertex count matches the backend convention", () => {
    expect(sphereVertices(8, 16).length).toBe(153 * 3);
    const indices = sphereIndices(8, 16);
    expect(indices.length % 3).toBe(0);
    expect(Math.max(...indices)).toBeLessThan(153);
  });

  it("poles sit at the ends of the vertex list", () => {
    const v = sphereVertices(8, 16);
    expect(v[2]).toBeCloseTo(1, 12);
    expect(v[v.length - 1]).toBeCloseTo(-1, 12);
  });
});

describe("parseSnapshot", () => {
  it("renders every non-omitted bead record it receives", () => {
    const scene = parseSnapshot(syntheticSnapshot());
    expect(scene.beads.map((b) => b.id)).toEqual(["Q:1", "Q:2", "E:12_even"]);
    const bead = scene.beads[0];
    expect(bead.positions.length).toBe(153 * 3);
    expect(bead.colors.length).toBe(153 * 3);
    expect(bead.colors[0]).toBe(1);
    expect(bead.center).toEqual([-1.25, 0, 0]);
  });

  it("connects arcs to Q-bead centers", () => {
    const scene = parseSnapshot(syntheticSnapshot());
    expect(scene.arcs).toHaveLength(1);
    expect(scene.arcs[0].endpoints).toEqual([[-1.25, 0, 0], [1.25, 0, 0]]);
    expect(scene.arcs[0].thickness).toBeCloseTo(0.8);
  });

  it("groups visible beads by kind", () => {
    const kinds = visibleBeadKinds(syntheticSnapshot());
    expect([...kinds.keys()].sort()).toEqual(["E", "Q"]);
    expect(kinds.get("E")).toHaveLength(1); // the omitted odd bead is excluded
  });
});

describe("viewport graph", () => {
  it("builds a three.js group headlessly", () => {
    const scene = parseSnapshot(syntheticSnapshot());
    const group = buildSceneGraph(scene);
    const meshes = group.children.filter((c) => c.type === "Mesh");
    const lines = group.children.filter((c) => c.type === "Line");
    expect(meshes).toHaveLength(3);
    expect(lines).toHaveLength(1);
    expect(meshes.map((m) => m.name)).toContain("E:12_even");
  });

  it("provides top and oblique camera presets", () => {
    expect(CAMERA_PRESETS.top.position[2]).toBeGreaterThan(0);
    expect(CAMERA_PRESETS.oblique.position[0]).not.toBe(0);
  });
});
