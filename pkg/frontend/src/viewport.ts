/**
 * three.js scene-graph assembly from parsed viewport scenes. Geometry is
 * plain buffer data, so everything here also runs headless (tests build the
 * graph without a WebGL context); the renderer itself is created by the app
 * entry point only when a canvas exists.
 */
import {
  BufferAttribute,
  BufferGeometry,
  Group,
  Line,
  LineBasicMaterial,
  Mesh,
  MeshBasicMaterial,
  Object3D,
  PerspectiveCamera,
  Scene,
  Vector3,
} from "three";

import { CAMERA_PRESETS, CameraPreset, ViewportScene } from "./sceneModel.js";

export function beadMesh(bead: {
  positions: Float32Array;
  colors: Float32Array;
  indices: Uint32Array;
  center: [number, number, number];
}): Mesh {
  const geometry = new BufferGeometry();
  geometry.setAttribute("position", new BufferAttribute(bead.positions, 3));
  geometry.setAttribute("color", new BufferAttribute(bead.colors, 3));
  geometry.setIndex(new BufferAttribute(bead.indices, 1));
  const material = new MeshBasicMaterial({ vertexColors: true });
  const mesh = new Mesh(geometry, material);
  mesh.position.set(...bead.center);
  return mesh;
}

export function arcLine(arc: { endpoints: [number, number, number][]; thickness: number }): Line {
  const points = arc.endpoints.flat();
  const geometry = new BufferGeometry();
  geometry.setAttribute("position", new BufferAttribute(new Float32Array(points), 3));
  const material = new LineBasicMaterial({ color: 0x555555 });
  const line = new Line(geometry, material);
  line.userData.thickness = arc.thickness;
  return line;
}

export function buildSceneGraph(viewport: ViewportScene): Group {
  const group = new Group();
  group.name = "beads-scene";
  for (const arc of viewport.arcs) {
    if (arc.endpoints.length >= 2) group.add(arcLine(arc));
  }
  for (const bead of viewport.beads) {
    const mesh = beadMesh(bead);
    mesh.name = bead.id;
    group.add(mesh);
  }
  return group;
}

export class Viewport {
  readonly scene = new Scene();
  readonly camera: PerspectiveCamera;
  private current: Object3D | null = null;

  constructor(aspect = 16 / 9) {
    this.camera = new PerspectiveCamera(40, aspect, 0.1, 100);
    this.setCamera("oblique");
  }

  setCamera(preset: keyof typeof CAMERA_PRESETS | CameraPreset): void {
    const cam = typeof preset === "string" ? CAMERA_PRESETS[preset] : preset;
    this.camera.position.set(...cam.position);
    this.camera.up.set(...cam.up);
    this.camera.lookAt(new Vector3(0, 0, 0));
  }

  /** Swap in the scene graph for a new snapshot; returns the group. */
  present(viewport: ViewportScene): Group {
    if (this.current) this.scene.remove(this.current);
    const group = buildSceneGraph(viewport);
    this.scene.add(group);
    this.current = group;
    return group;
  }
}
