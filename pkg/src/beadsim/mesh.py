"""Colored sphere meshes and binary PLY export.

Meshes are UV spheres with deterministic vertex order: ring-major rows of
(segments + 1) vertices, poles duplicated along the seam, so vertex count is
(rings + 1) * (segments + 1).
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .beads import BeadFunction
from .colors import scheme_color, to_uint8

DEFAULT_RINGS = 64
DEFAULT_SEGMENTS = 128

PLOT_VARIANTS = ("sphere", "radial-magnitude", "norm-radius", "norm-volume")


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray = field(compare=False)  # (V, 3) float
    faces: np.ndarray = field(compare=False)     # (F, 3) int
    colors: np.ndarray | None = field(default=None, compare=False)  # (V, 3) in [0,1]

    @property
    def vertex_count(self) -> int:
        return int(self.vertices.shape[0])


def sphere_mesh(rings: int = DEFAULT_RINGS, segments: int = DEFAULT_SEGMENTS) -> Mesh:
    """Unit UV sphere; poles at θ = 0 and θ = π."""
    if rings < 8 or segments < 16:
        raise ValueError("resolution too coarse: need rings >= 8, segments >= 16")
    theta = np.linspace(0.0, np.pi, rings + 1)
    phi = np.linspace(0.0, 2.0 * np.pi, segments + 1)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    st = np.sin(tt)
    verts = np.stack([st * np.cos(pp), st * np.sin(pp), np.cos(tt)], axis=-1)
    verts = verts.reshape(-1, 3)
    faces = []
    cols = segments + 1
    for i in range(rings):
        for j in range(segments):
            v00 = i * cols + j
            v01 = i * cols + j + 1
            v10 = (i + 1) * cols + j
            v11 = (i + 1) * cols + j + 1
            if i > 0:
                faces.append((v00, v10, v01))
            if i < rings - 1:
                faces.append((v01, v10, v11))
    return Mesh(verts, np.array(faces, dtype=np.int32))


def mesh_angles(rings: int, segments: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, np.pi, rings + 1)
    phi = np.linspace(0.0, 2.0 * np.pi, segments + 1)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.reshape(-1), pp.reshape(-1)


def bead_mesh(
    bead: BeadFunction,
    scheme: str = "red-green-discontinuous",
    variant: str = "sphere",
    rings: int = DEFAULT_RINGS,
    segments: int = DEFAULT_SEGMENTS,
    component_norm: float | None = None,
    colors: np.ndarray | None = None,
) -> Mesh:
    """Colored mesh of one bead under a plotting variant.

    `colors` overrides the per-vertex colors (used for blend-colored T-Beads);
    norm-based variants need the component norm of the underlying operator.
    """
    if variant not in PLOT_VARIANTS:
        raise ValueError(f"unknown plot variant {variant!r}")
    base = sphere_mesh(rings, segments)
    theta, phi = mesh_angles(rings, segments)
    values = np.asarray(bead.value(theta=theta, phi=phi))
    if variant in ("norm-radius", "norm-volume"):
        if component_norm is None:
            raise ValueError(f"variant {variant!r} needs the component norm")
        peak = float(np.max(np.abs(values)))
        shown = values / peak if peak > 0 else values
        radius = component_norm if variant == "norm-radius" else float(
            np.cbrt(3.0 * component_norm / (4.0 * np.pi)))
        verts = base.vertices * radius
    else:
        shown = values
        if variant == "radial-magnitude":
            verts = base.vertices * np.abs(values)[:, None]
        else:
            verts = base.vertices
    if colors is None:
        colors = scheme_color(shown, scheme)
    return Mesh(verts, base.faces, np.asarray(colors, dtype=float))


def export_ply(mesh: Mesh, path) -> Path:
    """Binary little-endian PLY with per-vertex uchar RGB."""
    path = Path(path)
    colors = mesh.colors if mesh.colors is not None else np.ones_like(mesh.vertices)
    rgb = to_uint8(colors)
    header = (
        "ply\n"
        "format binary_little_endian 1.0\n"
        f"element vertex {mesh.vertex_count}\n"
        "property float x\nproperty float y\nproperty float z\n"
        "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        f"element face {mesh.faces.shape[0]}\n"
        "property list uchar int vertex_indices\n"
        "end_header\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        for pos, col in zip(mesh.vertices.astype("<f4"), rgb):
            fh.write(struct.pack("<fff", *pos))
            fh.write(struct.pack("<BBB", *col))
        for face in mesh.faces:
            fh.write(struct.pack("<B", 3))
            fh.write(struct.pack("<iii", *(int(v) for v in face)))
    return path


def read_ply(path) -> Mesh:
    """Read back a PLY written by `export_ply` (round-trip checks)."""
    data = Path(path).read_bytes()
    end = data.index(b"end_header\n") + len(b"end_header\n")
    header = data[:end].decode("ascii").splitlines()
    n_vertices = n_faces = 0
    for line in header:
        if line.startswith("element vertex"):
            n_vertices = int(line.split()[-1])
        elif line.startswith("element face"):
            n_faces = int(line.split()[-1])
    offset = end
    verts = np.empty((n_vertices, 3), dtype=float)
    cols = np.empty((n_vertices, 3), dtype=np.uint8)
    for i in range(n_vertices):
        x, y, z = struct.unpack_from("<fff", data, offset)
        offset += 12
        r, g, b = struct.unpack_from("<BBB", data, offset)
        offset += 3
        verts[i] = (x, y, z)
        cols[i] = (r, g, b)
    faces = np.empty((n_faces, 3), dtype=np.int32)
    for i in range(n_faces):
        count = struct.unpack_from("<B", data, offset)[0]
        offset += 1
        if count != 3:
            raise ValueError("only triangle faces supported")
        faces[i] = struct.unpack_from("<iii", data, offset)
        offset += 12
    return Mesh(verts, faces, cols.astype(float) / 255.0)
