"""Matplotlib rendering of scene snapshots to image files.

Each bead is drawn as a top-view disc (orthographic projection of the upper
hemisphere, which is complete for parity-separated variants), positioned per
the scene layout, with entanglement arcs drawn underneath.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .beads import BeadFunction
from .colors import blend_total, scheme_color
from .lisa import parse_label
from .scene import SceneSnapshot

_DISC_SAMPLES = 96


def _disc_image(colors_fn, radius: float = 1.0) -> np.ndarray:
    """RGBA image of the upper hemisphere seen from +z."""
    grid = np.linspace(-1.0, 1.0, _DISC_SAMPLES)
    xx, yy = np.meshgrid(grid, -grid)  # row 0 at +y
    rr = np.hypot(xx, yy)
    inside = rr <= 1.0
    theta = np.arcsin(np.clip(rr, 0.0, 1.0))
    phi = np.arctan2(yy, xx)
    rgb = colors_fn(theta, phi)
    img = np.zeros((_DISC_SAMPLES, _DISC_SAMPLES, 4))
    img[..., :3] = rgb
    img[..., 3] = np.where(inside, 1.0, 0.0)
    return img


def render_scene_figure(snapshot: SceneSnapshot, path, title: str | None = None) -> Path:
    """Write a PNG overview of the snapshot; returns the written path."""
    path = Path(path)
    settings = snapshot.settings
    fig, ax = plt.subplots(figsize=(9, 6))
    ax.set_aspect("equal")
    ax.axis("off")
    positions = {rec.bead_id: rec.position for rec in snapshot.beads}
    qubit_positions = {
        rec.label: rec.position for rec in snapshot.beads if rec.kind == "Q"
    }
    for arc in snapshot.arcs:
        pts = [qubit_positions.get(str(q)) for q in arc["between"]]
        pts = [p for p in pts if p is not None]
        for a, b in zip(pts, pts[1:]):
            ax.plot([a[0], b[0]], [a[1], b[1]], color="0.35",
                    linewidth=0.6 + 4.0 * arc["thickness"], zorder=0)
    for rec in snapshot.beads:
        if rec.omit:
            continue
        label = parse_label(rec.label)
        coeffs = {
            tuple(int(v) for v in key.split(",")): value
            for key, value in rec.coefficients.items()
        }
        bead = BeadFunction(label, coeffs)

        def colors_fn(theta, phi, rec=rec, bead=bead):
            values = np.asarray(bead.value(theta=theta, phi=phi))
            if rec.kind in ("E", "combined-E"):
                return scheme_color(values, settings.connected_scheme)
            return scheme_color(values, settings.scheme)

        img = _disc_image(colors_fn)
        x, y, _ = rec.position
        size = max(rec.radius, 0.15)
        ax.imshow(img, extent=(x - size, x + size, y - size, y + size), zorder=2)
        ax.text(x, y - size - 0.35, _pretty_label(rec), fontsize=7,
                ha="center", va="top")
    pad = 2.0
    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    ax.set_xlim(min(xs) - pad, max(xs) + pad)
    ax.set_ylim(min(ys) - pad, max(ys) + pad + 0.6)
    ax.set_title(title or f"variant {settings.variant} ({settings.mode} scaling)")
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def _pretty_label(rec) -> str:
    label = parse_label(rec.label)
    if label.linearity == 1:
        return f"Q{label.subsystem[0]}"
    body = ",".join(str(q) for q in label.subsystem)
    kind = rec.kind.replace("combined-", "")
    tau = f" t{label.tau}" if label.tau else ""
    parity = "" if rec.kind.startswith("combined") else f" {label.parity}"
    return f"{kind}{{{body}{tau}}}{parity}"
