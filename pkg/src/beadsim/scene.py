"""Scene assembly: which beads a display variant shows, layout, colors, export.

A scene snapshot is a self-contained JSON-serializable document carrying the
coefficients, evaluated vertex colors, layout positions, and arc table for
one state, so a client can render it without doing any quantum math.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .beads import BeadFunction, BeadSet, ScalingConfig, bead_coefficients
from .colors import DEFAULT_CONNECTED, DEFAULT_SINGLE, SCHEMES, blend_total, scheme_color
from .correlations import OMIT_NORM, PURITY_TOL, correlation_beads
from .lisa import BeadLabel, label_catalog, parse_label
from .mesh import bead_mesh, mesh_angles
from .states import DensityOperator, PureState, State

SCENE_VERSION = 1

# display variant table: shown bead kinds, color policy, symmetry policy,
# completeness, arcs
VARIANTS = {
    "A": {"beads": ("Q", "T"), "colors": "blend", "combine_parity": False, "symmetric_only": False, "arcs": True, "complete": True},
    "B": {"beads": ("Q", "T"), "colors": "single", "combine_parity": False, "symmetric_only": False, "arcs": True, "complete": True},
    "C": {"beads": ("Q", "T"), "colors": "blend", "combine_parity": True, "symmetric_only": False, "arcs": True, "complete": True},
    "D": {"beads": ("Q", "E", "C"), "colors": "split", "combine_parity": False, "symmetric_only": False, "arcs": True, "complete": True},
    "E": {"beads": ("Q", "E", "C"), "colors": "split", "combine_parity": True, "symmetric_only": False, "arcs": True, "complete": True},
    "F": {"beads": ("Q", "E"), "colors": "split", "combine_parity": False, "symmetric_only": False, "arcs": True, "complete": True},
    "G": {"beads": ("Q", "E"), "colors": "split", "combine_parity": True, "symmetric_only": False, "arcs": True, "complete": True},
    "H": {"beads": ("Q", "E"), "colors": "split", "combine_parity": False, "symmetric_only": True, "arcs": True, "complete": False},
    "I": {"beads": ("Q",), "colors": "single", "combine_parity": False, "symmetric_only": False, "arcs": True, "complete": False},
    "J": {"beads": ("Q",), "colors": "single", "combine_parity": False, "symmetric_only": False, "arcs": False, "complete": False},
}


@dataclass(frozen=True)
class DisplaySettings:
    variant: str = "A"
    scheme: str = DEFAULT_SINGLE
    connected_scheme: str = DEFAULT_CONNECTED
    mode: str = "beads"
    plot: str = "sphere"
    rings: int = 24
    segments: int = 48

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown display variant {self.variant!r}")
        for scheme in (self.scheme, self.connected_scheme):
            if scheme not in SCHEMES:
                raise ValueError(f"unknown color scheme {scheme!r}")


@dataclass(frozen=True)
class BeadRecord:
    bead_id: str
    kind: str            # Q | T | E | C | combined-T | combined-E | identity
    label: str
    coefficients: dict   # "j,m" -> scaled coefficient
    norm: float
    omit: bool
    extended_scale: bool
    position: tuple[float, float, float]
    colors: np.ndarray | None = field(default=None, compare=False)
    radius: float = 1.0


@dataclass(frozen=True)
class SceneSnapshot:
    version: int
    qubit_count: int
    settings: DisplaySettings
    beads: tuple[BeadRecord, ...]
    arcs: tuple[dict, ...]
    meta: dict = field(default_factory=dict)


def _layout_position(label: BeadLabel, kind: str, n_qubits: int) -> tuple[float, float, float]:
    """Q-Beads on a top row, bilinear beads under the connecting midpoints,
    trilinear beads one row lower; E/C splits are offset horizontally."""
    spacing = 2.5
    xs = {q: (q - (n_qubits + 1) / 2.0) * spacing for q in range(1, n_qubits + 1)}
    if label.linearity == 0:
        return (0.0, 2.5, 0.0)
    if label.linearity == 1:
        return (xs[label.subsystem[0]], 0.0, 0.0)
    x = float(np.mean([xs[q] for q in label.subsystem]))
    y = -2.5 if label.linearity == 2 else -5.0
    # stack parity/tau variants of the same subsystem side by side
    shift = 0.0
    if label.linearity == 2 and label.parity == "odd":
        shift = 1.1
    if label.tau is not None:
        shift = {1: 0.0, 2: 1.2, 3: 2.4, 4: 3.6}[label.tau]
        if label.parity == "even":
            shift += 0.55
    dx = {"C": 0.45, "E": 0.0, "T": 0.0}.get(kind, 0.0)
    return (x + shift + dx, y, 0.0)


def _coeff_dict(bead: BeadFunction) -> dict:
    return {f"{j},{m}": float(c) for (j, m), c in sorted(bead.coefficients.items())}


def dict_by_key(merged) -> dict:
    return {label.key: (bead, norm) for label, bead, norm, _ in merged}


def _combine_parities(beadset: BeadSet, n: int) -> list[tuple[BeadLabel, BeadFunction, float, bool]]:
    """Merge even/odd beads of the same subsystem (and tau); flag extended scale."""
    groups: dict[tuple, list[BeadLabel]] = {}
    for label in label_catalog(n):
        if label.linearity < 2:
            continue
        groups.setdefault((label.subsystem, label.tau), []).append(label)
    merged = []
    for (subsystem, tau), labels in sorted(groups.items()):
        coeffs = {}
        norm_sq = 0.0
        for lab in labels:
            bead = beadset[lab]
            coeffs.update(bead.coefficients)
            norm_sq += beadset.norm(lab) ** 2
        rep = labels[0]
        combined = BeadFunction(rep, coeffs)
        merged.append((rep, combined, float(np.sqrt(norm_sq)), True))
    return merged


def build_scene(
    state: State,
    settings: DisplaySettings | None = None,
    evaluate_colors: bool = True,
) -> SceneSnapshot:
    """Assemble the scene snapshot for one state under the display settings."""
    settings = settings or DisplaySettings()
    spec = VARIANTS[settings.variant]
    n = state.qubit_count
    config = ScalingConfig(settings.mode)
    pure = not isinstance(state, DensityOperator) or state.purity() >= 1.0 - PURITY_TOL
    separation = "full" if pure else "total-only"
    t_set = bead_coefficients(state, config)
    if pure:
        corr = correlation_beads(state, config)
        e_set, c_set = corr.e_beads, corr.c_beads
        ent_norms = corr.entanglement_norm_per_label
    else:
        e_set = c_set = None
        ent_norms = {
            lab.key: t_set.norm(lab)
            for lab in label_catalog(n)
            if lab.linearity >= 2
        }

    theta, phi = mesh_angles(settings.rings, settings.segments)
    records: list[BeadRecord] = []

    def color_values(bead: BeadFunction, kind: str,
                     blend_pair: tuple[BeadFunction, BeadFunction] | None) -> np.ndarray | None:
        if not evaluate_colors:
            return None
        if blend_pair is not None:
            e_bead, c_bead = blend_pair
            e_vals = np.asarray(e_bead.value(theta=theta, phi=phi))
            c_vals = np.asarray(c_bead.value(theta=theta, phi=phi))
            return blend_total(e_vals, c_vals, settings.scheme, settings.connected_scheme)
        values = np.asarray(bead.value(theta=theta, phi=phi))
        if kind in ("E", "combined-E"):
            return scheme_color(values, settings.connected_scheme)
        return scheme_color(values, settings.scheme)

    def add(label: BeadLabel, bead: BeadFunction, kind: str, norm: float,
            extended: bool = False, omit: bool = False,
            blend_pair: tuple[BeadFunction, BeadFunction] | None = None):
        radius = 1.0
        if settings.plot == "norm-radius":
            radius = float(norm)
        elif settings.plot == "norm-volume":
            radius = float(np.cbrt(3.0 * norm / (4.0 * np.pi)))
        records.append(BeadRecord(
            bead_id=f"{kind}:{label.key}",
            kind=kind,
            label=label.key,
            coefficients=_coeff_dict(bead),
            norm=float(norm),
            omit=bool(omit),
            extended_scale=bool(extended),
            position=_layout_position(label, kind, n),
            colors=None if omit else color_values(bead, kind, blend_pair),
            radius=radius,
        ))

    # Q-Beads always shown, never omitted
    for label in label_catalog(n):
        if label.linearity == 1:
            add(label, t_set[label], "Q", t_set.norm(label))

    want_t = "T" in spec["beads"]
    want_e = "E" in spec["beads"] and e_set is not None
    want_c = "C" in spec["beads"] and c_set is not None
    if ("E" in spec["beads"] or "C" in spec["beads"]) and e_set is None:
        want_t = True  # mixed-state fallback: only total content is defined

    use_blend = spec["colors"] == "blend" and e_set is not None

    if spec["combine_parity"]:
        if want_t:
            combined_e = dict_by_key(_combine_parities(e_set, n)) if use_blend else {}
            combined_c = dict_by_key(_combine_parities(c_set, n)) if use_blend else {}
            for label, bead, norm, ext in _combine_parities(t_set, n):
                pair = None
                if use_blend:
                    pair = (combined_e[label.key][0], combined_c[label.key][0])
                add(label, bead, "combined-T", norm, extended=ext,
                    omit=norm < OMIT_NORM, blend_pair=pair)
        if want_e:
            for label, bead, norm, ext in _combine_parities(e_set, n):
                add(label, bead, "combined-E", norm, extended=ext, omit=norm < OMIT_NORM)
        if want_c:
            for label, bead, norm, ext in _combine_parities(c_set, n):
                add(label, bead, "combined-C", norm, extended=ext, omit=norm < OMIT_NORM)
    else:
        for label in label_catalog(n):
            if label.linearity < 2:
                continue
            if spec["symmetric_only"] and not label.fully_symmetric:
                continue
            if want_t:
                pair = (e_set[label], c_set[label]) if use_blend else None
                norm = t_set.norm(label)
                add(label, t_set[label], "T", norm, omit=norm < OMIT_NORM, blend_pair=pair)
            if want_e:
                norm = e_set.norm(label)
                add(label, e_set[label], "E", norm, omit=norm < OMIT_NORM)
            if want_c:
                norm = c_set.norm(label)
                add(label, c_set[label], "C", norm, omit=norm < OMIT_NORM)

    arcs: list[dict] = []
    if spec["arcs"]:
        subsystems = sorted({lab.subsystem for lab in label_catalog(n) if lab.linearity >= 2})
        for subsystem in subsystems:
            # one arc per subsystem; thickness from the entanglement norm of
            # its components (pure) or the total multilinear norm (mixed)
            thickness = float(np.sqrt(sum(
                ent_norms.get(lab.key, 0.0) ** 2
                for lab in label_catalog(n)
                if lab.subsystem == subsystem and lab.linearity >= 2
            )))
            if thickness >= OMIT_NORM:
                arcs.append({"between": list(subsystem), "thickness": thickness})

    meta = {
        "mode": settings.mode,
        "variant": settings.variant,
        "scheme": settings.scheme,
        "connected_scheme": settings.connected_scheme,
        "plot": settings.plot,
        "complete": spec["complete"] and separation == "full",
        "separation": separation,
        "mesh": {"rings": settings.rings, "segments": settings.segments},
        "mixed": not pure,
    }
    return SceneSnapshot(SCENE_VERSION, n, settings, tuple(records), tuple(arcs), meta)


def scene_to_document(snapshot: SceneSnapshot) -> dict:
    """JSON-serializable scene document (versioned).

    Vertex colors are quantized to 8-bit channels (the same resolution the
    PLY exports use), which keeps snapshots small enough for interactive
    streaming; coefficients stay at full precision so the document remains
    complete for A-G variants.
    """
    from .colors import to_uint8

    return {
        "version": snapshot.version,
        "qubit_count": snapshot.qubit_count,
        "meta": snapshot.meta,
        "labels": [
            {
                "id": rec.bead_id,
                "kind": rec.kind,
                "label": rec.label,
                "omit": rec.omit,
                "extended_scale": rec.extended_scale,
            }
            for rec in snapshot.beads
        ],
        "coefficients": {rec.bead_id: rec.coefficients for rec in snapshot.beads},
        "colors": {
            rec.bead_id: (None if rec.colors is None else to_uint8(rec.colors).tolist())
            for rec in snapshot.beads
        },
        "layout": {
            "positions": {rec.bead_id: list(rec.position) for rec in snapshot.beads},
            "norms": {rec.bead_id: rec.norm for rec in snapshot.beads},
            "radii": {rec.bead_id: rec.radius for rec in snapshot.beads},
            "arcs": list(snapshot.arcs),
        },
    }


def export_scene(snapshot: SceneSnapshot, path) -> Path:
    path = Path(path)
    path.write_text(dumps_scene(snapshot))
    return path


def dumps_scene(snapshot: SceneSnapshot) -> str:
    return json.dumps(scene_to_document(snapshot), sort_keys=True, separators=(",", ":")) + "\n"


def import_scene(path) -> dict:
    return json.loads(Path(path).read_text())


def scene_meshes(snapshot: SceneSnapshot):
    """(record, Mesh) pairs for every non-omitted bead in the scene."""
    settings = snapshot.settings
    out = []
    for rec in snapshot.beads:
        if rec.omit:
            continue
        label = parse_label(rec.label)
        coeffs = {
            tuple(int(v) for v in key.split(",")): value
            for key, value in rec.coefficients.items()
        }
        bead = BeadFunction(label, coeffs)
        norm_variant = settings.plot in ("norm-radius", "norm-volume")
        mesh = bead_mesh(
            bead,
            scheme=settings.scheme,
            variant=settings.plot,
            rings=settings.rings,
            segments=settings.segments,
            component_norm=rec.norm,
            colors=None if norm_variant else rec.colors,
        )
        out.append((rec, mesh))
    return out
