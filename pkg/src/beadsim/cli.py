"""Command-line interface: state and circuit reports, presets, and the
session server. Exit codes: 0 ok, 1 runtime failure, 2 invalid input."""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .circuits import run as run_circuit
from .circuit_io import CircuitFormatError, load_circuit_file, save_circuit_file
from .mesh import export_ply
from .presets import PRESETS, get_preset
from .scene import DisplaySettings, SCHEMES, VARIANTS, build_scene, dumps_scene, scene_meshes
from .session import serve_socket, serve_streams
from .states import DensityOperator, PureState

INPUT_ERROR = 2


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(INPUT_ERROR)


def _display_options(fn):
    fn = click.option("--variant", default="A",
                      type=click.Choice(sorted(VARIANTS)), show_default=True)(fn)
    fn = click.option("--scheme", default="red-green-discontinuous",
                      type=click.Choice(sorted(SCHEMES)), show_default=True)(fn)
    fn = click.option("--mode", default="beads",
                      type=click.Choice(["beads", "drops", "natural"]), show_default=True)(fn)
    fn = click.option("--plot", default="sphere",
                      type=click.Choice(["sphere", "radial-magnitude", "norm-radius", "norm-volume"]),
                      show_default=True)(fn)
    fn = click.option("--rings", default=24, show_default=True)(fn)
    fn = click.option("--segments", default=48, show_default=True)(fn)
    return fn


def _settings(variant, scheme, mode, plot, rings, segments) -> DisplaySettings:
    return DisplaySettings(variant=variant, scheme=scheme, mode=mode, plot=plot,
                           rings=rings, segments=segments)


def _write_scene_outputs(state, settings, outdir: Path, stem: str,
                         ply: bool, figure: bool) -> list[Path]:
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    snapshot = build_scene(state, settings)
    scene_path = outdir / f"{stem}.scene.json"
    scene_path.write_text(dumps_scene(snapshot))
    written.append(scene_path)
    csv_path = outdir / f"{stem}.coefficients.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bead", "kind", "label", "j", "m", "coefficient", "norm", "omit"])
        for rec in snapshot.beads:
            for key, value in rec.coefficients.items():
                j, m = key.split(",")
                writer.writerow([rec.bead_id, rec.kind, rec.label, j, m,
                                 repr(float(value)), repr(rec.norm), int(rec.omit)])
    written.append(csv_path)
    if ply:
        for rec, mesh in scene_meshes(snapshot):
            name = rec.bead_id.replace(":", "_")
            written.append(export_ply(mesh, outdir / f"{stem}.{name}.ply"))
    if figure:
        from .figures import render_scene_figure  # deferred: pulls in matplotlib

        written.append(render_scene_figure(snapshot, outdir / f"{stem}.png", title=stem))
    return written


def _load_state_file(path: Path):
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        _fail_input(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    try:
        if "amplitudes" in payload:
            amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
            return PureState(amps)
        if "density" in payload:
            rows = payload["density"]
            mat = np.array([[complex(re, im) for re, im in row] for row in rows])
            return DensityOperator(mat)
    except (ValueError, TypeError) as exc:
        _fail_input(str(exc))
    _fail_input("state file needs an 'amplitudes' or 'density' section")


@click.group()
@click.version_option(__version__, prog_name="beadsim")
def main():
    """Colored-sphere visualization engine for 1-3 qubit states."""


@main.command("presets")
def presets_cmd():
    """List the built-in presets."""
    for preset in PRESETS.values():
        click.echo(f"{preset.name:24s} {preset.kind:8s} {preset.qubit_count}q  {preset.description}")


@main.command("state")
@click.argument("source")
@_display_options
@click.option("--out", default="beadsim-out", show_default=True, help="output directory")
@click.option("--ply/--no-ply", default=False, show_default=True, help="write per-bead PLY meshes")
@click.option("--figure/--no-figure", default=True, show_default=True, help="write a PNG overview")
def state_cmd(source, variant, scheme, mode, plot, rings, segments, out, ply, figure):
    """Render one state: SOURCE is a preset name or a state JSON file."""
    settings = _settings(variant, scheme, mode, plot, rings, segments)
    if source in PRESETS:
        preset = get_preset(source)
        if preset.kind == "state":
            state = preset.build()
        else:
            results = run_circuit(preset.build())
            branches = results[-1].branches if results else ()
            if len(branches) != 1:
                from .circuits import mix_branches

                state = mix_branches(list(branches))
            else:
                state = branches[0].post_state
        stem = source
    else:
        path = Path(source)
        if not path.exists():
            _fail_input(f"no such preset or file: {source}")
        state = _load_state_file(path)
        stem = path.stem
    try:
        written = _write_scene_outputs(state, settings, Path(out), stem, ply, figure)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for path in written:
        click.echo(str(path))


@main.group("circuit")
def circuit_group():
    """Circuit-file operations."""


@circuit_group.command("run")
@click.argument("source")
@_display_options
@click.option("--snapshots", default="per-step", type=click.Choice(["per-step", "dense"]),
              show_default=True)
@click.option("--dense-points", default=4, show_default=True,
              help="intra-gate samples per step in dense mode")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="beadsim-out", show_default=True)
@click.option("--ply/--no-ply", default=False, show_default=True)
@click.option("--figure/--no-figure", default=False, show_default=True)
def circuit_run_cmd(source, variant, scheme, mode, plot, rings, segments,
                    snapshots, dense_points, seed, out, ply, figure):
    """Run a circuit file or preset; write per-step scenes and a branch table."""
    settings = _settings(variant, scheme, mode, plot, rings, segments)
    if source in PRESETS:
        preset = get_preset(source)
        if preset.kind != "circuit":
            _fail_input(f"preset {source} is a state, use `beadsim state {source}`")
        circuit, initial = preset.build(), None
        stem = source
    else:
        path = Path(source)
        if not path.exists():
            _fail_input(f"no such preset or file: {source}")
        try:
            circuit, initial = load_circuit_file(path)
        except CircuitFormatError as exc:
            _fail_input(str(exc))
        stem = path.stem
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    from .circuits import branches_at_fraction, mix_branches

    def state_of(branches):
        if len(branches) == 1:
            return branches[0].post_state
        return mix_branches(list(branches))

    results = run_circuit(circuit, initial)
    for result in results:
        state = state_of(result.branches)
        written += _write_scene_outputs(
            state, settings, outdir, f"{stem}.step{result.index:02d}", ply, figure)
        if snapshots == "dense":
            for t in np.linspace(0.0, 1.0, dense_points, endpoint=False)[1:]:
                mid = branches_at_fraction(circuit, result.index, float(t), initial)
                written += _write_scene_outputs(
                    state_of(mid), settings, outdir,
                    f"{stem}.step{result.index:02d}.t{t:.2f}", ply, figure)
    branch_path = outdir / f"{stem}.branches.csv"
    with open(branch_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "bits", "probability", "mixed"])
        for result in results:
            for b in result.branches:
                writer.writerow([result.index, b.label(), repr(b.probability),
                                 int(not isinstance(b.post_state, PureState))])
    written.append(branch_path)
    for path in written:
        click.echo(str(path))


@circuit_group.command("export-preset")
@click.argument("name")
@click.argument("target", type=click.Path())
def export_preset_cmd(name, target):
    """Write a preset circuit as a circuit JSON file."""
    if name not in PRESETS:
        _fail_input(f"unknown preset {name}")
    preset = get_preset(name)
    if preset.kind != "circuit":
        _fail_input(f"preset {name} is a state preset")
    save_circuit_file(target, preset.build())
    click.echo(target)


@main.command("serve")
@click.option("--socket", "socket_path", default=None,
              help="serve on a unix socket instead of stdio")
def serve_cmd(socket_path):
    """Serve the session protocol (newline-delimited JSON)."""
    if socket_path:
        serve_socket(socket_path)
    else:
        serve_streams()


if __name__ == "__main__":
    main()
