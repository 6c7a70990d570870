"""Session protocol: newline-delimited JSON request/response messages.

One session drives one loaded circuit: stepping, intra-gate seeking, branch
selection, display settings, snapshots (self-contained scene payloads), live
circuit edits, ad-hoc measurements, and exports. Errors are structured
objects {code, message}; an unrecognized method yields code "unknown_method".
"""
from __future__ import annotations

import json
import socketserver
import sys
from dataclasses import asdict, dataclass, replace

import numpy as np

from .circuits import (
    Circuit,
    MeasurementBranch,
    MixBranches,
    branches_at,
    branches_at_fraction,
    measure_qubit,
    mix_branches,
)
from .circuit_io import (
    CircuitFormatError,
    circuit_from_document,
    circuit_to_document,
    validate_document,
)
from .mesh import export_ply
from .presets import PRESETS, get_preset
from .scene import DisplaySettings, build_scene, dumps_scene, scene_meshes, scene_to_document
from .states import DensityOperator, PureState


class SessionError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass
class Session:
    """Mutable protocol state: circuit, position, branch choice, display."""

    circuit: Circuit | None = None
    initial: PureState | None = None
    step_index: int = 0
    fraction: float = 1.0
    selected_branch: str | None = None
    display: DisplaySettings = DisplaySettings()
    ad_hoc_branches: tuple[MeasurementBranch, ...] | None = None

    # -- protocol methods -------------------------------------------------
    def load_circuit(self, params: dict) -> dict:
        if "preset" in params:
            preset = get_preset(params["preset"])
            if preset.kind == "circuit":
                self.circuit = preset.build()
                self.initial = None
            else:
                state = preset.build()
                self.circuit = Circuit(state.qubit_count, ())
                self.initial = state
        elif "document" in params:
            try:
                self.circuit, self.initial = circuit_from_document(params["document"])
            except CircuitFormatError as exc:
                raise SessionError("invalid_circuit", str(exc)) from exc
        else:
            raise SessionError("bad_request", "load_circuit needs 'preset' or 'document'")
        self.step_index = len(self.circuit.steps)
        self.fraction = 1.0
        self.selected_branch = None
        self.ad_hoc_branches = None
        return {
            "qubit_count": self.circuit.qubit_count,
            "step_count": len(self.circuit.steps),
        }

    def list_presets(self, params: dict) -> list[dict]:
        return [
            {
                "name": p.name,
                "kind": p.kind,
                "qubit_count": p.qubit_count,
                "description": p.description,
            }
            for p in PRESETS.values()
        ]

    def step_to(self, params: dict) -> dict:
        k = int(params["k"])
        self._require_circuit()
        if not 0 <= k <= len(self.circuit.steps):
            raise SessionError("bad_request", f"step index {k} out of range")
        self.step_index = k
        self.fraction = 1.0
        self.ad_hoc_branches = None
        return self._branch_summary()

    def seek(self, params: dict) -> dict:
        k = int(params["k"])
        t = float(params.get("t", 1.0))
        self._require_circuit()
        if not 0 <= k < len(self.circuit.steps):
            raise SessionError("bad_request", f"step index {k} out of range")
        if not 0.0 <= t <= 1.0:
            raise SessionError("bad_request", "intra-gate time t must lie in [0, 1]")
        self.step_index = k
        self.fraction = t
        self.ad_hoc_branches = None
        return self._branch_summary()

    def select_branch(self, params: dict) -> dict:
        bits = params.get("bits")
        if bits is not None and not isinstance(bits, str):
            raise SessionError("bad_request", "bits must be a string like '01' or null")
        branches = self._current_branches()
        if bits is not None and all(b.label() != bits for b in branches):
            raise SessionError("bad_request", f"no branch with outcome bits {bits!r}")
        self.selected_branch = bits
        return self._branch_summary()

    def set_display(self, params: dict) -> dict:
        updates = {}
        for key in ("variant", "scheme", "connected_scheme", "mode", "plot"):
            if key in params:
                updates[key] = params[key]
        for key in ("rings", "segments"):
            if key in params:
                updates[key] = int(params[key])
        try:
            self.display = replace(self.display, **updates)
        except ValueError as exc:
            raise SessionError("bad_request", str(exc)) from exc
        return {"display": self._display_dict()}

    def snapshot(self, params: dict) -> dict:
        state = self._selected_state()
        settings = self.display
        if "rings" in params or "segments" in params:
            settings = replace(settings,
                               rings=int(params.get("rings", settings.rings)),
                               segments=int(params.get("segments", settings.segments)))
        snap = build_scene(state, settings)
        doc = scene_to_document(snap)
        doc["branches"] = self._branch_summary()["branches"]
        doc["position"] = {"step": self.step_index, "t": self.fraction}
        return doc

    def edit_circuit(self, params: dict) -> dict:
        self._require_circuit()
        document = circuit_to_document(self.circuit, self.initial)
        steps = document["steps"]
        for op in params.get("ops", []):
            kind = op.get("op")
            if kind == "insert_step":
                index = int(op["index"])
                if not 0 <= index <= len(steps):
                    raise SessionError("bad_request", "insert index out of range")
                steps.insert(index, op["step"])
            elif kind == "remove_step":
                index = int(op["index"])
                if not 0 <= index < len(steps):
                    raise SessionError("bad_request", "remove index out of range")
                steps.pop(index)
            elif kind == "replace_step":
                index = int(op["index"])
                if not 0 <= index < len(steps):
                    raise SessionError("bad_request", "replace index out of range")
                steps[index] = op["step"]
            elif kind == "set_qubit_count":
                document["qubit_count"] = int(op["n"])
                document.pop("initial", None)
            else:
                raise SessionError("bad_request", f"unknown edit op {kind!r}")
        try:
            validate_document(document)
            self.circuit, self.initial = circuit_from_document(document)
        except CircuitFormatError as exc:
            raise SessionError("invalid_circuit", str(exc)) from exc
        self.step_index = min(self.step_index, len(self.circuit.steps))
        self.ad_hoc_branches = None
        return {"document": circuit_to_document(self.circuit, self.initial)}

    def measure_now(self, params: dict) -> dict:
        qubit = int(params["qubit"])
        direction = tuple(params.get("direction", (0, 0, 1)))
        state = self._selected_state()
        if isinstance(state, DensityOperator):
            raise SessionError("bad_request", "measure_now needs a pure branch selected")
        try:
            branches = measure_qubit(state, qubit, direction)
        except ValueError as exc:
            raise SessionError("bad_request", str(exc)) from exc
        self.ad_hoc_branches = tuple(branches)
        self.selected_branch = None
        return self._branch_summary()

    def export(self, params: dict) -> dict:
        what = params.get("what", "scene")
        path = params.get("path")
        if path is None:
            raise SessionError("bad_request", "export needs a path")
        written = []
        if what == "scene":
            snap = build_scene(self._selected_state(), self.display)
            from pathlib import Path

            Path(path).write_text(dumps_scene(snap))
            written.append(str(path))
        elif what == "circuit":
            self._require_circuit()
            from pathlib import Path

            doc = circuit_to_document(self.circuit, self.initial)
            Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            written.append(str(path))
        elif what == "ply":
            snap = build_scene(self._selected_state(), self.display)
            from pathlib import Path

            base = Path(path)
            base.mkdir(parents=True, exist_ok=True)
            for rec, mesh in scene_meshes(snap):
                name = rec.bead_id.replace(":", "_").replace("/", "_")
                written.append(str(export_ply(mesh, base / f"{name}.ply")))
        else:
            raise SessionError("bad_request", f"unknown export kind {what!r}")
        return {"written": written}

    # -- helpers -----------------------------------------------------------
    def _require_circuit(self) -> None:
        if self.circuit is None:
            raise SessionError("no_circuit", "no circuit loaded")

    def _current_branches(self) -> tuple[MeasurementBranch, ...]:
        self._require_circuit()
        if self.ad_hoc_branches is not None:
            return self.ad_hoc_branches
        if self.fraction >= 1.0 or self.step_index >= len(self.circuit.steps):
            return branches_at(self.circuit, self.step_index, self.initial)
        return branches_at_fraction(self.circuit, self.step_index, self.fraction, self.initial)

    def _selected_state(self):
        branches = self._current_branches()
        if self.selected_branch is not None:
            for b in branches:
                if b.label() == self.selected_branch:
                    return b.post_state
            raise SessionError("bad_request", "selected branch no longer exists")
        if len(branches) == 1:
            return branches[0].post_state
        return mix_branches(list(branches))

    def _branch_summary(self) -> dict:
        branches = self._current_branches()
        return {
            "step": self.step_index,
            "t": self.fraction,
            "selected": self.selected_branch,
            "branches": [
                {
                    "bits": b.label(),
                    "outcomes": [[q, bit] for q, bit in b.outcomes],
                    "probability": b.probability,
                    "mixed": isinstance(b.post_state, DensityOperator),
                }
                for b in branches
            ],
        }

    def _display_dict(self) -> dict:
        return {
            "variant": self.display.variant,
            "scheme": self.display.scheme,
            "connected_scheme": self.display.connected_scheme,
            "mode": self.display.mode,
            "plot": self.display.plot,
            "rings": self.display.rings,
            "segments": self.display.segments,
        }


METHODS = (
    "load_circuit", "list_presets", "step_to", "seek", "select_branch",
    "set_display", "snapshot", "edit_circuit", "measure_now", "export",
)


def handle_message(session: Session, message: dict) -> dict:
    msg_id = message.get("id")
    method = message.get("method")
    params = message.get("params") or {}
    if method not in METHODS:
        return {"id": msg_id, "error": {"code": "unknown_method",
                                        "message": f"unknown method {method!r}"}}
    try:
        result = getattr(session, method)(params)
        return {"id": msg_id, "result": result}
    except SessionError as exc:
        return {"id": msg_id, "error": {"code": exc.code, "message": exc.message}}
    except Exception as exc:  # runtime faults surface as structured errors
        return {"id": msg_id, "error": {"code": "runtime_error", "message": str(exc)}}


def serve_streams(instream=None, outstream=None) -> None:
    """Serve one session over newline-delimited JSON on the given streams."""
    instream = instream or sys.stdin
    outstream = outstream or sys.stdout
    session = Session()
    for line in instream:
        line = line.strip()
        if not line:
            continue
        try:
            message = json.loads(line)
        except json.JSONDecodeError as exc:
            response = {"id": None, "error": {"code": "parse_error", "message": str(exc)}}
        else:
            response = handle_message(session, message)
        outstream.write(json.dumps(response, sort_keys=True) + "\n")
        outstream.flush()


def serve_socket(path: str) -> None:
    """Serve sessions on a local unix socket, one session per connection."""

    class Handler(socketserver.StreamRequestHandler):
        def handle(self):
            session = Session()
            for raw in self.rfile:
                line = raw.decode("utf-8").strip()
                if not line:
                    continue
                try:
                    message = json.loads(line)
                except json.JSONDecodeError as exc:
                    response = {"id": None, "error": {"code": "parse_error", "message": str(exc)}}
                else:
                    response = handle_message(session, message)
                self.wfile.write((json.dumps(response, sort_keys=True) + "\n").encode("utf-8"))
                self.wfile.flush()

    class Server(socketserver.ThreadingUnixStreamServer):
        daemon_threads = True

    with Server(path, Handler) as server:
        server.serve_forever()
