"""Circuit document format: versioned JSON validated against the shipped schema."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .circuits import Circuit, ClassicalCondition, GateStep, Measurement, MixBranches, Step
from .gates import GateSpec, controlled_rotation, gate, hamiltonian_gate, projector_flip_gate
from .lisa import pauli_string_matrix
from .states import PureState, ket

DOCUMENT_VERSION = 1


class CircuitFormatError(ValueError):
    """Raised for schema violations or unrepresentable constructs."""


def _schema() -> dict:
    text = resources.files("beadsim.schemas").joinpath("circuit.schema.json").read_text()
    return json.loads(text)


def validate_document(document: dict) -> None:
    try:
        jsonschema.validate(document, _schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise CircuitFormatError(f"invalid circuit document at {path or '<root>'}: {exc.message}") from exc


_SIMPLE_GATES = {
    "x", "y", "z", "h", "sx", "sy", "sz", "sxdg", "sydg", "szdg",
    "cycle", "cycledg", "cnot", "cz", "swap", "toffoli",
}


def _generator_terms(spec: GateSpec) -> list[dict]:
    """Pauli expansion of the generator over the step's qubits.

    The identity component (a global phase of the unitary) is dropped; scenes
    are density-operator based, so replay is unaffected.
    """
    import itertools

    k = len(spec.qubits)
    terms = []
    for axes in itertools.product("ixyz", repeat=k):
        if all(a == "i" for a in axes):
            continue
        assignment = {i + 1: a for i, a in enumerate(axes) if a != "i"}
        P = pauli_string_matrix(k, assignment)
        coef = float(np.trace(P @ spec.generator).real) / 2**k
        if abs(coef) > 1e-14:
            word = "".join(a for a in axes if a != "i")
            qubits = [spec.qubits[i] for i, a in enumerate(axes) if a != "i"]
            terms.append({"pauli": word, "qubits": qubits, "coefficient": coef})
    return terms


def _step_to_record(step: Step) -> dict:
    if isinstance(step, Measurement):
        return {"type": "measure", "qubit": step.qubit, "direction": list(step.direction)}
    if isinstance(step, MixBranches):
        return {"type": "mix"}
    spec = step.gate
    if spec.name in _SIMPLE_GATES:
        record: dict = {"type": "gate", "name": spec.name, "qubits": list(spec.qubits)}
    elif spec.name in ("phase", "cphase"):
        record = {"type": "gate", "name": spec.name, "qubits": list(spec.qubits),
                  "parameter": float(spec.parameter)}
    else:
        record = {"type": "hamiltonian", "name": spec.name, "qubits": list(spec.qubits),
                  "terms": _generator_terms(spec), "time": 1.0}
    if step.condition is not None:
        record["condition"] = {"qubit": step.condition.qubit, "bit": step.condition.bit}
    return record


def _gate_from_record(record: dict, qubit_count: int) -> GateSpec:
    name = record["name"]
    qubits = tuple(record["qubits"])
    if name in _SIMPLE_GATES:
        return gate(name, qubits)
    if name in ("phase", "cphase"):
        return gate(name, qubits, parameter=record["parameter"])
    if name == "rot":
        return gate("rot", qubits, parameter=record["parameter"], axis=tuple(record["axis"]))
    if name == "crot":
        control, target = qubits
        return controlled_rotation(control, target, tuple(record["axis"]),
                                   record["parameter"], record.get("control_bit", 1))
    if name == "basis-flip":
        return projector_flip_gate("basis-flip", qubits, record["flip_index"], 2 ** len(qubits))
    raise CircuitFormatError(f"unknown gate name {name!r}")


def _hamiltonian_from_record(record: dict) -> GateSpec:
    qubits = tuple(record["qubits"])
    dim = 2 ** len(qubits)
    H = np.zeros((dim, dim), dtype=complex)
    local_index = {q: i + 1 for i, q in enumerate(qubits)}
    for term in record["terms"]:
        axes = term["pauli"]
        targets = term["qubits"]
        if len(axes) != len(targets):
            raise CircuitFormatError("pauli word length must match its qubit list")
        assignment = {}
        for q, ax in zip(targets, axes):
            if q not in local_index:
                raise CircuitFormatError(f"hamiltonian term qubit {q} outside step qubits")
            assignment[local_index[q]] = ax
        H += term["coefficient"] * pauli_string_matrix(len(qubits), assignment)
    return hamiltonian_gate(record.get("name", "hamiltonian"), qubits, H,
                            record.get("time", 1.0))


def circuit_from_document(document: dict) -> tuple[Circuit, PureState | None]:
    """Parse and validate a circuit document; returns (circuit, initial state)."""
    validate_document(document)
    n = document["qubit_count"]
    steps: list[Step] = []
    for record in document["steps"]:
        kind = record["type"]
        if kind == "measure":
            steps.append(Measurement(record["qubit"], tuple(record.get("direction", (0, 0, 1)))))
        elif kind == "mix":
            steps.append(MixBranches())
        elif kind == "hamiltonian":
            spec = _hamiltonian_from_record(record)
            condition = record.get("condition")
            steps.append(GateStep(spec, _condition(condition)))
        else:
            spec = _gate_from_record(record, n)
            steps.append(GateStep(spec, _condition(record.get("condition"))))
    try:
        circuit = Circuit(n, tuple(steps))
    except (ValueError, TypeError) as exc:
        raise CircuitFormatError(str(exc)) from exc
    initial = None
    if "initial" in document:
        init = document["initial"]
        if init["kind"] == "computational":
            bits = init.get("bits", "0" * n)
            if len(bits) != n:
                raise CircuitFormatError("initial bits length must equal qubit_count")
            initial = ket(bits)
        else:
            amps = np.array([complex(re, im) for re, im in init["amplitudes"]])
            if amps.size != 2**n:
                raise CircuitFormatError("initial statevector has the wrong dimension")
            try:
                initial = PureState(amps)
            except ValueError as exc:
                raise CircuitFormatError(str(exc)) from exc
    return circuit, initial


def circuit_to_document(circuit: Circuit, initial: PureState | None = None,
                        metadata: dict | None = None) -> dict:
    document: dict = {
        "version": DOCUMENT_VERSION,
        "qubit_count": circuit.qubit_count,
        "steps": [_step_to_record(step) for step in circuit.steps],
    }
    if metadata:
        document["metadata"] = metadata
    if initial is not None:
        document["initial"] = {
            "kind": "statevector",
            "amplitudes": [[float(a.real), float(a.imag)] for a in initial.amplitudes],
        }
    validate_document(document)
    return document


def load_circuit_file(path) -> tuple[Circuit, PureState | None]:
    try:
        document = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return circuit_from_document(document)


def save_circuit_file(path, circuit: Circuit, initial: PureState | None = None,
                      metadata: dict | None = None) -> Path:
    path = Path(path)
    path.write_text(json.dumps(circuit_to_document(circuit, initial, metadata),
                               indent=2, sort_keys=True) + "\n")
    return path


def _condition(record: dict | None) -> ClassicalCondition | None:
    if record is None:
        return None
    return ClassicalCondition(record["qubit"], record["bit"])
