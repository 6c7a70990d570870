"""Built-in state and circuit presets used by the CLI, the session protocol,
and the test fixtures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circuits import Circuit, ClassicalCondition, GateStep, Measurement, MixBranches
from .gates import GateSpec, controlled_rotation, gate, hamiltonian_gate, projector_flip_gate
from .lisa import pauli_string_matrix
from .states import PureState, ket

Z_DIR = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str  # "circuit" | "state"
    qubit_count: int
    description: str
    build: Callable[[], Circuit | PureState]
    parameter: float | None = None


def _bell_circuit(initial_bits: str) -> Circuit:
    steps = []
    for qubit, bit in enumerate(initial_bits, start=1):
        if bit == "1":
            steps.append(GateStep(gate("x", (qubit,))))
    steps.append(GateStep(gate("h", (1,))))
    steps.append(GateStep(gate("cnot", (1, 2))))
    return Circuit(2, tuple(steps))


def _ghz_circuit() -> Circuit:
    return Circuit(3, (
        GateStep(gate("h", (1,))),
        GateStep(gate("cnot", (1, 2))),
        GateStep(gate("cnot", (2, 3))),
    ))


def _w_circuit() -> Circuit:
    # amplitude sqrt(1/3) on |100>, then split the rest between |010> and |001>
    theta1 = 2.0 * np.arcsin(1.0 / np.sqrt(3.0))
    return Circuit(3, (
        GateStep(gate("rot", (1,), parameter=theta1, axis=(0, 1, 0))),
        GateStep(controlled_rotation(1, 2, (0, 1, 0), np.pi / 2, control_bit=0)),
        GateStep(_anti_anti_x()),
    ))


def _anti_anti_x() -> GateSpec:
    """X on qubit 3 when qubits 1 and 2 both read 0."""
    proj0 = np.zeros((4, 4), dtype=complex)
    proj0[0, 0] = 1.0
    x = pauli_string_matrix(1, {1: "x"})
    gen = np.kron(proj0, np.pi * (np.eye(2) - x) / 2.0)
    return GateSpec("anti-anti-x", (1, 2, 3), gen, controls=(1, 2))


def _grover2_circuit(solution: str = "01") -> Circuit:
    idx = int(solution, 2)
    return Circuit(2, (
        GateStep(gate("h", (1,))),
        GateStep(gate("h", (2,))),
        GateStep(projector_flip_gate("oracle", (1, 2), idx, 4)),
        GateStep(gate("h", (1,))),
        GateStep(gate("h", (2,))),
        GateStep(projector_flip_gate("zero-flip", (1, 2), 0, 4)),
        GateStep(gate("h", (1,))),
        GateStep(gate("h", (2,))),
    ))


def _grover3_circuit(solution: str = "011", iterations: int = 6) -> Circuit:
    idx = int(solution, 2)
    steps = [GateStep(gate("h", (q,))) for q in (1, 2, 3)]
    for _ in range(iterations):
        steps.append(GateStep(projector_flip_gate("oracle", (1, 2, 3), idx, 8)))
        steps += [GateStep(gate("h", (q,))) for q in (1, 2, 3)]
        steps.append(GateStep(projector_flip_gate("zero-flip", (1, 2, 3), 0, 8)))
        steps += [GateStep(gate("h", (q,))) for q in (1, 2, 3)]
    return Circuit(3, tuple(steps))


def _teleportation_circuit(input_state: str) -> Circuit:
    prep = {
        "one": [GateStep(gate("x", (1,)))],
        "plus": [GateStep(gate("h", (1,)))],
        "y": [GateStep(gate("sxdg", (1,)))],  # |R> = (|0> + i|1>)/sqrt(2)
    }[input_state]
    steps = prep + [
        GateStep(gate("h", (2,))),
        GateStep(gate("cnot", (2, 3))),
        GateStep(gate("cnot", (1, 2))),
        GateStep(gate("h", (1,))),
        Measurement(1, Z_DIR),
        Measurement(2, Z_DIR),
        GateStep(gate("x", (3,)), ClassicalCondition(2, 1)),
        GateStep(gate("z", (3,)), ClassicalCondition(1, 1)),
        MixBranches(),
    ]
    return Circuit(3, tuple(steps))


def _graph_circuit(edges: tuple[tuple[int, int], ...], n_qubits: int = 3) -> Circuit:
    steps = [GateStep(gate("h", (q,))) for q in range(1, n_qubits + 1)]
    steps += [GateStep(gate("cz", e)) for e in edges]
    return Circuit(n_qubits, tuple(steps))


def _nmr_cnot_circuit() -> Circuit:
    """Pulse-and-coupling product realizing a CNOT up to global phase."""
    sy2 = pauli_string_matrix(2, {2: "y"})
    szz = pauli_string_matrix(2, {1: "z", 2: "z"})
    sx2 = pauli_string_matrix(2, {2: "x"})
    sz1 = pauli_string_matrix(2, {1: "z"})
    sz2 = pauli_string_matrix(2, {2: "z"})
    return Circuit(2, (
        GateStep(gate("h", (1,))),  # prepare |-1>: |0>->|-> needs x flip afterwards
        GateStep(gate("z", (1,))),
        GateStep(gate("x", (2,))),
        GateStep(hamiltonian_gate("pulse-90y", (1, 2), np.pi / 4 * sy2)),
        GateStep(hamiltonian_gate("ising-zz", (1, 2), np.pi / 4 * szz)),
        GateStep(hamiltonian_gate("pulse-90x", (1, 2), np.pi / 4 * sx2)),
        GateStep(hamiltonian_gate("pulse-z", (1, 2), np.pi / 4 * (sz1 - sz2))),
    ))


def nmr_cnot_unitary() -> np.ndarray:
    """The raw four-factor propagator product (rightmost factor acts first)."""
    from .gates import expm_hermitian

    sy2 = pauli_string_matrix(2, {2: "y"})
    szz = pauli_string_matrix(2, {1: "z", 2: "z"})
    sx2 = pauli_string_matrix(2, {2: "x"})
    sz1 = pauli_string_matrix(2, {1: "z"})
    sz2 = pauli_string_matrix(2, {2: "z"})
    U = expm_hermitian(np.pi / 4 * sy2)
    U = expm_hermitian(np.pi / 4 * szz) @ U
    U = expm_hermitian(np.pi / 4 * sx2) @ U
    U = expm_hermitian(np.pi / 4 * (sz1 - sz2)) @ U
    return U


def _schmidt_circuit(theta: float) -> Circuit:
    return Circuit(2, (
        GateStep(gate("rot", (1,), parameter=theta, axis=(0, 1, 0))),
        GateStep(gate("cnot", (1, 2))),
    ))


def _gub_state(which: str) -> PureState:
    """Unitary-bound fixture states (θ = 0 members) for each non-symmetric bead."""
    s2 = 1 / np.sqrt(2)
    amps = np.zeros(8, dtype=complex)
    table: dict[str, dict[int, complex]] = {
        "12_odd+": {0b010: s2, 0b100: -1j * s2},
        "12_odd-": {0b010: s2, 0b100: +1j * s2},
        "13_odd+": {0b001: s2, 0b100: -1j * s2},
        "13_odd-": {0b001: s2, 0b100: +1j * s2},
        "23_odd+": {0b001: s2, 0b010: -1j * s2},
        "23_odd-": {0b001: s2, 0b010: +1j * s2},
        "tau2_odd+": {
            0b011: 0.5 * np.sqrt(1 + 1 / np.sqrt(3)),
            0b101: 0.5 * np.sqrt(1 + 1 / np.sqrt(3)),
            0b110: -s2 * np.sqrt(1 - 1 / np.sqrt(3)),
        },
        "tau2_odd-": {
            0b010: 0.5 * np.sqrt(1 + 1 / np.sqrt(3)),
            0b100: 0.5 * np.sqrt(1 + 1 / np.sqrt(3)),
            0b001: -s2 * np.sqrt(1 - 1 / np.sqrt(3)),
        },
        "tau2_even+": {0b100: 0.5, 0b010: 0.5, 0b001: -1j * s2},
        "tau2_even-": {0b100: 0.5, 0b010: 0.5, 0b001: +1j * s2},
        "tau3_odd+": {0b010: 0.5, 0b100: -0.5, 0b001: s2},
        "tau3_odd-": {0b100: 0.5, 0b010: -0.5, 0b001: s2},
        "tau3_even+": {
            0b001: 1 / np.sqrt(6),
            0b010: 1 / np.sqrt(6) - 0.5j,
            0b100: 1 / np.sqrt(6) + 0.5j,
        },
        "tau3_even-": {
            0b001: 1 / np.sqrt(6),
            0b010: 1 / np.sqrt(6) + 0.5j,
            0b100: 1 / np.sqrt(6) - 0.5j,
        },
        "tau4_even+": {
            0b001: 1 / np.sqrt(3),
            0b010: -(1 + np.sqrt(3) * 1j) / (2 * np.sqrt(3)),
            0b100: -(1 - np.sqrt(3) * 1j) / (2 * np.sqrt(3)),
        },
        "tau4_even-": {
            0b001: 1 / np.sqrt(3),
            0b010: -(1 - np.sqrt(3) * 1j) / (2 * np.sqrt(3)),
            0b100: -(1 + np.sqrt(3) * 1j) / (2 * np.sqrt(3)),
        },
    }
    entries = table[which]
    for idx, amp in entries.items():
        amps[idx] = amp
    norm = np.linalg.norm(amps)
    return PureState(amps / norm)


GUB_FIXTURES = {
    # preset suffix -> (bead label key, expected z value sign)
    "12_odd": "12_odd",
    "13_odd": "13_odd",
    "23_odd": "23_odd",
    "tau2_odd": "123_tau2_odd",
    "tau2_even": "123_tau2_even",
    "tau3_odd": "123_tau3_odd",
    "tau3_even": "123_tau3_even",
    "tau4_even": "123_tau4_even",
}


def _build_registry() -> dict[str, Preset]:
    presets: list[Preset] = []
    bell_variants = {
        "bell-phi-plus": "00",
        "bell-psi-plus": "01",
        "bell-phi-minus": "10",
        "bell-psi-minus": "11",
    }
    for name, bits in bell_variants.items():
        presets.append(Preset(name, "circuit", 2,
                              f"Bell pair from |{bits}> via H and CNOT",
                              lambda bits=bits: _bell_circuit(bits)))
    presets.append(Preset("ghz", "circuit", 3, "GHZ preparation", _ghz_circuit))
    presets.append(Preset("w", "circuit", 3, "W-state preparation", _w_circuit))
    presets.append(Preset("grover2", "circuit", 2,
                          "two-qubit search, solution 01", _grover2_circuit))
    presets.append(Preset("grover3", "circuit", 3,
                          "three-qubit search, solution 011, six iterations", _grover3_circuit))
    for inp, tag in (("one", "one"), ("plus", "plus"), ("y", "y")):
        presets.append(Preset(f"teleportation-{tag}", "circuit", 3,
                              f"teleportation of the {tag} input",
                              lambda inp=inp: _teleportation_circuit(inp)))
    presets.append(Preset("graph-path", "circuit", 3, "path graph 1-2-3",
                          lambda: _graph_circuit(((1, 2), (2, 3)))))
    presets.append(Preset("graph-triangle", "circuit", 3, "triangle graph",
                          lambda: _graph_circuit(((1, 2), (2, 3), (1, 3)))))
    presets.append(Preset("graph-edge", "circuit", 2, "single-edge graph",
                          lambda: _graph_circuit(((1, 2),), 2)))
    presets.append(Preset("nmr-cnot", "circuit", 2,
                          "pulse-sequence CNOT applied to |-1>", _nmr_cnot_circuit))
    for theta_name, theta in (("0", 0.0), ("pi8", np.pi / 8), ("pi4", np.pi / 4),
                              ("3pi8", 3 * np.pi / 8), ("pi2", np.pi / 2)):
        presets.append(Preset(f"schmidt-{theta_name}", "circuit", 2,
                              f"Schmidt-form state, theta = {theta:.4f}",
                              lambda theta=theta: _schmidt_circuit(theta),
                              parameter=theta))
    for suffix in GUB_FIXTURES:
        for sign in "+-":
            key = f"{suffix}{sign}"
            name = f"gub-{suffix.replace('_', '-')}-{'plus' if sign == '+' else 'minus'}"
            presets.append(Preset(name, "state", 3,
                                  f"unitary-bound fixture for {GUB_FIXTURES[suffix]} ({sign}1)",
                                  lambda key=key: _gub_state(key)))
    presets.append(Preset("zero-zero", "state", 2, "|00> product state", lambda: ket("00")))
    return {p.name: p for p in presets}


PRESETS = _build_registry()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; see `beadsim presets`") from None
