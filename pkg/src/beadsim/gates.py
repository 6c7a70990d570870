"""Gate catalog and time-parametrized propagators.

Every gate carries a Hermitian generator G over its own qubits with
exp(-iG) equal to the catalog unitary up to global phase; fractional
application exp(-iGt) defines the intra-gate dynamics. Single-qubit
rotations use G = (angle/2) n·σ so the Bloch picture rotates the
conventional way; controlled gates use projector generators, which make
exp(-iG) exactly the catalog unitary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import as_unit_vector, direction_vector
from .lisa import PAULI
from .states import DensityOperator, PureState, State

UNITARY_TOL = 1e-10


def expm_hermitian(H: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(-i H t) for Hermitian H via eigendecomposition."""
    H = np.asarray(H, dtype=complex)
    if np.max(np.abs(H - H.conj().T)) > 1e-9:
        raise ValueError("generator must be Hermitian")
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * w * t)) @ V.conj().T


@dataclass(frozen=True)
class GateSpec:
    """A named unitary on specific qubits, defined through its generator."""

    name: str
    qubits: tuple[int, ...]
    generator: np.ndarray = field(compare=False)
    controls: tuple[int, ...] = ()
    parameter: float | None = None

    def __post_init__(self):
        gen = np.array(self.generator, dtype=complex)
        gen.flags.writeable = False
        object.__setattr__(self, "generator", gen)
        dim = 2 ** len(self.qubits)
        if gen.shape != (dim, dim):
            raise ValueError(f"generator shape {gen.shape} does not match {len(self.qubits)} qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate qubits must be distinct")
        U = expm_hermitian(gen)
        if np.max(np.abs(U @ U.conj().T - np.eye(dim))) > UNITARY_TOL:
            raise ValueError("generator does not produce a unitary")

    @property
    def unitary(self) -> np.ndarray:
        return expm_hermitian(self.generator)


def _axis_generator(axis, angle: float) -> np.ndarray:
    n = as_unit_vector(axis)
    sigma = n[0] * PAULI["x"] + n[1] * PAULI["y"] + n[2] * PAULI["z"]
    return (angle / 2.0) * sigma


def _projector(bit: int) -> np.ndarray:
    p = np.zeros((2, 2), dtype=complex)
    p[bit, bit] = 1.0
    return p


def _controlled_generator(n_controls: int, target_gen: np.ndarray) -> np.ndarray:
    """Generator acting only on the all-ones control subspace."""
    proj = np.ones((1, 1), dtype=complex)
    for _ in range(n_controls):
        proj = np.kron(proj, _projector(1))
    return np.kron(proj, target_gen)


_CYCLE_AXIS = direction_vector(np.arctan(np.sqrt(2.0)), np.pi / 4)


def gate(name: str, qubits, parameter: float | None = None, axis=None) -> GateSpec:
    """Build a catalog gate. `qubits` is (controls..., targets...) for controlled gates."""
    qubits = tuple(int(q) for q in (qubits if np.iterable(qubits) else (qubits,)))
    name = name.lower()
    single = {
        "x": ((1, 0, 0), np.pi),
        "y": ((0, 1, 0), np.pi),
        "z": ((0, 0, 1), np.pi),
        "sx": ((1, 0, 0), np.pi / 2),
        "sy": ((0, 1, 0), np.pi / 2),
        "sz": ((0, 0, 1), np.pi / 2),
        "sxdg": ((1, 0, 0), -np.pi / 2),
        "sydg": ((0, 1, 0), -np.pi / 2),
        "szdg": ((0, 0, 1), -np.pi / 2),
        "h": ((1 / np.sqrt(2), 0, 1 / np.sqrt(2)), np.pi),
        "cycle": (tuple(_CYCLE_AXIS), 2 * np.pi / 3),
        "cycledg": (tuple(_CYCLE_AXIS), -2 * np.pi / 3),
    }
    if name in single:
        ax, angle = single[name]
        _expect_qubits(name, qubits, 1)
        return GateSpec(name, qubits, _axis_generator(ax, angle))
    if name == "phase":
        _expect_qubits(name, qubits, 1)
        if parameter is None:
            raise ValueError("phase gate needs an angle parameter")
        return GateSpec(name, qubits, _axis_generator((0, 0, 1), parameter), parameter=parameter)
    if name == "rot":
        _expect_qubits(name, qubits, 1)
        if parameter is None or axis is None:
            raise ValueError("rot gate needs axis and angle")
        return GateSpec(name, qubits, _axis_generator(axis, parameter), parameter=parameter)
    if name in ("cnot", "cx"):
        _expect_qubits(name, qubits, 2)
        gen = _controlled_generator(1, np.pi * (np.eye(2) - PAULI["x"]) / 2)
        return GateSpec("cnot", qubits, gen, controls=qubits[:1])
    if name == "cz":
        _expect_qubits(name, qubits, 2)
        gen = _controlled_generator(1, np.pi * _projector(1))
        return GateSpec("cz", qubits, gen, controls=qubits[:1])
    if name == "cphase":
        _expect_qubits(name, qubits, 2)
        if parameter is None:
            raise ValueError("cphase gate needs an angle parameter")
        gen = _controlled_generator(1, -parameter * _projector(1))
        return GateSpec("cphase", qubits, gen, controls=qubits[:1], parameter=parameter)
    if name == "swap":
        _expect_qubits(name, qubits, 2)
        swap = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
        return GateSpec("swap", qubits, np.pi * (np.eye(4) - swap) / 2)
    if name in ("toffoli", "ccx"):
        _expect_qubits(name, qubits, 3)
        gen = _controlled_generator(2, np.pi * (np.eye(2) - PAULI["x"]) / 2)
        return GateSpec("toffoli", qubits, gen, controls=qubits[:2])
    if name == "crot":
        # controlled rotation, optionally anti-controlled (control_bit=0) via axis sign bookkeeping
        raise ValueError("use controlled_rotation() for controlled rotations")
    raise ValueError(f"unknown gate {name!r}")


def controlled_rotation(
    control: int, target: int, axis, angle: float, control_bit: int = 1
) -> GateSpec:
    """Rotation on `target` applied when `control` reads `control_bit`."""
    gen_t = _axis_generator(axis, angle)
    gen = np.kron(_projector(control_bit), gen_t)
    return GateSpec("crot", (control, target), gen, controls=(control,), parameter=angle)


def projector_flip_gate(name: str, qubits, basis_state_index: int, dim: int) -> GateSpec:
    """Unitary I - 2|k⟩⟨k| (phase flip on one computational basis state)."""
    proj = np.zeros((dim, dim), dtype=complex)
    proj[basis_state_index, basis_state_index] = 1.0
    return GateSpec(name, tuple(qubits), np.pi * proj)


def hamiltonian_gate(name: str, qubits, hamiltonian: np.ndarray, time: float = 1.0) -> GateSpec:
    """Evolution exp(-i H t) packaged as a gate step."""
    H = np.asarray(hamiltonian, dtype=complex) * time
    return GateSpec(name, tuple(qubits), H, parameter=time)


def _expect_qubits(name: str, qubits: tuple[int, ...], count: int) -> None:
    if len(qubits) != count:
        raise ValueError(f"gate {name!r} acts on {count} qubit(s), got {qubits}")


def apply_unitary(state: State, U: np.ndarray, qubits: tuple[int, ...]) -> State:
    """Apply a unitary on the listed (1-based) qubits of a state or density operator."""
    n = state.qubit_count
    if any(q < 1 or q > n for q in qubits):
        raise ValueError(f"gate qubits {qubits} outside 1..{n}")
    k = len(qubits)
    U = np.asarray(U, dtype=complex)
    if U.shape != (2**k, 2**k):
        raise ValueError("unitary dimension does not match gate qubits")
    if isinstance(state, PureState):
        psi = _apply_vec(state.amplitudes, U, qubits, n)
        return PureState(psi)
    mat = state.matrix
    dim = mat.shape[0]
    columns = np.stack([_apply_vec(mat[:, i], U, qubits, n) for i in range(dim)], axis=1)
    rows = np.stack([_apply_vec(columns[i, :].conj(), U, qubits, n).conj() for i in range(dim)], axis=0)
    return DensityOperator(rows)


def _apply_vec(vec: np.ndarray, U: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    k = len(qubits)
    axes = [q - 1 for q in qubits]
    rest = [a for a in range(n) if a not in axes]
    tensor = vec.reshape((2,) * n).transpose(axes + rest).reshape(2**k, -1)
    tensor = U @ tensor
    inverse = np.argsort(axes + rest)
    return tensor.reshape((2,) * n).transpose(inverse).reshape(-1)


def apply_gate(state: State, spec: GateSpec) -> State:
    """Apply U = exp(-iG) to a pure state or density operator."""
    return apply_unitary(state, spec.unitary, spec.qubits)


def propagator_fraction(spec: GateSpec, t: float) -> np.ndarray:
    """exp(-iG t) on the gate's qubits; t = 0 is the identity, t = 1 the gate."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"fraction t must lie in [0, 1], got {t}")
    return expm_hermitian(spec.generator, t)


def apply_gate_fraction(state: State, spec: GateSpec, t: float) -> State:
    return apply_unitary(state, propagator_fraction(spec, t), spec.qubits)


def hamiltonian_evolution(state: State, hamiltonian: np.ndarray, t: float) -> State:
    """exp(-i H t) applied to the full register."""
    H = np.asarray(hamiltonian, dtype=complex)
    if np.max(np.abs(H - H.conj().T)) > 1e-9:
        raise ValueError("Hamiltonian must be Hermitian")
    n = state.qubit_count
    if H.shape != (2**n, 2**n):
        raise ValueError("Hamiltonian dimension does not match the state")
    U = expm_hermitian(H, t)
    return apply_unitary(state, U, tuple(range(1, n + 1)))
