"""Pure states and density operators for 1-3 qubits.

Basis ordering is big-endian: qubit 1 is the most significant bit of the
computational basis index. All objects are immutable value types.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import as_unit_vector
from .lisa import MAX_QUBITS, PAULI, pauli_string_matrix

NORM_TOL = 1e-9
HERM_TOL = 1e-10
EIG_TOL = 1e-9


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.flags.writeable = False
    return arr


def _qubit_count(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"dimension {dim} does not describe 1..{MAX_QUBITS} qubits")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized complex state vector of length 2^N."""

    amplitudes: np.ndarray = field(compare=False)

    def __post_init__(self):
        amps = _freeze(np.asarray(self.amplitudes, dtype=complex).ravel())
        object.__setattr__(self, "amplitudes", amps)
        _qubit_count(amps.size)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {norm} differs from 1 beyond {NORM_TOL}")

    @property
    def qubit_count(self) -> int:
        return _qubit_count(self.amplitudes.size)

    @property
    def matrix(self) -> np.ndarray:
        """Projector |ψ⟩⟨ψ|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityOperator":
        return DensityOperator(self.matrix)

    def fidelity(self, other: "PureState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, trace-one, positive-semidefinite 2^N x 2^N matrix."""

    matrix: np.ndarray = field(compare=False)

    def __post_init__(self):
        mat = _freeze(np.asarray(self.matrix, dtype=complex))
        object.__setattr__(self, "matrix", mat)
        n = _qubit_count(mat.shape[0])
        if mat.shape != (2**n, 2**n):
            raise ValueError("density matrix must be square")
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise ValueError("density matrix must be Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > HERM_TOL:
            raise ValueError(f"density matrix trace {trace} differs from 1")
        if np.min(np.linalg.eigvalsh(mat)) < -EIG_TOL:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def qubit_count(self) -> int:
        return _qubit_count(self.matrix.shape[0])

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


State = PureState | DensityOperator


def as_density_matrix(state: State | np.ndarray) -> np.ndarray:
    if isinstance(state, PureState):
        return state.matrix
    if isinstance(state, DensityOperator):
        return state.matrix
    return np.asarray(state, dtype=complex)


def qubit_count_of(state: State) -> int:
    return state.qubit_count


def ket(bits: str) -> PureState:
    """Computational basis state from a bit string, qubit 1 first."""
    n = len(bits)
    amps = np.zeros(2**n, dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(amps)


def tensor(*states: PureState) -> PureState:
    amps = states[0].amplitudes
    for s in states[1:]:
        amps = np.kron(amps, s.amplitudes)
    return PureState(amps)


def plus_state() -> PureState:
    return PureState(np.array([1, 1]) / np.sqrt(2))


def minus_state() -> PureState:
    return PureState(np.array([1, -1]) / np.sqrt(2))


def y_plus_state() -> PureState:
    """|R⟩ = (|0⟩ + i|1⟩)/√2."""
    return PureState(np.array([1, 1j]) / np.sqrt(2))


def y_minus_state() -> PureState:
    """|L⟩ = (|0⟩ - i|1⟩)/√2."""
    return PureState(np.array([1, -1j]) / np.sqrt(2))


def bell_state(kind: str = "phi+") -> PureState:
    s = 1 / np.sqrt(2)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}")
    return PureState(np.array(table[kind]))


def ghz_state() -> PureState:
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return PureState(amps)


def w_state() -> PureState:
    amps = np.zeros(8, dtype=complex)
    amps[1] = amps[2] = amps[4] = 1 / np.sqrt(3)
    return PureState(amps)


def schmidt_state(theta: float) -> PureState:
    """cos(θ/2)|00⟩ + sin(θ/2)|11⟩."""
    amps = np.zeros(4, dtype=complex)
    amps[0] = np.cos(theta / 2)
    amps[3] = np.sin(theta / 2)
    return PureState(amps)


def random_pure_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    amps = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return PureState(amps / np.linalg.norm(amps))


def random_product_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    return tensor(*(random_pure_state(1, rng) for _ in range(n_qubits)))


def random_density(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    dim = 2**n_qubits
    rank = rank or dim
    probs = rng.dirichlet(np.ones(rank))
    mat = np.zeros((dim, dim), dtype=complex)
    for p in probs:
        psi = random_pure_state(n_qubits, rng)
        mat += p * psi.matrix
    return DensityOperator(mat)


def partial_trace(state: State, keep: tuple[int, ...] | list[int]) -> DensityOperator:
    """Reduced density operator on the (1-based) qubits in `keep`."""
    keep = tuple(sorted(set(keep)))
    n = state.qubit_count
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(q < 1 or q > n for q in keep):
        raise ValueError(f"keep set {keep} outside 1..{n}")
    rho = as_density_matrix(state).reshape((2,) * (2 * n))
    trace_out = [q for q in range(1, n + 1) if q not in keep]
    for q in sorted(trace_out, reverse=True):
        rho = np.trace(rho, axis1=q - 1, axis2=q - 1 + (rho.ndim // 2))
    k = len(keep)
    return DensityOperator(rho.reshape((2**k, 2**k)))


def expectation(state: State, observable: np.ndarray, herm_tol: float = 1e-9) -> float:
    """Real expectation value Tr(ρ O) of a Hermitian observable."""
    obs = np.asarray(observable, dtype=complex)
    if np.max(np.abs(obs - obs.conj().T)) > herm_tol:
        raise ValueError("observable must be Hermitian")
    rho = as_density_matrix(state)
    if rho.shape != obs.shape:
        raise ValueError("observable dimension does not match the state")
    value = complex(np.trace(rho @ obs))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {value.imag}")
    return float(value.real)


def pauli_expectation(state: State, assignment: dict[int, str]) -> float:
    """⟨∏ σ_{q,axis}⟩ for a qubit -> axis assignment."""
    return expectation(state, pauli_string_matrix(state.qubit_count, assignment))


def direction_observable(direction) -> np.ndarray:
    """Single-qubit σ·r for a unit vector r."""
    r = as_unit_vector(direction)
    return r[0] * PAULI["x"] + r[1] * PAULI["y"] + r[2] * PAULI["z"]


def bloch_vector(state: State, qubit: int) -> np.ndarray:
    """(⟨σx⟩, ⟨σy⟩, ⟨σz⟩) of the reduced state of one qubit."""
    reduced = partial_trace(state, (qubit,))
    return np.array([expectation(reduced, PAULI[axis]) for axis in "xyz"])


def fidelity(state: State, other: State) -> float:
    """Overlap fidelity; at least one argument effectively pure here (N ≤ 3)."""
    if isinstance(state, PureState) and isinstance(other, PureState):
        return state.fidelity(other)
    rho = as_density_matrix(state)
    sigma = as_density_matrix(other)
    if isinstance(state, PureState):
        return float((state.amplitudes.conj() @ sigma @ state.amplitudes).real)
    if isinstance(other, PureState):
        return float((other.amplitudes.conj() @ rho @ other.amplitudes).real)
    w, V = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    sq = V @ np.diag(np.sqrt(w)) @ V.conj().T
    inner = sq @ sigma @ sq
    ev = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.sum(np.sqrt(ev)) ** 2)
