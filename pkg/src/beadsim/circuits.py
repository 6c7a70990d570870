"""Circuits with projective measurements, classical control, and branch tracking.

Running a circuit never samples: measurement steps split every branch into
both outcomes (zero-probability branches are kept with probability 0), and a
mix step collapses the branch table into the probability-weighted density
operator.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .gates import GateSpec, apply_gate, apply_gate_fraction
from .geometry import as_unit_vector
from .states import (
    DensityOperator,
    PureState,
    State,
    as_density_matrix,
    direction_observable,
    ket,
)

PROB_TOL = 1e-9


@dataclass(frozen=True)
class Measurement:
    qubit: int
    direction: tuple[float, float, float] = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class MixBranches:
    pass


@dataclass(frozen=True)
class ClassicalCondition:
    """Apply the conditioned gate only in branches where `qubit` read `bit`."""

    qubit: int
    bit: int


@dataclass(frozen=True)
class GateStep:
    gate: GateSpec
    condition: ClassicalCondition | None = None


Step = GateStep | Measurement | MixBranches


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        measured: set[int] = set()
        for i, step in enumerate(self.steps):
            if isinstance(step, GateStep):
                qubits = step.gate.qubits
                if any(q < 1 or q > self.qubit_count for q in qubits):
                    raise ValueError(f"step {i}: gate qubits {qubits} out of range")
                if step.condition is not None and step.condition.qubit not in measured:
                    raise ValueError(f"step {i}: classical condition on unmeasured qubit")
            elif isinstance(step, Measurement):
                if not 1 <= step.qubit <= self.qubit_count:
                    raise ValueError(f"step {i}: measured qubit out of range")
                as_unit_vector(step.direction)
                measured.add(step.qubit)
            elif isinstance(step, MixBranches):
                if not measured:
                    raise ValueError(f"step {i}: mix requires a preceding measurement")
            else:
                raise TypeError(f"unknown step type {type(step)!r}")


@dataclass(frozen=True)
class MeasurementBranch:
    """One branch of the outcome tree: recorded bits, weight, post state."""

    outcomes: tuple[tuple[int, int], ...]  # ((qubit, bit), ...)
    probability: float
    post_state: State

    @property
    def bits(self) -> dict[int, int]:
        return dict(self.outcomes)

    def label(self) -> str:
        return "".join(str(bit) for _, bit in self.outcomes) or "-"


def _apply_local(amps: np.ndarray, op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    axes = [qubit - 1]
    rest = [a for a in range(n) if a != qubit - 1]
    tensor = amps.reshape((2,) * n).transpose(axes + rest).reshape(2, -1)
    tensor = op @ tensor
    inverse = np.argsort(axes + rest)
    return tensor.reshape((2,) * n).transpose(inverse).reshape(-1)


def _measure_pure(state: PureState, qubit: int, direction) -> list[tuple[int, float, PureState]]:
    """Both measurement outcomes of one qubit: (bit, probability, post state)."""
    sigma = direction_observable(as_unit_vector(direction))
    eye = np.eye(2)
    n = state.qubit_count
    # unitary exchanging the two eigenstates of sigma, for the p = 0 fallback
    w, V = np.linalg.eigh(sigma)
    exchange = V @ np.array([[0, 1], [1, 0]], dtype=complex) @ V.conj().T
    out = []
    for bit, sign in ((0, +1.0), (1, -1.0)):
        proj = (eye + sign * sigma) / 2.0
        amps = _apply_local(state.amplitudes, proj, qubit, n)
        p = float(np.linalg.norm(amps) ** 2)
        if p > PROB_TOL:
            out.append((bit, p, PureState(amps / np.linalg.norm(amps))))
        else:
            # impossible outcome: keep a displayable state by flipping the
            # measured qubit inside the measurement frame, then projecting
            flipped = _apply_local(state.amplitudes, proj @ exchange, qubit, n)
            out.append((bit, 0.0, PureState(flipped / np.linalg.norm(flipped))))
    total = sum(p for _, p, _ in out)
    if abs(total - 1.0) > 1e-7:
        raise RuntimeError(f"branch probabilities sum to {total}")
    return out


def measure_qubit(state: PureState, qubit: int, direction) -> list[MeasurementBranch]:
    """Projective measurement along a unit vector; returns both branches.

    Bit 0 maps to the +1 eigenvalue ("up"), bit 1 to -1, and zero-probability
    branches are retained with probability 0.
    """
    if not isinstance(state, PureState):
        raise TypeError("measure_qubit acts on pure states")
    n = state.qubit_count
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} out of range 1..{n}")
    return [
        MeasurementBranch(((qubit, bit),), p, post)
        for bit, p, post in _measure_pure(state, qubit, direction)
    ]


def measure_density(
    state: DensityOperator, qubit: int, direction
) -> list[tuple[int, float, DensityOperator]]:
    """Projective measurement of a density operator (mixed-state branch paths)."""
    sigma = direction_observable(as_unit_vector(direction))
    n = state.qubit_count
    out = []
    for bit, sign in ((0, +1.0), (1, -1.0)):
        proj = _embed((np.eye(2) + sign * sigma) / 2.0, qubit, n)
        mat = proj @ state.matrix @ proj
        p = float(np.trace(mat).real)
        if p > PROB_TOL:
            out.append((bit, p, DensityOperator(mat / p)))
        else:
            out.append((bit, 0.0, state))
    return out


def _embed(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    mats = [op if q == qubit else np.eye(2) for q in range(1, n + 1)]
    full = mats[0]
    for m in mats[1:]:
        full = np.kron(full, m)
    return full


def sample_outcomes(state: PureState, qubit: int, direction, shots: int, seed: int) -> np.ndarray:
    """i.i.d. measurement bits; reproducible for a fixed seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    branches = measure_qubit(state, qubit, direction)
    p1 = branches[1].probability
    rng = np.random.default_rng(seed)
    return (rng.random(shots) < p1).astype(int)


def mix_branches(branches: list[MeasurementBranch]) -> DensityOperator:
    """Probability-weighted sum of branch density operators."""
    if not branches:
        raise ValueError("cannot mix an empty branch list")
    total = sum(b.probability for b in branches)
    if abs(total - 1.0) > PROB_TOL:
        raise ValueError(f"branch probabilities sum to {total}, expected 1")
    dim = 2 ** branches[0].post_state.qubit_count
    mat = np.zeros((dim, dim), dtype=complex)
    for b in branches:
        mat += b.probability * as_density_matrix(b.post_state)
    return DensityOperator(mat)


@dataclass(frozen=True)
class StepResult:
    """Branch table after one circuit step."""

    index: int
    step: Step
    branches: tuple[MeasurementBranch, ...]

    @property
    def is_mixed(self) -> bool:
        return any(isinstance(b.post_state, DensityOperator) for b in self.branches)


def initial_branch(circuit: Circuit, initial: State | None = None) -> MeasurementBranch:
    state = initial if initial is not None else ket("0" * circuit.qubit_count)
    if state.qubit_count != circuit.qubit_count:
        raise ValueError("initial state qubit count does not match the circuit")
    return MeasurementBranch((), 1.0, state)


def apply_step(branches: tuple[MeasurementBranch, ...], step: Step) -> tuple[MeasurementBranch, ...]:
    """Advance the branch table by one completed step."""
    if isinstance(step, GateStep):
        out = []
        for b in branches:
            if step.condition is not None and b.bits.get(step.condition.qubit) != step.condition.bit:
                out.append(b)
            else:
                out.append(replace(b, post_state=apply_gate(b.post_state, step.gate)))
        return tuple(out)
    if isinstance(step, Measurement):
        out = []
        for b in branches:
            if isinstance(b.post_state, DensityOperator):
                splits = measure_density(b.post_state, step.qubit, step.direction)
            else:
                splits = _measure_pure(b.post_state, step.qubit, step.direction)
            for bit, p, post in splits:
                out.append(MeasurementBranch(
                    b.outcomes + ((step.qubit, bit),), b.probability * p, post))
        return tuple(out)
    if isinstance(step, MixBranches):
        return (MeasurementBranch((), 1.0, mix_branches(list(branches))),)
    raise TypeError(f"unknown step type {type(step)!r}")


def run(circuit: Circuit, initial: State | None = None) -> list[StepResult]:
    """Execute all steps, returning the branch table after each one."""
    branches = (initial_branch(circuit, initial),)
    results = []
    for i, step in enumerate(circuit.steps):
        branches = apply_step(branches, step)
        results.append(StepResult(i, step, branches))
    return results


def branches_at(circuit: Circuit, step_index: int, initial: State | None = None) -> tuple[MeasurementBranch, ...]:
    """Branch table after `step_index` completed steps (0 = initial state)."""
    branches = (initial_branch(circuit, initial),)
    for step in circuit.steps[:step_index]:
        branches = apply_step(branches, step)
    return branches


def branches_at_fraction(
    circuit: Circuit, step_index: int, t: float, initial: State | None = None
) -> tuple[MeasurementBranch, ...]:
    """Branch table mid-step: gate steps apply exp(-iGt); other steps complete."""
    branches = branches_at(circuit, step_index, initial)
    if step_index >= len(circuit.steps):
        return branches
    step = circuit.steps[step_index]
    if isinstance(step, GateStep):
        out = []
        for b in branches:
            if step.condition is not None and b.bits.get(step.condition.qubit) != step.condition.bit:
                out.append(b)
            else:
                out.append(replace(b, post_state=apply_gate_fraction(b.post_state, step.gate, t)))
        return tuple(out)
    return apply_step(branches, step)
