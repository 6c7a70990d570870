"""Total, connected, and compound correlation functions of pure states.

Connected (covariance-like) correlations are isolated by removing every
product of lower-order expectations from the density operator in the Pauli
product basis; the resulting modified operator feeds the E-Beads, its
complement the C-Beads. The separation is defined for pure states only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .beads import BeadSet, ScalingConfig, bead_coefficients
from .geometry import as_unit_vector
from .lisa import decompose, label_catalog, pauli_string_matrix
from .states import (
    DensityOperator,
    PureState,
    State,
    as_density_matrix,
    pauli_expectation,
)

PURITY_TOL = 1e-6
OMIT_NORM = 1e-9

AXES = "xyz"


def total_corr(state: State, subset, directions) -> float:
    """⟨∏_{k∈subset} σ_{k,r_k}⟩ for unit measurement directions."""
    subset = tuple(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    vectors = [as_unit_vector(d) for d in directions]
    if len(vectors) != len(subset):
        raise ValueError("one direction per measured qubit required")
    total = 0.0
    for axes in itertools.product(range(3), repeat=len(subset)):
        weight = float(np.prod([vec[a] for vec, a in zip(vectors, axes)]))
        if abs(weight) < 1e-15:
            continue
        assignment = {q: AXES[a] for q, a in zip(subset, axes)}
        total += weight * pauli_expectation(state, assignment)
    return total


def _require_pure(state: State) -> None:
    purity = state.purity() if isinstance(state, DensityOperator) else 1.0
    if purity < 1.0 - PURITY_TOL:
        raise ValueError(
            "connected/compound separation is defined for pure states only "
            f"(purity {purity:.6f}); total correlation beads remain available"
        )


def connected_corr(state: State, subset, directions) -> float:
    """Ursell-connected correlation for a 2- or 3-qubit subset of a pure state."""
    subset = tuple(subset)
    if len(subset) not in (2, 3):
        raise ValueError("connected correlations are defined for 2 or 3 qubits")
    _require_pure(state)
    vecs = [as_unit_vector(d) for d in directions]
    singles = {q: total_corr(state, (q,), [v]) for q, v in zip(subset, vecs)}
    if len(subset) == 2:
        t = total_corr(state, subset, vecs)
        return t - singles[subset[0]] * singles[subset[1]]
    q1, q2, q3 = subset
    v1, v2, v3 = vecs
    t123 = total_corr(state, subset, vecs)
    t12 = total_corr(state, (q1, q2), [v1, v2])
    t13 = total_corr(state, (q1, q3), [v1, v3])
    t23 = total_corr(state, (q2, q3), [v2, v3])
    a, b, c = singles[q1], singles[q2], singles[q3]
    return t123 - a * t23 - b * t13 - c * t12 + 2.0 * a * b * c


def _pauli_tensors(state: State):
    """Single-qubit vectors a_k[axis] and pair tensors t[(k,l)][axis,axis]."""
    n = state.qubit_count
    singles = {
        q: np.array([pauli_expectation(state, {q: ax}) for ax in AXES])
        for q in range(1, n + 1)
    }
    pairs = {}
    for k, l in itertools.combinations(range(1, n + 1), 2):
        t = np.empty((3, 3))
        for i, ax1 in enumerate(AXES):
            for j, ax2 in enumerate(AXES):
                t[i, j] = pauli_expectation(state, {k: ax1, l: ax2})
        pairs[(k, l)] = t
    return singles, pairs


def connected_operator(state: State) -> np.ndarray:
    """Modified operator with every compound correlation removed.

    Multilinear Pauli coefficients of the result are the connected
    correlations; for product states they all vanish.
    """
    _require_pure(state)
    rho = as_density_matrix(state)
    n = state.qubit_count
    if n == 1:
        return rho.copy()
    singles, pairs = _pauli_tensors(state)
    out = rho.astype(complex).copy()
    if n == 2:
        for i, a1 in enumerate(AXES):
            for j, a2 in enumerate(AXES):
                w = singles[1][i] * singles[2][j]
                if w != 0.0:
                    out -= 0.25 * w * pauli_string_matrix(2, {1: a1, 2: a2})
        return out
    # three qubits: remove triple products, pair x single, and pure pair-product terms
    for i, a1 in enumerate(AXES):
        for j, a2 in enumerate(AXES):
            for k, a3 in enumerate(AXES):
                w = singles[1][i] * singles[2][j] * singles[3][k]
                if w != 0.0:
                    out += 0.25 * w * pauli_string_matrix(3, {1: a1, 2: a2, 3: a3})
    for (k, l), spectator in (((1, 2), 3), ((1, 3), 2), ((2, 3), 1)):
        t = pairs[(k, l)]
        for i, a1 in enumerate(AXES):
            for j, a2 in enumerate(AXES):
                if t[i, j] == 0.0:
                    continue
                for m, a3 in enumerate(AXES):
                    w = t[i, j] * singles[spectator][m]
                    if w != 0.0:
                        out -= 0.125 * w * pauli_string_matrix(
                            3, {k: a1, l: a2, spectator: a3})
        for i, a1 in enumerate(AXES):
            for j, a2 in enumerate(AXES):
                w = singles[k][i] * singles[l][j]
                if w != 0.0:
                    out -= 0.125 * w * pauli_string_matrix(3, {k: a1, l: a2})
    return out


@dataclass(frozen=True)
class CorrelationDecomposition:
    """E/C/T bead sets of one pure state plus entanglement norms."""

    rho: State
    rho_tilde: np.ndarray = field(compare=False)
    t_beads: BeadSet = field(compare=False)
    e_beads: BeadSet = field(compare=False)
    c_beads: BeadSet = field(compare=False)
    entanglement_norm_total: float = 0.0
    entanglement_norm_per_label: dict[str, float] = field(default_factory=dict, compare=False)

    def omit_flags(self) -> dict[str, bool]:
        """Correlation beads below the display norm threshold; Q-Beads never omitted."""
        flags = {}
        for label in label_catalog(self.rho.qubit_count):
            if label.linearity <= 1:
                flags[label.key] = False
            else:
                flags[label.key] = self.e_beads.norm(label) < OMIT_NORM
        return flags


def correlation_beads(state: State, config: ScalingConfig | None = None) -> CorrelationDecomposition:
    """Split a pure state's beads into total/connected/compound content."""
    config = config or ScalingConfig()
    _require_pure(state)
    rho = as_density_matrix(state)
    tilde = connected_operator(state)
    compound = rho - tilde
    # compound part carries only multilinear content by construction
    t_beads = bead_coefficients(rho, config)
    e_beads = bead_coefficients(tilde, config)
    c_beads = _multilinear_only(bead_coefficients(compound, config))
    total, per_label = entanglement_norm(state)
    return CorrelationDecomposition(
        rho=state if isinstance(state, (PureState, DensityOperator)) else DensityOperator(rho),
        rho_tilde=tilde,
        t_beads=t_beads,
        e_beads=e_beads,
        c_beads=c_beads,
        entanglement_norm_total=total,
        entanglement_norm_per_label=per_label,
    )


def _multilinear_only(beadset: BeadSet) -> BeadSet:
    """Zero out identity and linear beads (C beads carry multilinear content only)."""
    beads = {}
    norms = {}
    for key, bead in beadset.beads.items():
        if bead.label.linearity <= 1:
            beads[key] = type(bead)(bead.label, {k: 0.0 for k in bead.coefficients})
            norms[key] = 0.0
        else:
            beads[key] = bead
            norms[key] = beadset.norms[key]
    return BeadSet(beadset.n_qubits, beadset.config, beads, norms)


def entanglement_norm(state: State) -> tuple[float, dict[str, float]]:
    """Norm of the connected operator with identity and linear parts removed."""
    _require_pure(state)
    tilde = connected_operator(state)
    dec = decompose(tilde)
    per_label = {}
    total_sq = 0.0
    for label in label_catalog(state.qubit_count):
        if label.linearity <= 1:
            continue
        norm = dec.component_norm(label)
        per_label[label.key] = norm
        total_sq += norm * norm
    return float(np.sqrt(total_sq)), per_label
