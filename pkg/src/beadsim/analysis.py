"""Procedures built on top of beads: asymmetric correlations read off bead
surfaces, CHSH and GHZ-Mermin tests, Grover success probabilities, graph
state utilities, and scanning tomography with scaled axial operators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .beads import BeadSet, ScalingConfig, bead_coefficients, scale_factor, xi, zeta
from .circuits import measure_density, measure_qubit
from .gates import apply_unitary, expm_hermitian, gate
from .geometry import as_unit_vector, direction_vector
from .harmonics import real_sph_harm
from .lisa import (
    BeadLabel,
    label_catalog,
    lisa_operator,
    operator_catalog,
    pauli_string_matrix,
    pauli_terms,
)
from .states import (
    DensityOperator,
    PureState,
    State,
    as_density_matrix,
    expectation,
    ket,
    pauli_expectation,
    plus_state,
    tensor,
)

AXES = "xyz"

# prescribed sampling directions (θ, φ) for reading bead surfaces
DIR_Z = (0.0, 0.0)
DIR_X = (np.pi / 2, 0.0)
DIR_Y = (np.pi / 2, np.pi / 2)
DIR_XY = (np.pi / 2, np.pi / 4)
DIR_XZ = (np.pi / 4, 0.0)
DIR_YZ = (np.pi / 4, np.pi / 2)

EVEN_PAIR_DIRECTIONS = [DIR_Z, DIR_X, DIR_Y, DIR_XY, DIR_XZ, DIR_YZ]
ODD_AXIS_DIRECTIONS = {-1: DIR_Y, 0: DIR_Z, 1: DIR_X}

_ACOS_ROOT = float(np.arccos(np.sqrt(3.0 / 5.0)))
TAU1_DIRECTIONS = [
    DIR_Z,
    DIR_X,
    (np.pi / 2, 3 * np.pi / 2),        # -y
    DIR_XY,
    (np.pi / 2, 3 * np.pi / 4),        # (-x)y bisector
    (_ACOS_ROOT, 0.0),
    (np.pi - _ACOS_ROOT, 0.0),
    (_ACOS_ROOT, np.pi / 4),
    (np.pi - _ACOS_ROOT, np.pi / 4),
    (_ACOS_ROOT, 3 * np.pi / 4),
]
EVEN_TAU_DIRECTIONS = [DIR_Z, DIR_X, DIR_Y, DIR_XY, DIR_XZ, DIR_YZ]


def _coefficients_from_samples(bead, j_values) -> dict[tuple[int, int], float]:
    """Solve c'_{j,m} of one bead from its values at prescribed directions."""
    keys = [(j, m) for j in j_values for m in range(-j, j + 1)]
    if len(j_values) == 1 and j_values[0] == 0:
        return {(0, 0): bead.value(theta=0.0, phi=0.0) / real_sph_harm(0, 0, 0.0, 0.0)}
    if j_values == (1,):
        dirs = [ODD_AXIS_DIRECTIONS[m] for m in (-1, 0, 1)]
    elif j_values == (0, 2) or j_values == (2,):
        dirs = EVEN_PAIR_DIRECTIONS
    elif j_values == (1, 3):
        dirs = TAU1_DIRECTIONS
    else:
        raise ValueError(f"unsupported rank set {j_values}")
    A = np.array([
        [real_sph_harm(j, m, th, ph) for (j, m) in keys] for th, ph in dirs
    ])
    b = np.array([bead.value(theta=th, phi=ph) for th, ph in dirs])
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = np.max(np.abs(A @ sol - b))
    if residual > 1e-8:
        raise ValueError(f"bead samples are inconsistent (residual {residual})")
    return dict(zip(keys, sol))


def _tensor_from_beadset(beadset: BeadSet, subset: tuple[int, ...]) -> np.ndarray:
    """Pauli correlation tensor of a subset, recovered from sampled bead values."""
    n = beadset.n_qubits
    g = len(subset)
    labels = [
        lab for lab in label_catalog(n)
        if lab.subsystem == subset
    ]
    shape = (3,) * g
    tensor_out = np.zeros(shape)
    cfg = beadset.config
    for lab in labels:
        sampled = _coefficients_from_samples(beadset[lab], lab.ranks)
        for (j, m), cp in sampled.items():
            c = cp / scale_factor(lab, j, n, cfg)
            if c == 0.0:
                continue
            # distribute the coefficient over this operator's Pauli strings
            for coef, assignment in pauli_terms(lab, j, m):
                idx = tuple(AXES.index(assignment[q]) for q in subset)
                tensor_out[idx] += zeta(n) * c * coef
    return tensor_out


def asym_corr_2q(beadset: BeadSet, dir1, dir2, subset: tuple[int, int] | None = None) -> float:
    """⟨σ_{k r1} σ_{l r2}⟩ extracted from sampled bead surface values.

    Uses the six prescribed even-bead directions plus the three Cartesian
    values of the odd bead of the pair.
    """
    subset = subset or _default_pair(beadset)
    r1 = as_unit_vector(dir1)
    r2 = as_unit_vector(dir2)
    t = _tensor_from_beadset(beadset, tuple(subset))
    return float(np.einsum("ab,a,b->", t, r1, r2))


def asym_corr_3q(beadset: BeadSet, dirs) -> float:
    """⟨σ_{1 r1} σ_{2 r2} σ_{3 r3}⟩ extracted from sampled bead surface values."""
    if beadset.n_qubits != 3:
        raise ValueError("asym_corr_3q needs a full 3-qubit bead set")
    vecs = [as_unit_vector(d) for d in dirs]
    if len(vecs) != 3:
        raise ValueError("three directions required")
    t = _tensor_from_beadset(beadset, (1, 2, 3))
    return float(np.einsum("abc,a,b,c->", t, *vecs))


def _default_pair(beadset: BeadSet) -> tuple[int, int]:
    pairs = [lab.subsystem for lab in beadset.labels() if lab.linearity == 2]
    if not pairs:
        raise ValueError("bead set has no bilinear labels")
    return pairs[0]


# CHSH directions (θ, φ): z and x for qubit 1; 45° and 135° tilts for qubit 2
CHSH_SETTINGS = {
    "r1": (0.0, 0.0),
    "r1t": (np.pi / 2, 0.0),
    "r2": (np.pi / 4, 0.0),
    "r2t": (3 * np.pi / 4, 0.0),
}


@dataclass(frozen=True)
class ChshResult:
    correlations: dict[str, tuple[float, float, float]] = field(compare=False)
    s_rotation: float = 0.0
    s_measurement: float = 0.0
    s_extraction: float = 0.0

    @property
    def S(self) -> float:
        return self.s_rotation


def _corr_by_rotation(state: State, theta1: float, theta2: float) -> float:
    """Rotate each qubit's measurement direction onto z, read ⟨ZZ⟩."""
    ry1 = expm_hermitian(-theta1 * np.array([[0, -1j], [1j, 0]]) / 2.0)
    ry2 = expm_hermitian(-theta2 * np.array([[0, -1j], [1j, 0]]) / 2.0)
    rotated = apply_unitary(apply_unitary(state, ry1, (1,)), ry2, (2,))
    beadset = bead_coefficients(rotated)
    return beadset.value("12_even", (0.0, 0.0))


def _corr_by_measurement(state: State, r1, r2) -> float:
    """Measure qubit 1, then average qubit 2's expectation over branches."""
    total = 0.0
    if isinstance(state, PureState):
        branches = measure_qubit(state, 1, r1)
        splits = [(b.outcomes[0][1], b.probability, b.post_state) for b in branches]
    else:
        splits = measure_density(state, 1, r1)
    from .states import bloch_vector

    for bit, p, post in splits:
        sign = 1.0 if bit == 0 else -1.0
        total += p * sign * float(bloch_vector(post, 2) @ as_unit_vector(r2))
    return total


def chsh_S(state: State) -> ChshResult:
    """CHSH combination computed three ways; all agree for valid inputs."""
    if state.qubit_count != 2:
        raise ValueError("chsh_S is defined for two-qubit states")
    beadset = bead_coefficients(state)
    combos = [("r1", "r2"), ("r1t", "r2"), ("r1t", "r2t"), ("r1", "r2t")]
    corr = {}
    for k1, k2 in combos:
        th1, ph1 = CHSH_SETTINGS[k1]
        th2, ph2 = CHSH_SETTINGS[k2]
        v1 = direction_vector(th1, ph1)
        v2 = direction_vector(th2, ph2)
        c_rot = _corr_by_rotation(state, th1, th2)
        c_meas = _corr_by_measurement(state, v1, v2)
        c_ext = asym_corr_2q(beadset, v1, v2, (1, 2))
        corr[f"{k1},{k2}"] = (c_rot, c_meas, c_ext)
    signs = [1.0, 1.0, 1.0, -1.0]
    sums = [sum(s * corr[f"{k1},{k2}"][i] for s, (k1, k2) in zip(signs, combos))
            for i in range(3)]
    return ChshResult(corr, *sums)


def ghz_mermin_product(state: State) -> tuple[float, float, float, float, float]:
    """(⟨XXX⟩, ⟨XYY⟩, ⟨YXY⟩, ⟨YYX⟩, product)."""
    if state.qubit_count != 3:
        raise ValueError("ghz_mermin_product is defined for three-qubit states")
    settings = ["xxx", "xyy", "yxy", "yyx"]
    values = tuple(
        pauli_expectation(state, {q: ax for q, ax in zip((1, 2, 3), word)})
        for word in settings
    )
    return values + (float(np.prod(values)),)


def grover_success_prob(solutions: int, space: int, iterations: int) -> float:
    """Closed-form success probability of the search iteration."""
    if not 1 <= solutions <= space:
        raise ValueError("need 1 <= solutions <= search space size")
    if iterations < 0:
        raise ValueError("iteration count must be nonnegative")
    angle = np.arcsin(np.sqrt(solutions / space))
    return float((np.sin((2 * iterations + 1) * angle) / np.sqrt(solutions)) ** 2)


def graph_state(n_qubits: int, edges) -> PureState:
    """∏ CZ_{kl} |+⟩^⊗N for the given edge set."""
    state = tensor(*(plus_state() for _ in range(n_qubits)))
    for k, l in edges:
        state = apply_unitary(state, gate("cz", (k, l)).unitary, (k, l))
    return state


def local_complementation(n_qubits: int, edges, vertex: int) -> tuple[np.ndarray, frozenset]:
    """Unitary √X on the vertex and inverse-√Z on neighbors; complemented edges."""
    edges = {frozenset(e) for e in edges}
    if not 1 <= vertex <= n_qubits:
        raise ValueError(f"vertex {vertex} out of range")
    neighbors = sorted(q for e in edges if vertex in e for q in e if q != vertex)
    sx = pauli_string_matrix(1, {1: "x"})
    sz = pauli_string_matrix(1, {1: "z"})
    locals_ = []
    for q in range(1, n_qubits + 1):
        if q == vertex:
            locals_.append(expm_hermitian(np.pi / 4 * sx))
        elif q in neighbors:
            locals_.append(expm_hermitian(-np.pi / 4 * sz))
        else:
            locals_.append(np.eye(2, dtype=complex))
    U = locals_[0]
    for m in locals_[1:]:
        U = np.kron(U, m)
    new_edges = set(edges)
    for a, b in itertools.combinations(neighbors, 2):
        e = frozenset((a, b))
        if e in new_edges:
            new_edges.remove(e)
        else:
            new_edges.add(e)
    return U, frozenset(new_edges)


def graph_z_measurement(n_qubits: int, edges, vertex: int, bit: int) -> tuple[PureState, frozenset]:
    """Measure a vertex along z and apply the documented corrections.

    Returns the corrected state (measured qubit restored to |+⟩) and the
    vertex-deleted edge set it realizes.
    """
    state = graph_state(n_qubits, edges)
    branches = measure_qubit(state, vertex, (0, 0, 1))
    branch = branches[bit]
    post = branch.post_state
    neighbors = {q for e in edges for q in e if vertex in e and q != vertex}
    if bit == 1:  # outcome -1: Z on all former neighbors
        for q in neighbors:
            post = apply_unitary(post, pauli_string_matrix(1, {1: "z"}), (q,))
    # bring the measured qubit back to |+⟩: sqrt(Y) for +1, inverse sqrt(Y) for -1
    corr = gate("sy" if bit == 0 else "sydg", (1,)).unitary
    post = apply_unitary(post, corr, (vertex,))
    remaining = frozenset(frozenset(e) for e in edges if vertex not in e)
    return post, remaining


def graph_y_measurement(n_qubits: int, edges, vertex: int, bit: int) -> tuple[PureState, frozenset]:
    """Measure a vertex along y; √Z^∓1 corrections on neighbors complement them."""
    state = graph_state(n_qubits, edges)
    branches = measure_qubit(state, vertex, (0, 1, 0))
    branch = branches[bit]
    post = branch.post_state
    neighbors = {q for e in edges for q in e if vertex in e and q != vertex}
    name = "szdg" if bit == 0 else "sz"  # m_y=+1 -> inverse sqrt(Z), m_y=-1 -> sqrt(Z)
    for q in neighbors:
        post = apply_unitary(post, gate(name, (1,)).unitary, (q,))
    edges_lc = local_complementation(n_qubits, edges, vertex)[1]
    remaining = frozenset(e for e in edges_lc if vertex not in e)
    return post, remaining


@dataclass(frozen=True)
class TomographyOperator:
    """Scaled axial operator T̃ = ζ·ξ·T_{j,0}, optionally rotated to (β, α)."""

    label: BeadLabel
    j: int
    matrix: np.ndarray = field(compare=False)
    rotation: tuple[float, float] | None = None  # (alpha, beta)


def _global_rotation(n_qubits: int, alpha: float, beta: float) -> np.ndarray:
    sz = pauli_string_matrix(1, {1: "z"})
    sy = pauli_string_matrix(1, {1: "y"})
    r1 = expm_hermitian(alpha * sz / 2.0) @ expm_hermitian(beta * sy / 2.0)
    U = r1
    for _ in range(n_qubits - 1):
        U = np.kron(U, r1)
    return U


def tomo_axial_operator(
    n_qubits: int, label: BeadLabel, j: int, rotation: tuple[float, float] | None = None
) -> TomographyOperator:
    base = lisa_operator(n_qubits, label, j, 0).matrix
    mat = zeta(n_qubits) * xi(label, j, n_qubits) * base
    if rotation is not None:
        alpha, beta = rotation
        U = _global_rotation(n_qubits, alpha, beta)
        mat = U @ mat @ U.conj().T
    return TomographyOperator(label, j, mat, rotation)


def bead_value_via_tomography(state: State, label: BeadLabel, j: int, beta: float, alpha: float) -> float:
    """⟨R_{αβ} T̃_{j,0}⟩: equals the rank-j part of the bead at (θ=β, φ=α)."""
    op = tomo_axial_operator(state.qubit_count, label, j, rotation=(alpha, beta))
    return expectation(state, op.matrix)


def tomo_reconstruct(
    n_qubits: int,
    expectation_oracle,
    directions,
    config: ScalingConfig | None = None,
) -> BeadSet:
    """Rebuild a bead set from expectation values of rotated axial operators.

    `expectation_oracle(matrix) -> float` supplies ⟨M⟩; `directions` is a list
    of (β, α) samples, at least 2j+1 independent ones per rank. Solves each
    rank by least squares, so overdetermined/noisy oracles average down.
    """
    config = config or ScalingConfig()
    directions = [(float(b), float(a)) for b, a in directions]
    beads = {}
    norms = {}
    for label in label_catalog(n_qubits):
        coeffs = {}
        norm_sq = 0.0
        for j in label.ranks:
            keys = [(j, m) for m in range(-j, j + 1)]
            A = np.array([
                [real_sph_harm(j, m, beta, alpha) for (_, m) in keys]
                for beta, alpha in directions
            ])
            if np.linalg.matrix_rank(A) < len(keys):
                raise ValueError(
                    f"direction set is rank-deficient for rank {j} (need {len(keys)} independent samples)")
            b = np.array([
                expectation_oracle(tomo_axial_operator(n_qubits, label, j, rotation=(alpha, beta)).matrix)
                for beta, alpha in directions
            ])
            sol, *_ = np.linalg.lstsq(A, b, rcond=None)
            # sol are rank-j bead values' coefficients in the beads scaling
            s_beads = scale_factor(label, j, n_qubits, ScalingConfig("beads"))
            s_out = scale_factor(label, j, n_qubits, config)
            for (jj, m), value in zip(keys, sol):
                c = value / s_beads
                coeffs[(jj, m)] = s_out * c
                norm_sq += c * c
        from .beads import BeadFunction

        beads[label.key] = BeadFunction(label, coeffs)
        norms[label.key] = float(np.sqrt(norm_sq))
    return BeadSet(n_qubits, config, beads, norms)


def shot_noise_oracle(state: State, shots: int, rng: np.random.Generator):
    """Finite-shot estimator of ⟨M⟩ via eigenbasis sampling of M."""
    rho = as_density_matrix(state)

    def oracle(matrix: np.ndarray) -> float:
        w, V = np.linalg.eigh(matrix)
        probs = np.clip(np.real(np.einsum("ij,jk,ki->i", V.conj().T, rho, V)), 0.0, None)
        probs = probs / probs.sum()
        counts = rng.multinomial(shots, probs)
        return float(np.dot(counts, w) / shots)

    return oracle


def outcome_probabilities_symmetric(state: State, direction) -> dict[str, float]:
    """Outcome probabilities of measuring every qubit along one direction.

    Solves the linear system linking bead-readable expectation values (the
    identity, Q-bead values, and fully symmetric T-bead values along the
    direction) to the outcome distribution.
    """
    n = state.qubit_count
    r = as_unit_vector(direction)
    beadset = bead_coefficients(state)
    theta = float(np.arccos(np.clip(r[2], -1, 1)))
    phi = float(np.arctan2(r[1], r[0]))
    expectations = {(): 1.0}
    for label in label_catalog(n):
        if not label.fully_symmetric or label.linearity == 0:
            continue
        expectations[label.subsystem] = beadset[label].value(theta=theta, phi=phi)
    probs = {}
    for bits in itertools.product((0, 1), repeat=n):
        p = 0.0
        for subset, value in expectations.items():
            sign = (-1) ** sum(bits[q - 1] for q in subset)
            p += sign * value
        probs["".join(map(str, bits))] = p / 2**n
    return probs
