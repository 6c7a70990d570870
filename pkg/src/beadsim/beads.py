"""Scaling of tensor coefficients into bead spherical functions, and back.

A bead is the real spherical function b(θ,φ) = Σ c'_{j,m} Y_{j,m} of one
symmetry component, with c' = ζ(N)·ξ_j·η_j·c chosen so that bead values read
as expectation values: Q-Beads give ⟨σ_r⟩ of the reduced qubit, fully
permutation symmetric multilinear beads give ⟨∏σ_r⟩, and the remaining beads
saturate at ±1 on their unitary-bound states.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import as_angles
from .harmonics import real_sph_harm
from .lisa import (
    BeadLabel,
    LisaDecomposition,
    LisaOperator,
    decompose,
    label_catalog,
    lisa_operator,
    parse_label,
    reconstruct,
)
from .states import PureState, State, as_density_matrix

MODES = ("beads", "drops", "natural")


@dataclass(frozen=True)
class ScalingConfig:
    """Coefficient scaling mode: `beads` (default), `drops` (raw), `natural`."""

    mode: str = "beads"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


def zeta(n_qubits: int) -> float:
    """System-size factor √(2^N)."""
    return float(np.sqrt(2**n_qubits))


def eta(j: int) -> float:
    """Rank factor √(4π/(2j+1))."""
    if not 0 <= j <= 3:
        raise ValueError(f"rank {j} outside 0..3")
    return float(np.sqrt(4 * np.pi / (2 * j + 1)))


# canonical factors for the fully permutation symmetric labels
_CANONICAL_XI = {
    (0, None, "even", 0): 1.0,
    (1, None, "odd", 1): 1.0,
    (2, None, "even", 0): np.sqrt(1.0 / 3.0),
    (2, None, "even", 2): np.sqrt(2.0 / 3.0),
    (3, 1, "odd", 1): np.sqrt(3.0 / 5.0),
    (3, 1, "odd", 3): np.sqrt(2.0 / 5.0),
}

# unitary-bound factors for everything else (independent of N)
_GUB_XI = {
    (2, None, "odd", 1): 1.0 / np.sqrt(2.0),
    (3, 2, "odd", 1): 3.0 / (3.0 + np.sqrt(3.0)),
    (3, 2, "even", 2): 1.0 / np.sqrt(2.0),
    (3, 3, "odd", 1): 1.0 / np.sqrt(2.0),
    (3, 3, "even", 2): 1.0 / np.sqrt(2.0),
    (3, 4, "even", 0): 1.0 / np.sqrt(2.0),
}


def is_gub_label(label: BeadLabel, j: int) -> bool:
    return (label.linearity, label.tau, label.parity, j) in _GUB_XI


def xi(label: BeadLabel, j: int, n_qubits: int | None = None, mode: str = "beads") -> float:
    """Rank- and label-specific scaling factor."""
    key = (label.linearity, label.tau, label.parity, j)
    if key in _CANONICAL_XI:
        return float(_CANONICAL_XI[key])
    if key in _GUB_XI:
        if mode == "natural":
            if n_qubits is None:
                raise ValueError("natural mode needs the system qubit count")
            return 1.0 / zeta(n_qubits)
        return float(_GUB_XI[key])
    raise ValueError(f"no scaling factor for label {label}, rank {j}")


def scale_factor(label: BeadLabel, j: int, n_qubits: int, config: ScalingConfig) -> float:
    """Overall factor s_j = ζ·ξ·η (beads), 1 (drops), or the natural variant."""
    if config.mode == "drops":
        return 1.0
    return zeta(n_qubits) * xi(label, j, n_qubits, config.mode) * eta(j)


def global_unitary_bound(operator: LisaOperator | np.ndarray) -> float:
    """Largest |eigenvalue|: the best pure-state overlap with the operator."""
    mat = operator.matrix if isinstance(operator, LisaOperator) else np.asarray(operator)
    if np.max(np.abs(mat - np.conj(mat).T)) > 1e-9:
        raise ValueError("global unitary bound expects a Hermitian operator")
    return float(np.max(np.abs(np.linalg.eigvalsh(mat))))


@dataclass(frozen=True)
class BeadFunction:
    """One bead: scaled coefficients (j, m) -> c', evaluable on the sphere."""

    label: BeadLabel
    coefficients: dict[tuple[int, int], float] = field(compare=False)

    def value(self, direction=None, theta=None, phi=None):
        """b(θ,φ) = Σ c'_{j,m} Y_{j,m}; broadcasts over array angles."""
        if direction is not None:
            theta, phi = as_angles(direction)
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        out = np.zeros(np.broadcast(theta, phi).shape)
        for (j, m), c in self.coefficients.items():
            if c != 0.0:
                out = out + c * real_sph_harm(j, m, theta, phi)
        if out.ndim == 0:
            return float(out)
        return out


def bead_value(bead: BeadFunction, direction) -> float:
    theta, phi = as_angles(direction)
    return bead.value(theta=theta, phi=phi)


@dataclass(frozen=True)
class BeadSet:
    """All beads of one operator plus per-label component norms."""

    n_qubits: int
    config: ScalingConfig
    beads: dict[str, BeadFunction] = field(compare=False)
    norms: dict[str, float] = field(compare=False)

    def __getitem__(self, label) -> BeadFunction:
        key = label.key if isinstance(label, BeadLabel) else str(label)
        return self.beads[key]

    def labels(self) -> list[BeadLabel]:
        return [parse_label(k) for k in self.beads]

    def value(self, label, direction) -> float:
        return bead_value(self[label], direction)

    def norm(self, label) -> float:
        key = label.key if isinstance(label, BeadLabel) else str(label)
        return self.norms[key]


def bead_coefficients(state: State | np.ndarray, config: ScalingConfig | None = None) -> BeadSet:
    """Map an operator (or state) to its bead set."""
    config = config or ScalingConfig()
    matrix = as_density_matrix(state)
    dec = decompose(matrix)
    return beads_from_decomposition(dec, config)


def beads_from_decomposition(dec: LisaDecomposition, config: ScalingConfig) -> BeadSet:
    n = dec.n_qubits
    beads = {}
    norms = {}
    for label in label_catalog(n):
        coeffs = {}
        norm_sq = 0.0
        for j in label.ranks:
            s = scale_factor(label, j, n, config)
            for m in range(-j, j + 1):
                c = dec.coefficients.get((label.key, j, m), 0.0)
                coeffs[(j, m)] = s * c
                norm_sq += c * c
        beads[label.key] = BeadFunction(label, coeffs)
        norms[label.key] = float(np.sqrt(norm_sq))
    return BeadSet(n, config, beads, norms)


def beads_to_operator(beadset: BeadSet, config: ScalingConfig | None = None) -> np.ndarray:
    """Exact inverse of `bead_coefficients`: c = c'/s, then basis reconstruction."""
    config = config or beadset.config
    n = beadset.n_qubits
    expected = {lab.key for lab in label_catalog(n)}
    missing = expected - set(beadset.beads)
    if missing:
        raise KeyError(f"bead set is missing labels: {sorted(missing)}")
    coeffs = {}
    for key, bead in beadset.beads.items():
        label = parse_label(key)
        for (j, m), cp in bead.coefficients.items():
            coeffs[(key, j, m)] = cp / scale_factor(label, j, n, config)
    return reconstruct(LisaDecomposition(n, coeffs))


def coherent_product_state(n_qubits: int, theta: float, phi: float) -> PureState:
    """All qubits pointing along (θ, φ): [cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩]^⊗N."""
    single = np.array([np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)])
    amps = single
    for _ in range(n_qubits - 1):
        amps = np.kron(amps, single)
    return PureState(amps)


def husimi(state: State, direction=None, theta=None, phi=None):
    """Coherent-state expectation ⟨s(θ,φ)|ρ|s(θ,φ)⟩ (no 1/π normalization)."""
    if direction is not None:
        theta, phi = as_angles(direction)
    rho = as_density_matrix(state)
    n = state.qubit_count
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    theta_b, phi_b = np.broadcast_arrays(theta_arr, phi_arr)
    out = np.empty(theta_b.shape)
    for idx in np.ndindex(theta_b.shape):
        s = coherent_product_state(n, theta_b[idx], phi_b[idx]).amplitudes
        out[idx] = float((s.conj() @ rho @ s).real)
    if np.isscalar(theta) or (np.asarray(theta).ndim == 0 and np.asarray(phi).ndim == 0):
        return float(out.reshape(-1)[0])
    return out.reshape(np.broadcast(np.asarray(theta), np.asarray(phi)).shape)


def husimi_from_beads(beadset: BeadSet, theta, phi):
    """Husimi function as the 2^-N-scaled sum of identity, Q-, and symmetric T-beads."""
    total = np.zeros(np.broadcast(np.asarray(theta, float), np.asarray(phi, float)).shape)
    for label in label_catalog(beadset.n_qubits):
        if label.fully_symmetric:
            total = total + beadset[label].value(theta=theta, phi=phi)
    total = total / 2**beadset.n_qubits
    if total.ndim == 0:
        return float(total)
    return total


@dataclass(frozen=True)
class MajoranaStar:
    theta: float
    phi: float
    multiplicity: int


def _dicke_state(n: int, zeros: int) -> np.ndarray:
    amps = np.zeros(2**n)
    for idx in range(2**n):
        if bin(idx).count("1") == n - zeros:
            amps[idx] = 1.0
    return amps / np.linalg.norm(amps)


def majorana_stars(state: PureState, tol: float = 1e-9, cluster_tol: float = 1e-8) -> list[MajoranaStar]:
    """Star directions of a permutation-symmetric pure state.

    The state is expanded in Dicke states, the root set of the associated
    polynomial is stereographically projected (z = tan(θ/2)e^{iφ}, roots at
    infinity land on the south pole), and nearby roots are merged into one
    star with a multiplicity.
    """
    n = state.qubit_count
    dicke = [_dicke_state(n, zeros) for zeros in range(n + 1)]
    coeffs = np.array([d @ state.amplitudes for d in dicke])
    projected = sum(c * d for c, d in zip(coeffs, dicke))
    if np.linalg.norm(projected - state.amplitudes) > np.sqrt(tol):
        raise ValueError("majorana_stars requires a permutation-symmetric state")
    # P(z) = sum_l (-1)^l sqrt(C(n,l)) c_l z^l, l = number of |0> components
    poly = np.array([
        (-1) ** l * np.sqrt(_binom(n, l)) * coeffs[l] for l in range(n + 1)
    ])
    # strip (numerically) vanishing leading coefficients; each lost degree is a root at infinity
    scale = np.max(np.abs(poly))
    degree = n
    while degree > 0 and abs(poly[degree]) < 1e-12 * scale:
        degree -= 1
    finite_roots = np.roots(poly[: degree + 1][::-1]) if degree > 0 else np.array([])
    stars: list[tuple[complex | None, int]] = []
    for root in finite_roots:
        for i, (existing, mult) in enumerate(stars):
            if existing is not None and abs(existing - root) < max(cluster_tol, cluster_tol * abs(root)):
                stars[i] = (existing, mult + 1)
                break
        else:
            stars.append((complex(root), 1))
    if n - degree > 0:
        stars.append((None, n - degree))
    out = []
    for root, mult in stars:
        if root is None:
            out.append(MajoranaStar(np.pi, 0.0, mult))
        else:
            theta = 2.0 * np.arctan(abs(root))
            phi = float(np.angle(root)) % (2 * np.pi) if abs(root) > 0 else 0.0
            out.append(MajoranaStar(float(theta), phi, mult))
    return out


def _binom(n: int, k: int) -> float:
    from math import comb

    return float(comb(n, k))
