"""Hermitian symmetry-adapted tensor operator basis for 1-3 qubits.

Each basis operator is a normalized real combination of Pauli product strings,
organized by linearity, subsystem, trilinear permutation class (tau), and
spherical-function point parity. The basis is orthonormal under the
Hilbert-Schmidt inner product, so decomposition coefficients are plain traces.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

MAX_QUBITS = 3

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True, order=True)
class BeadLabel:
    """Symmetry label ℓ′: qubit subset, optional trilinear tau class, point parity."""

    subsystem: tuple[int, ...]
    tau: int | None = None
    parity: str = EVEN

    def __post_init__(self):
        if tuple(sorted(self.subsystem)) != self.subsystem:
            raise ValueError("subsystem qubits must be sorted ascending")
        if self.tau is not None and len(self.subsystem) != 3:
            raise ValueError("tau labels apply to trilinear subsystems only")
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")

    @property
    def linearity(self) -> int:
        return len(self.subsystem)

    @property
    def ranks(self) -> tuple[int, ...]:
        return _RANK_TABLE[(self.linearity, self.tau, self.parity)]

    @property
    def fully_symmetric(self) -> bool:
        """Full permutation symmetry: identity, linear, {k,l} even, and tau1 labels."""
        if self.linearity <= 1:
            return True
        if self.linearity == 2:
            return self.parity == EVEN
        return self.tau == 1

    @property
    def key(self) -> str:
        if not self.subsystem:
            return "empty"
        body = "".join(str(q) for q in self.subsystem)
        if self.tau is not None:
            body += f"_tau{self.tau}"
        if self.linearity >= 2:
            body += f"_{self.parity}"
        return body

    def __str__(self) -> str:
        return self.key


def parse_label(key: str) -> BeadLabel:
    if key == "empty":
        return BeadLabel(())
    parts = key.split("_")
    subsystem = tuple(int(c) for c in parts[0])
    tau = None
    parity = EVEN if len(subsystem) != 1 else ODD
    for part in parts[1:]:
        if part.startswith("tau"):
            tau = int(part[3:])
        else:
            parity = part
    return BeadLabel(subsystem, tau, parity)


# (linearity, tau, parity) -> allowed ranks, per the symmetry-set overview table
_RANK_TABLE = {
    (0, None, EVEN): (0,),
    (1, None, ODD): (1,),
    (2, None, EVEN): (0, 2),
    (2, None, ODD): (1,),
    (3, 1, ODD): (1, 3),
    (3, 2, ODD): (1,),
    (3, 2, EVEN): (2,),
    (3, 3, ODD): (1,),
    (3, 3, EVEN): (2,),
    (3, 4, EVEN): (0,),
}

# Pauli-string templates per (linearity, tau, parity, j, m).
# Strings are axis words over the subsystem qubits in ascending order;
# overall matrix = prefactor * sum(coef * string) / sqrt(2^N).
_S15 = 1.0 / np.sqrt(15.0)
_S10 = 1.0 / np.sqrt(10.0)
_S12 = 1.0 / np.sqrt(12.0)
_S6 = 1.0 / np.sqrt(6.0)
_S3 = 1.0 / np.sqrt(3.0)
_S2 = 1.0 / np.sqrt(2.0)

_TEMPLATES: dict[tuple, list[tuple[float, str]]] = {
    (0, None, EVEN, 0, 0): [(1.0, "")],
    (1, None, ODD, 1, -1): [(1.0, "y")],
    (1, None, ODD, 1, 0): [(1.0, "z")],
    (1, None, ODD, 1, 1): [(1.0, "x")],
    (2, None, EVEN, 0, 0): [(_S3, "xx"), (_S3, "yy"), (_S3, "zz")],
    (2, None, EVEN, 2, -2): [(_S2, "xy"), (_S2, "yx")],
    (2, None, EVEN, 2, -1): [(_S2, "yz"), (_S2, "zy")],
    (2, None, EVEN, 2, 0): [(2 * _S6, "zz"), (-_S6, "xx"), (-_S6, "yy")],
    (2, None, EVEN, 2, 1): [(_S2, "zx"), (_S2, "xz")],
    (2, None, EVEN, 2, 2): [(_S2, "xx"), (-_S2, "yy")],
    (2, None, ODD, 1, -1): [(_S2, "zx"), (-_S2, "xz")],
    (2, None, ODD, 1, 0): [(_S2, "xy"), (-_S2, "yx")],
    (2, None, ODD, 1, 1): [(_S2, "yz"), (-_S2, "zy")],
    (3, 1, ODD, 1, -1): [
        (3 * _S15, "yyy"),
        (_S15, "yxx"), (_S15, "xyx"), (_S15, "xxy"),
        (_S15, "yzz"), (_S15, "zyz"), (_S15, "zzy"),
    ],
    (3, 1, ODD, 1, 0): [
        (3 * _S15, "zzz"),
        (_S15, "zxx"), (_S15, "xzx"), (_S15, "xxz"),
        (_S15, "zyy"), (_S15, "yzy"), (_S15, "yyz"),
    ],
    (3, 1, ODD, 1, 1): [
        (3 * _S15, "xxx"),
        (_S15, "xyy"), (_S15, "yxy"), (_S15, "yyx"),
        (_S15, "xzz"), (_S15, "zxz"), (_S15, "zzx"),
    ],
    (3, 1, ODD, 3, -3): [
        (-0.5, "yyy"),
        (0.5, "yxx"), (0.5, "xyx"), (0.5, "xxy"),
    ],
    (3, 1, ODD, 3, -2): [
        (_S6, "xyz"), (_S6, "yzx"), (_S6, "zxy"),
        (_S6, "xzy"), (_S6, "zyx"), (_S6, "yxz"),
    ],
    (3, 1, ODD, 3, -1): [
        (-3 / (2 * np.sqrt(15.0)), "yyy"),
        (-1 / (2 * np.sqrt(15.0)), "yxx"), (-1 / (2 * np.sqrt(15.0)), "xyx"),
        (-1 / (2 * np.sqrt(15.0)), "xxy"),
        (4 / (2 * np.sqrt(15.0)), "yzz"), (4 / (2 * np.sqrt(15.0)), "zyz"),
        (4 / (2 * np.sqrt(15.0)), "zzy"),
    ],
    # yy-group sign fixed by orthogonality with the rank-1 member of this set
    (3, 1, ODD, 3, 0): [
        (2 * _S10, "zzz"),
        (-_S10, "zxx"), (-_S10, "xzx"), (-_S10, "xxz"),
        (-_S10, "zyy"), (-_S10, "yzy"), (-_S10, "yyz"),
    ],
    (3, 1, ODD, 3, 1): [
        (-3 / (2 * np.sqrt(15.0)), "xxx"),
        (-1 / (2 * np.sqrt(15.0)), "xyy"), (-1 / (2 * np.sqrt(15.0)), "yxy"),
        (-1 / (2 * np.sqrt(15.0)), "yyx"),
        (4 / (2 * np.sqrt(15.0)), "xzz"), (4 / (2 * np.sqrt(15.0)), "zxz"),
        (4 / (2 * np.sqrt(15.0)), "zzx"),
    ],
    (3, 1, ODD, 3, 2): [
        (_S6, "zxx"), (_S6, "xzx"), (_S6, "xxz"),
        (-_S6, "zyy"), (-_S6, "yzy"), (-_S6, "yyz"),
    ],
    (3, 1, ODD, 3, 3): [
        (0.5, "xxx"),
        (-0.5, "xyy"), (-0.5, "yxy"), (-0.5, "yyx"),
    ],
    (3, 2, ODD, 1, -1): [
        (-2 * _S12, "xxy"), (_S12, "yxx"), (_S12, "xyx"),
        (-2 * _S12, "zzy"), (_S12, "yzz"), (_S12, "zyz"),
    ],
    (3, 2, ODD, 1, 0): [
        (-2 * _S12, "xxz"), (_S12, "zxx"), (_S12, "xzx"),
        (-2 * _S12, "yyz"), (_S12, "zyy"), (_S12, "yzy"),
    ],
    (3, 2, ODD, 1, 1): [
        (-2 * _S12, "yyx"), (_S12, "xyy"), (_S12, "yxy"),
        (-2 * _S12, "zzx"), (_S12, "xzz"), (_S12, "zxz"),
    ],
    (3, 2, EVEN, 2, -2): [
        (2 * _S12, "xxz"), (-_S12, "zxx"), (-_S12, "xzx"),
        (-2 * _S12, "yyz"), (_S12, "zyy"), (_S12, "yzy"),
    ],
    (3, 2, EVEN, 2, -1): [
        (2 * _S12, "yyx"), (-_S12, "xyy"), (-_S12, "yxy"),
        (-2 * _S12, "zzx"), (_S12, "xzz"), (_S12, "zxz"),
    ],
    (3, 2, EVEN, 2, 0): [
        (-0.5, "xzy"), (-0.5, "zxy"), (0.5, "yzx"), (0.5, "zyx"),
    ],
    (3, 2, EVEN, 2, 1): [
        (-2 * _S12, "xxy"), (_S12, "yxx"), (_S12, "xyx"),
        (2 * _S12, "zzy"), (-_S12, "yzz"), (-_S12, "zyz"),
    ],
    (3, 2, EVEN, 2, 2): [
        (-2 * _S12, "xyz"), (_S12, "yzx"), (_S12, "zxy"),
        (-2 * _S12, "yxz"), (_S12, "xzy"), (_S12, "zyx"),
    ],
    (3, 3, ODD, 1, -1): [
        (0.5, "yxx"), (-0.5, "xyx"),
        (0.5, "yzz"), (-0.5, "zyz"),
    ],
    (3, 3, ODD, 1, 0): [
        (0.5, "zxx"), (-0.5, "xzx"),
        (0.5, "zyy"), (-0.5, "yzy"),
    ],
    (3, 3, ODD, 1, 1): [
        (0.5, "xyy"), (-0.5, "yxy"),
        (0.5, "xzz"), (-0.5, "zxz"),
    ],
    (3, 3, EVEN, 2, -2): [
        (-0.5, "zxx"), (0.5, "xzx"),
        (0.5, "zyy"), (-0.5, "yzy"),
    ],
    (3, 3, EVEN, 2, -1): [
        (-0.5, "xyy"), (0.5, "yxy"),
        (0.5, "xzz"), (-0.5, "zxz"),
    ],
    (3, 3, EVEN, 2, 0): [
        (-2 * _S12, "xyz"), (_S12, "yzx"), (_S12, "zxy"),
        (2 * _S12, "yxz"), (-_S12, "xzy"), (-_S12, "zyx"),
    ],
    (3, 3, EVEN, 2, 1): [
        (-0.5, "yzz"), (0.5, "zyz"),
        (0.5, "yxx"), (-0.5, "xyx"),
    ],
    (3, 3, EVEN, 2, 2): [
        (-0.5, "xzy"), (0.5, "zxy"),
        (0.5, "zyx"), (-0.5, "yzx"),
    ],
    (3, 4, EVEN, 0, 0): [
        (_S6, "xyz"), (_S6, "yzx"), (_S6, "zxy"),
        (-_S6, "xzy"), (-_S6, "yxz"), (-_S6, "zyx"),
    ],
}


@dataclass(frozen=True)
class LisaOperator:
    """One basis element: label, rank, order, dense Hermitian matrix."""

    label: BeadLabel
    j: int
    m: int
    matrix: np.ndarray = field(compare=False)

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.label.key, self.j, self.m)


@functools.lru_cache(maxsize=4096)
def _pauli_string_cached(n_qubits: int, word: str) -> np.ndarray:
    ops = [PAULI[axis] for axis in word]
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    out.flags.writeable = False
    return out


def pauli_string_matrix(n_qubits: int, assignment: dict[int, str]) -> np.ndarray:
    """Dense matrix of a Pauli product; `assignment` maps 1-based qubit -> axis."""
    word = "".join(assignment.get(q, "i") for q in range(1, n_qubits + 1))
    return _pauli_string_cached(n_qubits, word)


def pauli_terms(label: BeadLabel, j: int, m: int) -> list[tuple[float, dict[int, str]]]:
    """(coefficient, qubit->axis) terms of sqrt(2^N) * T for the given element."""
    template = _TEMPLATES[(label.linearity, label.tau, label.parity, j, m)]
    return [
        (coef, {q: axis for q, axis in zip(label.subsystem, word)})
        for coef, word in template
    ]


def lisa_operator(n_qubits: int, label: BeadLabel, j: int, m: int) -> LisaOperator:
    """Build one basis operator as a dense 2^N x 2^N Hermitian matrix."""
    _check_qubit_count(n_qubits)
    if any(q < 1 or q > n_qubits for q in label.subsystem):
        raise ValueError(f"label {label} references qubits outside 1..{n_qubits}")
    key = (label.linearity, label.tau, label.parity, j, m)
    if key not in _TEMPLATES:
        raise ValueError(f"no basis element for label {label}, j={j}, m={m}")
    dim = 2**n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for coef, assignment in pauli_terms(label, j, m):
        mat += coef * pauli_string_matrix(n_qubits, assignment)
    mat /= np.sqrt(dim)
    mat.flags.writeable = False
    return LisaOperator(label, j, m, mat)


def label_catalog(n_qubits: int) -> list[BeadLabel]:
    """All symmetry labels for the system, ordered by (linearity, subsystem, tau, parity)."""
    _check_qubit_count(n_qubits)
    labels = [BeadLabel(())]
    qubits = range(1, n_qubits + 1)
    labels += [BeadLabel((q,), None, ODD) for q in qubits]
    for k in qubits:
        for l in qubits:
            if k < l:
                labels.append(BeadLabel((k, l), None, EVEN))
                labels.append(BeadLabel((k, l), None, ODD))
    if n_qubits == 3:
        labels += [
            BeadLabel((1, 2, 3), 1, ODD),
            BeadLabel((1, 2, 3), 2, ODD),
            BeadLabel((1, 2, 3), 2, EVEN),
            BeadLabel((1, 2, 3), 3, ODD),
            BeadLabel((1, 2, 3), 3, EVEN),
            BeadLabel((1, 2, 3), 4, EVEN),
        ]
    return labels


@functools.lru_cache(maxsize=None)
def operator_catalog(n_qubits: int) -> tuple[LisaOperator, ...]:
    """Complete orthonormal operator basis (4^N elements), in stable order."""
    ops = []
    for label in label_catalog(n_qubits):
        for j in label.ranks:
            for m in range(-j, j + 1):
                ops.append(lisa_operator(n_qubits, label, j, m))
    return tuple(ops)


@dataclass(frozen=True)
class LisaDecomposition:
    """Real expansion coefficients keyed by (label key, j, m)."""

    n_qubits: int
    coefficients: dict[tuple[str, int, int], float]

    def component_matrix(self, label: BeadLabel) -> np.ndarray:
        """Dense matrix of the single symmetry component for `label`."""
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for j in label.ranks:
            for m in range(-j, j + 1):
                c = self.coefficients.get((label.key, j, m), 0.0)
                if c != 0.0:
                    out += c * lisa_operator(self.n_qubits, label, j, m).matrix
        return out

    def component_norm(self, label: BeadLabel) -> float:
        """Hilbert-Schmidt norm of one component (basis is orthonormal)."""
        total = 0.0
        for j in label.ranks:
            for m in range(-j, j + 1):
                total += self.coefficients.get((label.key, j, m), 0.0) ** 2
        return float(np.sqrt(total))

    def to_records(self) -> list[dict]:
        return [
            {"label": label, "j": j, "m": m, "value": value}
            for (label, j, m), value in sorted(self.coefficients.items())
        ]

    @classmethod
    def from_records(cls, n_qubits: int, records) -> "LisaDecomposition":
        coeffs = {}
        for rec in records:
            key = (rec["label"], int(rec["j"]), int(rec["m"]))
            parse_label(rec["label"])  # validates the label string
            coeffs[key] = float(rec["value"])
        return cls(n_qubits, coeffs)


def decompose(matrix: np.ndarray, imag_tol: float = 1e-10) -> LisaDecomposition:
    """Expand a Hermitian matrix in the basis; coefficients are Tr(T A)."""
    matrix = np.asarray(matrix, dtype=complex)
    n_qubits = _qubits_from_dim(matrix.shape[0])
    if matrix.shape != (2**n_qubits, 2**n_qubits):
        raise ValueError("matrix must be square with power-of-two dimension")
    if np.max(np.abs(matrix - matrix.conj().T)) > 1e-8:
        raise ValueError("decompose expects a Hermitian matrix")
    coeffs = {}
    for op in operator_catalog(n_qubits):
        c = np.trace(op.matrix @ matrix)
        if abs(c.imag) > imag_tol:
            raise ValueError(f"coefficient for {op.key} has imaginary residue {c.imag}")
        coeffs[op.key] = float(c.real)
    return LisaDecomposition(n_qubits, coeffs)


def reconstruct(decomposition: LisaDecomposition) -> np.ndarray:
    """Exact inverse of `decompose`."""
    n_qubits = decomposition.n_qubits
    valid = {op.key for op in operator_catalog(n_qubits)}
    dim = 2**n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for key, value in decomposition.coefficients.items():
        if key not in valid:
            raise KeyError(f"unknown basis element {key}")
        label, j, m = key
        out += value * lisa_operator(n_qubits, parse_label(label), j, m).matrix
    return out


def _check_qubit_count(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {n_qubits}")


def _qubits_from_dim(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    _check_qubit_count(n)
    return n
