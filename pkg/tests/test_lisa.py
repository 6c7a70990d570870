import itertools

import numpy as np
import pytest

from beadsim.lisa import (
    BeadLabel,
    decompose,
    label_catalog,
    lisa_operator,
    operator_catalog,
    parse_label,
    pauli_string_matrix,
    reconstruct,
)
from beadsim.states import bell_state, ket, random_pure_state


def random_hermitian(n, rng):
    dim = 2**n
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return A + A.conj().T


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orthonormal_and_complete(n):
    ops = operator_catalog(n)
    assert len(ops) == 4**n
    gram = np.array([[np.trace(a.matrix @ b.matrix).real for b in ops] for a in ops])
    np.testing.assert_allclose(gram, np.eye(len(ops)), atol=1e-12)


def test_label_counts():
    assert len(label_catalog(1)) == 2
    # N=2: identity, two linear labels, and the even/odd pair split
    labels2 = {lab.key for lab in label_catalog(2)}
    assert labels2 == {"empty", "1", "2", "12_even", "12_odd"}
    assert len(label_catalog(3)) == 16


def test_rank_parity_matches_point_parity():
    for n in (1, 2, 3):
        for op in operator_catalog(n):
            parity = "even" if op.j % 2 == 0 else "odd"
            assert parity == op.label.parity


def test_fully_symmetric_flags():
    flags = {lab.key: lab.fully_symmetric for lab in label_catalog(3)}
    assert flags["12_even"] and flags["123_tau1_odd"]
    assert not flags["12_odd"]
    assert not flags["123_tau2_odd"] and not flags["123_tau4_even"]


def test_identity_operator():
    op = lisa_operator(2, BeadLabel(()), 0, 0)
    np.testing.assert_allclose(op.matrix, np.eye(4) / 2.0, atol=1e-15)


def test_bilinear_rank2_axial():
    op = lisa_operator(2, BeadLabel((1, 2), None, "even"), 2, 0)
    zz = pauli_string_matrix(2, {1: "z", 2: "z"})
    xx = pauli_string_matrix(2, {1: "x", 2: "x"})
    yy = pauli_string_matrix(2, {1: "y", 2: "y"})
    np.testing.assert_allclose(op.matrix, (2 * zz - xx - yy) / (2 * np.sqrt(6)), atol=1e-14)


def test_tau4_operator():
    # normalized fully antisymmetric combination: prefactor 1/(sqrt(2^3) sqrt(6))
    op = lisa_operator(3, BeadLabel((1, 2, 3), 4, "even"), 0, 0)
    expected = np.zeros((8, 8), dtype=complex)
    for sign, perm in [(1, "xyz"), (1, "yzx"), (1, "zxy"), (-1, "xzy"), (-1, "yxz"), (-1, "zyx")]:
        expected += sign * pauli_string_matrix(3, {1: perm[0], 2: perm[1], 3: perm[2]})
    expected /= np.sqrt(8) * np.sqrt(6)
    np.testing.assert_allclose(op.matrix, expected, atol=1e-14)
    assert np.trace(op.matrix @ op.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_invalid_combinations_rejected():
    with pytest.raises(ValueError):
        lisa_operator(2, BeadLabel((1, 2), None, "even"), 1, 0)
    with pytest.raises(ValueError):
        lisa_operator(1, BeadLabel((1, 2), None, "even"), 0, 0)
    with pytest.raises(ValueError):
        BeadLabel((1, 2), 1, "even")


def _exchange_unitary(n, k, l):
    """Permutation matrix exchanging qubits k and l."""
    dim = 2**n
    U = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n - q)) & 1 for q in range(1, n + 1)]
        bits[k - 1], bits[l - 1] = bits[l - 1], bits[k - 1]
        jdx = sum(b << (n - q) for q, b in zip(range(1, n + 1), bits))
        U[jdx, idx] = 1.0
    return U


def test_pair_exchange_action():
    # exchanging the two qubits maps even pair operators to themselves and
    # odd pair operators to their negation
    U = _exchange_unitary(2, 1, 2)
    for op in operator_catalog(2):
        if op.label.linearity != 2:
            continue
        transformed = U @ op.matrix @ U.T
        sign = 1.0 if op.label.parity == "even" else -1.0
        np.testing.assert_allclose(transformed, sign * op.matrix, atol=1e-12)


def test_trilinear_permutation_classes():
    U12 = _exchange_unitary(3, 1, 2)
    for op in operator_catalog(3):
        if op.label.tau is None:
            continue
        transformed = U12 @ op.matrix @ U12.T
        if op.label.tau in (1, 2):
            np.testing.assert_allclose(transformed, op.matrix, atol=1e-12)
        elif op.label.tau in (3, 4):
            np.testing.assert_allclose(transformed, -op.matrix, atol=1e-12)
    # tau1 fully symmetric, tau4 fully antisymmetric under any transposition
    U23 = _exchange_unitary(3, 2, 3)
    for op in operator_catalog(3):
        if op.label.tau in (1, 4):
            transformed = U23 @ op.matrix @ U23.T
            sign = 1.0 if op.label.tau == 1 else -1.0
            np.testing.assert_allclose(transformed, sign * op.matrix, atol=1e-12)


def test_decompose_examples(rng):
    dec = decompose(ket("00").matrix)
    assert dec.coefficients[("1", 1, 0)] == pytest.approx(0.5, abs=1e-12)
    dec = decompose(np.eye(8) / 8)
    for key, value in dec.coefficients.items():
        if key == ("empty", 0, 0):
            assert value == pytest.approx(1 / np.sqrt(8), abs=1e-12)
        else:
            assert abs(value) < 1e-12


def test_singlet_fully_symmetric_labels_only():
    dec = decompose(bell_state("psi-").matrix)
    for (label, j, m), value in dec.coefficients.items():
        if abs(value) > 1e-12:
            assert parse_label(label).fully_symmetric


@pytest.mark.parametrize("n", [1, 2, 3])
def test_roundtrip_random(n, rng):
    for _ in range(100 if n < 3 else 40):
        A = random_hermitian(n, rng)
        back = reconstruct(decompose(A))
        assert np.max(np.abs(back - A)) < 1e-12 * max(1.0, np.max(np.abs(A)))


def test_roundtrip_bell():
    rho = bell_state("phi+").matrix
    np.testing.assert_allclose(reconstruct(decompose(rho)), rho, atol=1e-12)


def test_zero_coefficients_give_zero_matrix():
    from beadsim.lisa import LisaDecomposition

    dec = LisaDecomposition(2, {})
    np.testing.assert_allclose(reconstruct(dec), np.zeros((4, 4)), atol=0)


def test_unknown_key_rejected():
    from beadsim.lisa import LisaDecomposition

    with pytest.raises(KeyError):
        reconstruct(LisaDecomposition(2, {("123_tau1_odd", 1, 0): 1.0}))


def test_non_hermitian_rejected(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    with pytest.raises(ValueError):
        decompose(A)


def test_serialization_roundtrip(rng):
    from beadsim.lisa import LisaDecomposition

    dec = decompose(random_hermitian(2, rng))
    back = LisaDecomposition.from_records(2, dec.to_records())
    assert back.coefficients == dec.coefficients


def test_component_norm_matches_matrix_norm(rng):
    psi = random_pure_state(2, rng)
    dec = decompose(psi.matrix)
    for label in label_catalog(2):
        comp = dec.component_matrix(label)
        direct = np.sqrt(np.trace(comp @ comp).real)
        assert dec.component_norm(label) == pytest.approx(direct, abs=1e-12)
