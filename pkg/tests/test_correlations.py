import itertools

import numpy as np
import pytest

from beadsim.beads import bead_coefficients
from beadsim.correlations import (
    connected_corr,
    connected_operator,
    correlation_beads,
    entanglement_norm,
    total_corr,
)
from beadsim.geometry import direction_vector, random_directions
from beadsim.lisa import label_catalog, pauli_string_matrix
from beadsim.states import (
    DensityOperator,
    bell_state,
    ghz_state,
    ket,
    random_product_state,
    random_pure_state,
    schmidt_state,
    w_state,
)

Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)


def ursell_3q_brute(state, dirs):
    """Independent oracle: recursive Ursell combination of raw expectations."""
    t123 = total_corr(state, (1, 2, 3), dirs)
    singles = [total_corr(state, (q,), [d]) for q, d in zip((1, 2, 3), dirs)]
    pairs = {
        (1, 2): total_corr(state, (1, 2), [dirs[0], dirs[1]]),
        (1, 3): total_corr(state, (1, 3), [dirs[0], dirs[2]]),
        (2, 3): total_corr(state, (2, 3), [dirs[1], dirs[2]]),
    }
    e12 = pairs[(1, 2)] - singles[0] * singles[1]
    e13 = pairs[(1, 3)] - singles[0] * singles[2]
    e23 = pairs[(2, 3)] - singles[1] * singles[2]
    return (t123 - singles[0] * e23 - singles[1] * e13 - singles[2] * e12
            - singles[0] * singles[1] * singles[2])


def test_total_corr_examples():
    assert total_corr(bell_state("phi+"), (1, 2), [Z, Z]) == pytest.approx(1.0, abs=1e-12)
    assert total_corr(ket("00"), (1, 2), [Z, Z]) == pytest.approx(1.0, abs=1e-12)
    assert total_corr(ghz_state(), (1, 2, 3), [X, X, X]) == pytest.approx(1.0, abs=1e-12)


def test_total_corr_bounded(rng):
    for _ in range(20):
        psi = random_pure_state(3, rng)
        dirs = [direction_vector(*d) for d in random_directions(3, rng)]
        value = total_corr(psi, (1, 2, 3), dirs)
        assert -1.0 - 1e-9 <= value <= 1.0 + 1e-9


def test_connected_product_state_vanishes(rng):
    psi = random_product_state(2, rng)
    dirs = [direction_vector(*d) for d in random_directions(2, rng)]
    assert connected_corr(psi, (1, 2), dirs) == pytest.approx(0.0, abs=1e-10)


def test_connected_schmidt_zz():
    assert connected_corr(schmidt_state(np.pi / 4), (1, 2), [Z, Z]) == pytest.approx(0.5, abs=1e-12)


def test_connected_w_pair_zz():
    assert connected_corr(w_state(), (1, 2), [Z, Z]) == pytest.approx(-4 / 9, abs=1e-12)


def test_connected_rejects_mixed():
    mixed = DensityOperator(np.eye(4) / 4)
    with pytest.raises(ValueError):
        connected_corr(mixed, (1, 2), [Z, Z])
    with pytest.raises(ValueError):
        connected_operator(mixed)


def test_connected_operator_product_states(rng):
    # bilinear coefficients of the modified operator vanish for product states
    tilde = connected_operator(ket("00"))
    for a1 in "xyz":
        for a2 in "xyz":
            coeff = np.trace(tilde @ pauli_string_matrix(2, {1: a1, 2: a2})).real
            assert abs(coeff) < 1e-12


def test_connected_operator_bell_unchanged():
    rho = bell_state("phi+").matrix
    tilde = connected_operator(bell_state("phi+"))
    np.testing.assert_allclose(tilde, rho, atol=1e-12)


def test_connected_operator_matches_brute_force_ursell(rng):
    psi = random_pure_state(3, rng)
    tilde = connected_operator(psi)
    axes = [direction_vector(np.pi / 2, 0.0), direction_vector(np.pi / 2, np.pi / 2),
            direction_vector(0.0, 0.0)]
    for i, j, k in itertools.product(range(3), repeat=3):
        word = {1: "xyz"[i], 2: "xyz"[j], 3: "xyz"[k]}
        coeff = np.trace(tilde @ pauli_string_matrix(3, word)).real
        expected = ursell_3q_brute(psi, [axes[i], axes[j], axes[k]])
        assert coeff == pytest.approx(expected, abs=1e-10)


def test_direction_covariance_of_e_beads(rng):
    # connected correlation from the modified operator's beads equals the
    # direct Ursell formula in random directions
    psi = random_pure_state(3, rng)
    decomp = correlation_beads(psi)
    for _ in range(10):
        d = random_directions(1, rng)[0]
        r = direction_vector(*d)
        bead_val = decomp.e_beads["123_tau1_odd"].value(tuple(d))
        # fully symmetric g-linear bead of rho-tilde reads the symmetrized
        # connected correlation directly
        direct = connected_corr(psi, (1, 2, 3), [r, r, r])
        assert bead_val == pytest.approx(direct, abs=1e-9)
        pair_val = decomp.e_beads["12_even"].value(tuple(d))
        assert pair_val == pytest.approx(connected_corr(psi, (1, 2), [r, r]), abs=1e-9)


def test_additivity_t_equals_e_plus_c(rng):
    for n in (2, 3):
        for _ in range(20):
            psi = random_pure_state(n, rng)
            decomp = correlation_beads(psi)
            for label in label_catalog(n):
                if label.linearity < 2:
                    continue
                for key, t_val in decomp.t_beads[label].coefficients.items():
                    e_val = decomp.e_beads[label].coefficients[key]
                    c_val = decomp.c_beads[label].coefficients[key]
                    assert t_val == pytest.approx(e_val + c_val, abs=1e-12)


def test_product_state_annihilation(rng):
    for _ in range(200):
        n = int(rng.integers(2, 4))
        psi = random_product_state(n, rng)
        decomp = correlation_beads(psi)
        for label in label_catalog(n):
            if label.linearity < 2:
                continue
            values = decomp.e_beads[label].coefficients.values()
            assert max((abs(v) for v in values), default=0.0) < 1e-10


def test_maximally_entangled_collapse():
    for state in (bell_state("phi+"), bell_state("psi-"), ghz_state()):
        decomp = correlation_beads(state)
        n = state.qubit_count
        for label in label_catalog(n):
            if label.linearity < 2:
                continue
            for key, c_val in decomp.c_beads[label].coefficients.items():
                assert abs(c_val) < 1e-12
                assert decomp.t_beads[label].coefficients[key] == pytest.approx(
                    decomp.e_beads[label].coefficients[key], abs=1e-12)


def test_schmidt_family_brightness():
    thetas = [0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8, np.pi / 2]
    values = []
    for theta in thetas:
        decomp = correlation_beads(schmidt_state(theta))
        values.append(decomp.e_beads["12_even"].value((0.0, 0.0)))
    assert values[0] == pytest.approx(0.0, abs=1e-12)
    assert values[-1] == pytest.approx(1.0, abs=1e-12)
    assert all(b > a - 1e-12 for a, b in zip(values, values[1:]))
    # closed form: E_zz = sin^2(theta)
    np.testing.assert_allclose(values, np.sin(thetas) ** 2, atol=1e-12)


def test_singlet_e_bead_uniform_minus_one(rng):
    decomp = correlation_beads(bell_state("psi-"))
    dirs = random_directions(1000, rng)
    values = decomp.e_beads["12_even"].value(theta=dirs[:, 0], phi=dirs[:, 1])
    np.testing.assert_allclose(values, -1.0, atol=1e-9)


def test_ghz_pairwise_e_zz():
    decomp = correlation_beads(ghz_state())
    for pair in ("12_even", "13_even", "23_even"):
        assert decomp.e_beads[pair].value((0.0, 0.0)) == pytest.approx(1.0, abs=1e-12)
    assert decomp.t_beads["123_tau1_odd"].value((0.0, 0.0)) == pytest.approx(0.0, abs=1e-12)


def test_entanglement_norm_values(rng):
    # independent oracle: norm of the multilinear part of the modified operator
    state = bell_state("phi+")
    tilde = connected_operator(state)
    stripped = tilde.copy().astype(complex)
    stripped -= np.eye(4) * np.trace(stripped) / 4
    for q, ax in itertools.product((1, 2), "xyz"):
        P = pauli_string_matrix(2, {q: ax})
        stripped -= P * np.trace(P @ tilde) / 4
    oracle = float(np.sqrt(np.trace(stripped @ stripped).real))
    total, per_label = entanglement_norm(state)
    assert total == pytest.approx(oracle, abs=1e-12)
    assert total == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    assert per_label["12_even"] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)

    for _ in range(10):
        assert entanglement_norm(random_product_state(3, rng))[0] < 1e-10


def test_entanglement_norm_monotone_in_schmidt_angle():
    thetas = np.linspace(0.0, np.pi / 2, 12)
    norms = [entanglement_norm(schmidt_state(t))[0] for t in thetas]
    assert all(b > a - 1e-12 for a, b in zip(norms, norms[1:]))


def test_omit_flags():
    decomp = correlation_beads(ket("00"))
    flags = decomp.omit_flags()
    assert flags["12_even"] and flags["12_odd"]
    assert not flags["1"] and not flags["2"]
    decomp = correlation_beads(bell_state("phi+"))
    assert not decomp.omit_flags()["12_even"]
