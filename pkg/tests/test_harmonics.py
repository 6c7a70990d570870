import numpy as np
import pytest

from beadsim.harmonics import real_sph_harm


def test_constant_value():
    assert real_sph_harm(0, 0, 0.7, 1.3) == pytest.approx(0.28209479, abs=1e-8)


def test_axial_values_at_pole():
    for j in range(4):
        expected = np.sqrt((2 * j + 1) / (4 * np.pi))
        assert real_sph_harm(j, 0, 0.0, 0.0) == pytest.approx(expected, abs=1e-12)


def test_rank2_equator():
    # P2(0) = -1/2
    expected = -0.5 * np.sqrt(5 / (4 * np.pi))
    for phi in (0.0, 1.0, 4.0):
        assert real_sph_harm(2, 0, np.pi / 2, phi) == pytest.approx(expected, abs=1e-12)


def test_cartesian_alignment():
    # m = 1 tracks x, m = -1 tracks y, m = 0 tracks z
    c = np.sqrt(3 / (4 * np.pi))
    assert real_sph_harm(1, 1, np.pi / 2, 0.0) == pytest.approx(c)
    assert real_sph_harm(1, -1, np.pi / 2, np.pi / 2) == pytest.approx(c)
    assert real_sph_harm(1, 0, 0.0, 0.0) == pytest.approx(c)


def test_orthonormality_gauss_legendre():
    # Gauss-Legendre in cos(theta) x trapezoid in phi integrates deg <= 7
    # polynomials exactly, enough for products of rank <= 3 harmonics
    nodes, weights = np.polynomial.legendre.leggauss(8)
    theta = np.arccos(nodes)
    n_phi = 16
    phi = np.linspace(0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.repeat(weights[:, None], n_phi, axis=1) * (2 * np.pi / n_phi)
    keys = [(j, m) for j in range(4) for m in range(-j, j + 1)]
    values = {key: real_sph_harm(key[0], key[1], tt, pp) for key in keys}
    for i, a in enumerate(keys):
        for b in keys[i:]:
            integral = float(np.sum(values[a] * values[b] * ww))
            expected = 1.0 if a == b else 0.0
            assert integral == pytest.approx(expected, abs=1e-12), (a, b)


def test_parity():
    rng = np.random.default_rng(5)
    for j in range(4):
        for m in range(-j, j + 1):
            theta = rng.uniform(0, np.pi, 20)
            phi = rng.uniform(0, 2 * np.pi, 20)
            direct = real_sph_harm(j, m, theta, phi)
            flipped = real_sph_harm(j, m, np.pi - theta, phi + np.pi)
            np.testing.assert_allclose(flipped, (-1.0) ** j * direct, atol=1e-12)


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        real_sph_harm(4, 0, 0.0, 0.0)
    with pytest.raises(ValueError):
        real_sph_harm(2, 3, 0.0, 0.0)
