"""Real spherical harmonics up to rank 3.

Closed forms in the Cartesian-polynomial convention (m > 0 paired with cos(mφ),
m < 0 with sin(|m|φ), no Condon-Shortley phase), so Y_{1,1} ∝ x, Y_{1,-1} ∝ y,
Y_{1,0} ∝ z. This is the convention pinned by the axial-operator rotation
identity used in the tomography tests.
"""
from __future__ import annotations

import numpy as np

MAX_RANK = 3

_SQPI = np.sqrt(np.pi)

# (j, m) -> function of cartesian components on the unit sphere
_FORMS = {
    (0, 0): lambda x, y, z: np.full_like(x, 0.5 / _SQPI),
    (1, -1): lambda x, y, z: np.sqrt(3.0 / (4.0 * np.pi)) * y,
    (1, 0): lambda x, y, z: np.sqrt(3.0 / (4.0 * np.pi)) * z,
    (1, 1): lambda x, y, z: np.sqrt(3.0 / (4.0 * np.pi)) * x,
    (2, -2): lambda x, y, z: 0.5 * np.sqrt(15.0 / np.pi) * x * y,
    (2, -1): lambda x, y, z: 0.5 * np.sqrt(15.0 / np.pi) * y * z,
    (2, 0): lambda x, y, z: 0.25 * np.sqrt(5.0 / np.pi) * (3.0 * z * z - 1.0),
    (2, 1): lambda x, y, z: 0.5 * np.sqrt(15.0 / np.pi) * x * z,
    (2, 2): lambda x, y, z: 0.25 * np.sqrt(15.0 / np.pi) * (x * x - y * y),
    (3, -3): lambda x, y, z: 0.25 * np.sqrt(35.0 / (2.0 * np.pi)) * y * (3.0 * x * x - y * y),
    (3, -2): lambda x, y, z: 0.5 * np.sqrt(105.0 / np.pi) * x * y * z,
    (3, -1): lambda x, y, z: 0.25 * np.sqrt(21.0 / (2.0 * np.pi)) * y * (5.0 * z * z - 1.0),
    (3, 0): lambda x, y, z: 0.25 * np.sqrt(7.0 / np.pi) * z * (5.0 * z * z - 3.0),
    (3, 1): lambda x, y, z: 0.25 * np.sqrt(21.0 / (2.0 * np.pi)) * x * (5.0 * z * z - 1.0),
    (3, 2): lambda x, y, z: 0.25 * np.sqrt(105.0 / np.pi) * z * (x * x - y * y),
    (3, 3): lambda x, y, z: 0.25 * np.sqrt(35.0 / (2.0 * np.pi)) * x * (x * x - 3.0 * y * y),
}


def real_sph_harm(j: int, m: int, theta, phi):
    """Orthonormal real spherical harmonic Y_{j,m}(θ, φ); broadcasts over arrays."""
    if not (0 <= j <= MAX_RANK) or abs(m) > j:
        raise ValueError(f"(j, m) = ({j}, {m}) outside the supported table (j <= {MAX_RANK})")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    x = st * np.cos(phi)
    y = st * np.sin(phi)
    z = np.cos(theta) * np.ones_like(phi)
    out = _FORMS[(j, m)](x * np.ones_like(z), y * np.ones_like(z), z)
    if out.ndim == 0:
        return float(out)
    return out
