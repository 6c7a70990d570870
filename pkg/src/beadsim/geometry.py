"""Spherical directions and small vector helpers shared across the package."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SphericalDirection:
    """Direction on the unit sphere: polar angle from +z, azimuth from +x toward +y."""

    theta: float
    phi: float

    @property
    def vector(self) -> np.ndarray:
        return direction_vector(self.theta, self.phi)

    @property
    def antipode(self) -> "SphericalDirection":
        return SphericalDirection(np.pi - self.theta, self.phi + np.pi)


def direction_vector(theta, phi) -> np.ndarray:
    """Unit vector(s) (sinθcosφ, sinθsinφ, cosθ); broadcasts over array input."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def as_angles(direction) -> tuple[float, float]:
    """Coerce a SphericalDirection, (θ, φ) pair, or unit 3-vector to (θ, φ)."""
    if isinstance(direction, SphericalDirection):
        return direction.theta, direction.phi
    arr = np.asarray(direction, dtype=float)
    if arr.shape == (2,):
        return float(arr[0]), float(arr[1])
    if arr.shape == (3,):
        x, y, z = arr
        return float(np.arccos(np.clip(z, -1.0, 1.0))), float(np.arctan2(y, x))
    raise ValueError(f"cannot interpret {direction!r} as a spherical direction")


def as_unit_vector(direction, tol: float = 1e-9) -> np.ndarray:
    """Coerce to a unit 3-vector, rejecting non-normalized vector input."""
    if isinstance(direction, SphericalDirection):
        return direction.vector
    arr = np.asarray(direction, dtype=float)
    if arr.shape == (2,):
        return direction_vector(arr[0], arr[1])
    if arr.shape == (3,):
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > tol:
            raise ValueError(f"direction must be a unit vector, |r| = {norm}")
        return arr
    raise ValueError(f"cannot interpret {direction!r} as a direction")


def random_directions(n: int, rng: np.random.Generator) -> np.ndarray:
    """(n, 2) array of (θ, φ) drawn uniformly on the sphere."""
    z = rng.uniform(-1.0, 1.0, size=n)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.stack([np.arccos(z), phi], axis=-1)
