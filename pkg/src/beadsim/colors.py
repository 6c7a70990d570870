"""Color schemes mapping bead values (and E/C pairs) to RGB.

Diverging schemes are black at value 0 and ramp toward two opposing hues.
Discontinuous variants quantize |value| into ten bands of width 0.1 with a
distinguished brighter terminal color for values within 0.005 of ±1. The
exact band anchors are defined here (linear-in-band lightness); golden tests
pin them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TERMINAL_THRESHOLD = 0.995
BAND_WIDTH = 0.1
HIGH_CONTRAST_THRESHOLD = 0.1
TERMINAL_LIFT = 0.3  # blend fraction toward white for the terminal band

_HUES = {
    "red": np.array([1.0, 0.0, 0.0]),
    "green": np.array([0.0, 1.0, 0.0]),
    "yellow": np.array([1.0, 1.0, 0.0]),
    "blue": np.array([0.0, 0.0, 1.0]),
    "white": np.array([1.0, 1.0, 1.0]),
    "black": np.array([0.0, 0.0, 0.0]),
}


@dataclass(frozen=True)
class ColorScheme:
    id: str
    positive: str
    negative: str
    style: str  # "discontinuous" | "continuous" | "high-contrast" | "equiangular"
    experimental: bool = False


SCHEMES = {
    s.id: s
    for s in [
        ColorScheme("red-green-discontinuous", "red", "green", "discontinuous"),
        ColorScheme("yellow-blue-discontinuous", "yellow", "blue", "discontinuous"),
        ColorScheme("red-green-continuous", "red", "green", "continuous"),
        ColorScheme("yellow-blue-continuous", "yellow", "blue", "continuous"),
        ColorScheme("drops-linear", "red", "green", "continuous"),
        ColorScheme("red-blue-discontinuous", "red", "blue", "discontinuous"),
        ColorScheme("yellow-green-discontinuous", "yellow", "green", "discontinuous"),
        ColorScheme("black-white-high-contrast", "white", "black", "high-contrast"),
        ColorScheme("red-green-high-contrast", "red", "green", "high-contrast"),
        ColorScheme("yellow-blue-high-contrast", "yellow", "blue", "high-contrast"),
        ColorScheme("red-green-equiangular", "red", "green", "equiangular", experimental=True),
    ]
}

DEFAULT_SINGLE = "red-green-discontinuous"
DEFAULT_CONNECTED = "yellow-blue-discontinuous"

# band edges of the experimental equiangular scheme: cos of 10 equal angle steps
_EQUIANGULAR_EDGES = np.cos(np.linspace(np.pi / 2, 0.0, 11))[1:]


def parity_probability(value) -> float | np.ndarray:
    """Bit parity probability p = (1 - ⟨O⟩)/2, input clamped to [-1, 1]."""
    v = np.clip(np.asarray(value, dtype=float), -1.0, 1.0)
    p = (1.0 - v) / 2.0
    return float(p) if p.ndim == 0 else p


ZERO_BAND_TOL = 1e-9  # numerically-zero expectation values render black


def band_index(value) -> int | np.ndarray:
    """Discontinuous band 0..10 of |value| (band 0 = black at value 0)."""
    v = np.abs(np.clip(np.asarray(value, dtype=float), -1.0, 1.0))
    idx = np.minimum(np.ceil(v / BAND_WIDTH - 1e-12), 10).astype(int)
    idx = np.where(v <= ZERO_BAND_TOL, 0, np.maximum(idx, 1))
    return int(idx) if idx.ndim == 0 else idx


def scheme_color(value, scheme: str | ColorScheme = DEFAULT_SINGLE) -> np.ndarray:
    """RGB color(s) of expectation value(s); broadcasts to (..., 3)."""
    if isinstance(scheme, str):
        try:
            scheme = SCHEMES[scheme]
        except KeyError:
            raise ValueError(f"unknown color scheme {scheme!r}") from None
    v = np.clip(np.asarray(value, dtype=float), -1.0, 1.0)
    scalar = v.ndim == 0
    v = np.atleast_1d(v)
    pos = _HUES[scheme.positive]
    neg = _HUES[scheme.negative]
    hue = np.where(v[..., None] >= 0.0, pos, neg)
    if scheme.style == "continuous":
        out = hue * np.abs(v)[..., None]
    elif scheme.style == "high-contrast":
        neutral = (
            np.array([0.5, 0.5, 0.5])
            if scheme.id == "black-white-high-contrast"
            else _HUES["black"]
        )
        out = np.where(
            (np.abs(v) < HIGH_CONTRAST_THRESHOLD)[..., None], neutral, hue
        ).astype(float)
    else:
        if scheme.style == "equiangular":
            bands = np.searchsorted(_EQUIANGULAR_EDGES, np.abs(v), side="left") + 1
            bands = np.where(v == 0.0, 0, np.minimum(bands, 10))
        else:
            bands = band_index(v)
        out = hue * (np.asarray(bands)[..., None] / 10.0)
        terminal = hue + TERMINAL_LIFT * (_HUES["white"] - hue)
        out = np.where((np.abs(v) > TERMINAL_THRESHOLD)[..., None], terminal, out)
    return out[0] if scalar else out


def correlation_angle(connected: float, compound: float) -> float:
    """Four-quadrant angle of the (C, E) pair in [0, 2π); (0, 0) maps to 0."""
    if connected == 0.0 and compound == 0.0:
        return 0.0
    return float(np.arctan2(connected, compound) % (2.0 * np.pi))


def blend_total(connected, compound, positive_scheme: str = DEFAULT_SINGLE,
                connected_scheme: str = DEFAULT_CONNECTED) -> np.ndarray:
    """Total-correlation color: blend of the compound and connected scales.

    Both component colors are read at sgn(component)·|T| (T = E + C) and mixed
    with weight 2·atan(|E|/|C|)/π, so E = -C always lands on black.
    """
    e = np.asarray(connected, dtype=float)
    c = np.asarray(compound, dtype=float)
    scalar = e.ndim == 0 and c.ndim == 0
    e, c = np.broadcast_arrays(np.atleast_1d(e), np.atleast_1d(c))
    t_abs = np.abs(e + c)
    gamma_c = scheme_color(np.sign(c) * t_abs, positive_scheme)
    gamma_e = scheme_color(np.sign(e) * t_abs, connected_scheme)
    with np.errstate(divide="ignore", invalid="ignore"):
        angle = np.arctan2(np.abs(e), np.abs(c))
    weight = (2.0 * angle / np.pi)[..., None]
    out = gamma_c + weight * (gamma_e - gamma_c)
    return out[0] if scalar else out


def to_uint8(rgb: np.ndarray) -> np.ndarray:
    return np.clip(np.round(np.asarray(rgb) * 255.0), 0, 255).astype(np.uint8)
