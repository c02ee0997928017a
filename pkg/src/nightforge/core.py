"""Shared raster conventions and synthesis parameters.

Rasters are plain numpy arrays:

* image: ``(H, W, 3)`` float64, values in [0, 1] (sRGB bytes / 255, not linearized)
* depth: ``(H, W)`` float64 in [0, 1], disparity convention (1 = nearest, 0 = sky)
* sky mask: ``(H, W)`` bool, True on sky pixels
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

DEFAULT_PALETTE: tuple[tuple[float, float, float], ...] = (
    (1.0, 0.75, 0.35),  # sodium
    (0.9, 0.95, 1.0),  # cool white
    (1.0, 0.3, 0.3),  # neon red
    (0.4, 1.0, 0.5),  # neon green
)

ILLUMINATION_SOURCES = ("depth", "inverse-depth")
LIGHT_PLACEMENTS = ("non-sky", "whole-frame")


class ConfigError(ValueError):
    """Invalid parameters; ``problems`` holds ``(field_path, message)`` pairs."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = list(problems)
        lines = [f"{path}: {msg}" for path, msg in self.problems]
        super().__init__("invalid configuration:\n  " + "\n  ".join(lines))


def as_image(data: Any) -> np.ndarray:
    """Validate and return ``data`` as a float64 ``(H, W, 3)`` image."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"image must have shape (H, W, 3), got {img.shape}")
    if img.shape[0] == 0 or img.shape[1] == 0:
        raise ValueError("image has a zero dimension")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains non-finite values")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("image values must lie in [0, 1]")
    return img


def as_depth(data: Any) -> np.ndarray:
    """Validate and return ``data`` as a float64 ``(H, W)`` depth map."""
    depth = np.asarray(data, dtype=np.float64)
    if depth.ndim != 2:
        raise ValueError(f"depth map must be 2-D, got shape {depth.shape}")
    if depth.size == 0:
        raise ValueError("depth map has a zero dimension")
    if not np.all(np.isfinite(depth)):
        raise ValueError("depth map contains non-finite values")
    if depth.min() < 0.0 or depth.max() > 1.0:
        raise ValueError("depth values must lie in [0, 1]")
    return depth


def check_same_size(a: np.ndarray, b: np.ndarray, what: str = "rasters") -> None:
    if a.shape[:2] != b.shape[:2]:
        raise ValueError(f"{what} differ in size: {a.shape[:2]} vs {b.shape[:2]}")


def luminance(img: np.ndarray) -> np.ndarray:
    """Unweighted channel mean ``(R + G + B) / 3``."""
    return (img[..., 0] + img[..., 1] + img[..., 2]) / 3.0


@dataclass(frozen=True)
class SynthesisParams:
    """Every knob of the night-haze synthesis chain.

    ``varrho`` through ``xi`` default to the values used for the published
    dataset; the rest (``rho``, noise, light sampling ranges, palette) are
    our own choices.
    """

    varrho: float = 0.98
    mu: float = 0.85
    phi1: float = 2.0
    phi2: float = 1.5
    rho: float = 2.0
    alpha: float = 4.0
    beta: float = 1.0
    xi: tuple[float, float, float] = (1.0, 3.0, 1.8)
    noise_sigma: float = 0.02
    light_count: tuple[int, int] = (1, 3)
    cone_half_angle: tuple[float, float] = (math.pi / 6, math.pi / 3)
    palette: tuple[tuple[float, float, float], ...] = DEFAULT_PALETTE
    illumination_source: str = "depth"
    light_placement: str = "non-sky"
    # Length that maps to D = 1, as a fraction of the image diagonal.
    light_distance_scale: float = 0.05

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", tuple(float(v) for v in self.xi))
        object.__setattr__(self, "light_count", tuple(int(v) for v in self.light_count))
        object.__setattr__(self, "cone_half_angle", tuple(float(v) for v in self.cone_half_angle))
        object.__setattr__(
            self, "palette", tuple(tuple(float(c) for c in tint) for tint in self.palette)
        )
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    def problems(self) -> list[tuple[str, str]]:
        out: list[tuple[str, str]] = []

        def need(ok: bool, path: str, msg: str) -> None:
            if not ok:
                out.append((path, msg))

        need(0.0 < self.varrho < 1.0, "varrho", f"must lie in (0, 1), got {self.varrho}")
        need(0.0 < self.mu <= 1.0, "mu", f"must lie in (0, 1], got {self.mu}")
        need(self.phi1 >= 0.0, "phi1", f"must be >= 0, got {self.phi1}")
        need(self.phi2 >= 0.0, "phi2", f"must be >= 0, got {self.phi2}")
        need(self.rho >= 1.0, "rho", f"must be >= 1, got {self.rho}")
        need(self.alpha > 0.0, "alpha", f"must be > 0, got {self.alpha}")
        need(self.beta >= 0.0, "beta", f"must be >= 0, got {self.beta}")
        if len(self.xi) != 3:
            out.append(("xi", f"needs exactly 3 coefficients, got {len(self.xi)}"))
        else:
            need(self.xi[0] > 0.0, "xi[0]", f"must be > 0, got {self.xi[0]}")
            need(self.xi[1] >= 0.0, "xi[1]", f"must be >= 0, got {self.xi[1]}")
            need(self.xi[2] >= 0.0, "xi[2]", f"must be >= 0, got {self.xi[2]}")
        need(self.noise_sigma >= 0.0, "noise_sigma", f"must be >= 0, got {self.noise_sigma}")
        if len(self.light_count) != 2:
            out.append(("light_count", "needs [n_min, n_max]"))
        else:
            lo, hi = self.light_count
            need(lo >= 0, "light_count[0]", f"must be >= 0, got {lo}")
            need(lo <= hi, "light_count", f"n_min > n_max ({lo} > {hi})")
        if len(self.cone_half_angle) != 2:
            out.append(("cone_half_angle", "needs [low, high] in radians"))
        else:
            lo, hi = self.cone_half_angle
            need(0.0 < lo <= math.pi / 2, "cone_half_angle[0]", "must lie in (0, pi/2]")
            need(0.0 < hi <= math.pi / 2, "cone_half_angle[1]", "must lie in (0, pi/2]")
            need(lo <= hi, "cone_half_angle", "low > high")
        need(len(self.palette) > 0, "palette", "must not be empty")
        for k, tint in enumerate(self.palette):
            if len(tint) != 3 or not all(0.0 <= c <= 1.0 for c in tint):
                out.append((f"palette[{k}]", "tint must be 3 values in [0, 1]"))
        need(
            self.illumination_source in ILLUMINATION_SOURCES,
            "illumination_source",
            f"must be one of {ILLUMINATION_SOURCES}",
        )
        need(
            self.light_placement in LIGHT_PLACEMENTS,
            "light_placement",
            f"must be one of {LIGHT_PLACEMENTS}",
        )
        need(
            self.light_distance_scale > 0.0,
            "light_distance_scale",
            f"must be > 0, got {self.light_distance_scale}",
        )
        return out

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["xi"] = list(self.xi)
        d["light_count"] = list(self.light_count)
        d["cone_half_angle"] = list(self.cone_half_angle)
        d["palette"] = [list(t) for t in self.palette]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SynthesisParams":
        return cls(**d)


@dataclass(frozen=True)
class LightSource:
    kind: str  # "point" or "cone"
    center: tuple[int, int]  # (row, col)
    tint: tuple[float, float, float]
    beta: float = 1.0
    axis: tuple[float, float] | None = None  # unit (drow, dcol), cones only
    half_angle: float | None = None  # radians, cones only
    xi: tuple[float, float, float] = field(default=(1.0, 3.0, 1.8))

    def summary(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "kind": self.kind,
            "center": list(self.center),
            "tint": list(self.tint),
        }
        if self.kind == "cone":
            d["axis"] = list(self.axis)
            d["half_angle"] = self.half_angle
        return d
