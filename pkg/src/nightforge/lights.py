"""Synthetic active light sources: attenuation, point and cone emitters, tinting."""

from __future__ import annotations

import math

import numpy as np

from .core import LightSource, SynthesisParams
from .rng import RngStream


def diagonal(shape: tuple[int, int]) -> float:
    """Distance between opposite corner pixel centres (1 for a single pixel)."""
    h, w = shape[:2]
    d = math.hypot(h - 1, w - 1)
    return d if d > 0 else 1.0


def _offsets(shape: tuple[int, int], center: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    h, w = shape[:2]
    dr = np.arange(h, dtype=np.float64)[:, None] - center[0]
    dc = np.arange(w, dtype=np.float64)[None, :] - center[1]
    return np.broadcast_to(dr, (h, w)), np.broadcast_to(dc, (h, w))


def attenuation_map(
    shape: tuple[int, int],
    center: tuple[int, int],
    xi1: float,
    xi2: float,
    xi3: float,
    unit: float | None = None,
) -> np.ndarray:
    """``1 / (xi1 + xi2*D + xi3*D**2)`` where ``D`` is the pixel distance to
    ``center`` divided by ``unit`` (the image diagonal when omitted, so D <= 1)."""
    if xi1 <= 0.0:
        raise ValueError(f"xi1 must be > 0, got {xi1}")
    if xi2 < 0.0 or xi3 < 0.0:
        raise ValueError("xi2 and xi3 must be >= 0")
    if unit is None:
        unit = diagonal(shape)
    dr, dc = _offsets(shape, center)
    dist = np.sqrt(dr * dr + dc * dc) / unit
    return attenuation(dist, xi1, xi2, xi3)


def attenuation(dist: np.ndarray, xi1: float, xi2: float, xi3: float) -> np.ndarray:
    dist = np.asarray(dist, dtype=np.float64)
    return 1.0 / (xi1 + xi2 * dist + xi3 * dist * dist)


def render_point(atten: np.ndarray, beta: float = 1.0) -> np.ndarray:
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    return atten * beta


def render_cone(
    atten: np.ndarray,
    apex: tuple[int, int],
    axis: tuple[float, float],
    half_angle: float,
    beta: float = 1.0,
) -> np.ndarray:
    """Directional emitter: attenuation times the clipped cosine between the
    pixel direction and ``axis``, zero outside ``half_angle``.

    ``axis`` is a unit ``(drow, dcol)`` vector. The apex pixel itself keeps
    the full attenuation value. Scaled by ``beta`` like point lights.
    """
    ax = np.asarray(axis, dtype=np.float64)
    if abs(math.hypot(ax[0], ax[1]) - 1.0) > 1e-9:
        raise ValueError("cone axis must be a unit vector")
    if not 0.0 < half_angle <= math.pi / 2:
        raise ValueError("half_angle must lie in (0, pi/2]")
    dr, dc = _offsets(atten.shape, apex)
    norm = np.sqrt(dr * dr + dc * dc)
    at_apex = norm == 0.0
    safe = np.where(at_apex, 1.0, norm)
    cos = np.clip((dr * ax[0] + dc * ax[1]) / safe, -1.0, 1.0)
    inside = np.arccos(cos) <= half_angle
    weight = np.where(inside, np.clip(cos, 0.0, 1.0), 0.0)
    weight = np.where(at_apex, 1.0, weight)
    return atten * weight * beta


def colorize(layer: np.ndarray, tint: tuple[float, float, float]) -> np.ndarray:
    """Single-channel layer -> ``(H, W, 3)`` layer scaled per channel by ``tint``."""
    tint_arr = np.asarray(tint, dtype=np.float64)
    if tint_arr.shape != (3,) or tint_arr.min() < 0.0 or tint_arr.max() > 1.0:
        raise ValueError("tint must be three values in [0, 1]")
    return layer[:, :, None] * tint_arr


def sample_lights(
    rng: RngStream, params: SynthesisParams, sky: np.ndarray
) -> list[LightSource]:
    """Draw the light sources for one image.

    Draw order per image: count, then per light: center, kind, tint,
    and for cones axis angle and half-angle. Centers come from non-sky
    pixels unless placement is ``whole-frame`` or the frame is all sky.
    """
    gen = rng.generator("lights")
    n_min, n_max = params.light_count
    count = int(gen.integers(n_min, n_max + 1))
    h, w = sky.shape
    if params.light_placement == "non-sky" and not sky.all():
        candidates = np.flatnonzero(~sky.ravel())
    else:
        candidates = np.arange(h * w)
    lo, hi = params.cone_half_angle
    lights = []
    for _ in range(count):
        flat = int(candidates[gen.integers(0, candidates.size)])
        center = (flat // w, flat % w)
        kind = "point" if gen.integers(0, 2) == 0 else "cone"
        tint = params.palette[int(gen.integers(0, len(params.palette)))]
        axis = half = None
        if kind == "cone":
            theta = gen.uniform(0.0, 2.0 * math.pi)
            axis = (math.sin(theta), math.cos(theta))
            half = float(gen.uniform(lo, hi))
        lights.append(
            LightSource(
                kind=kind,
                center=center,
                tint=tint,
                beta=params.beta,
                axis=axis,
                half_angle=half,
                xi=params.xi,
            )
        )
    return lights


def render_light(
    light: LightSource, shape: tuple[int, int], distance_scale: float = 1.0
) -> np.ndarray:
    """RGB glow layer for one light; ``distance_scale`` is the fraction of the
    diagonal that maps to unit distance."""
    atten = attenuation_map(shape, light.center, *light.xi, unit=diagonal(shape) * distance_scale)
    if light.kind == "point":
        layer = render_point(atten, light.beta)
    elif light.kind == "cone":
        layer = render_cone(atten, light.center, light.axis, light.half_angle, light.beta)
    else:
        raise ValueError(f"unknown light kind {light.kind!r}")
    return colorize(layer, light.tint)
