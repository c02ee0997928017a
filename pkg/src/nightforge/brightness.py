"""Depth- and sky-aware darkening of a daytime image into a clear night image.

Order of application: :func:`segment_sky`, :func:`build_illumination_mask`,
:func:`darken_sky`, :func:`pixelwise_gamma`, :func:`adjust_sky_mean`.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import check_same_size, luminance


def segment_sky(depth: np.ndarray, varrho: float) -> np.ndarray:
    """Sky where ``1 - depth >= varrho`` (disparity depth, so sky sits near 0)."""
    if not 0.0 < varrho < 1.0:
        raise ValueError(f"varrho must lie in (0, 1), got {varrho}")
    return (1.0 - np.asarray(depth, dtype=np.float64)) >= varrho


def build_illumination_mask(
    depth: np.ndarray,
    sky: np.ndarray,
    phi1: float,
    phi2: float,
    source: str = "depth",
) -> np.ndarray:
    """Per-pixel illumination field: the depth (or ``1 - depth``) scaled by
    ``phi1`` on sky pixels and ``phi2`` elsewhere."""
    depth = np.asarray(depth, dtype=np.float64)
    check_same_size(depth, sky, "depth and sky mask")
    if source == "depth":
        init = depth
    elif source == "inverse-depth":
        init = 1.0 - depth
    else:
        raise ValueError(f"unknown illumination source {source!r}")
    return np.where(sky, init * phi1, init * phi2)


def darken_sky(img: np.ndarray, sky: np.ndarray, rho: float) -> np.ndarray:
    if rho < 1.0:
        raise ValueError(f"rho must be >= 1, got {rho}")
    check_same_size(img, sky, "image and sky mask")
    out = img.copy()
    out[sky] = img[sky] / rho
    return out


def pixelwise_gamma(img: np.ndarray, illum: np.ndarray, alpha: float) -> np.ndarray:
    """Raise every pixel to its own exponent ``alpha * illum``.

    ``0 ** 0`` is taken as 1. Output is clamped to [0, 1].
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    check_same_size(img, illum, "image and illumination mask")
    exponent = (alpha * np.asarray(illum, dtype=np.float64))[:, :, None]
    out = np.power(img, exponent)
    out = np.where(exponent == 0.0, 1.0, out)
    return np.clip(out, 0.0, 1.0)


def adjust_sky_mean(img: np.ndarray, sky: np.ndarray, mu: float) -> np.ndarray:
    """Scale sky pixels uniformly so their mean luminance becomes ``mu``.

    The factor is ``mu / current_sky_mean``; results are clamped to [0, 1],
    so with too little headroom the mean ends up below ``mu``. An empty sky
    or a pure black sky leaves the image unchanged (with a warning).
    """
    if not 0.0 < mu <= 1.0:
        raise ValueError(f"mu must lie in (0, 1], got {mu}")
    check_same_size(img, sky, "image and sky mask")
    if not sky.any():
        warnings.warn("empty sky region; sky mean adjustment skipped", stacklevel=2)
        return img.copy()
    current = luminance(img)[sky].mean()
    with np.errstate(over="ignore", divide="ignore"):
        k = mu / current
    if not np.isfinite(k):
        warnings.warn("sky region is black; sky mean adjustment skipped", stacklevel=2)
        return img.copy()
    out = img.copy()
    out[sky] = np.clip(img[sky] * k, 0.0, 1.0)
    return out
