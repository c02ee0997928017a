"""Brightness label, brightness-weighted skip fusion and the training losses,
written against plain arrays so they can be checked without a DL framework.

Feature maps are ``(H, W, C)`` arrays; brightness maps are ``(gh, gw)``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .core import luminance

EPS = 1e-7


def _cell_starts(n: int, cells: int) -> np.ndarray:
    # Uniform cells of n // cells pixels; the last cell absorbs the remainder.
    return np.arange(cells) * (n // cells)


def brightness_label(img: np.ndarray, grid: tuple[int, int]) -> np.ndarray:
    """Mean luminance of each cell of a ``gh x gw`` partition of the image."""
    gh, gw = grid
    h, w = img.shape[:2]
    if gh <= 0 or gw <= 0:
        raise ValueError(f"grid dimensions must be positive, got {grid}")
    if gh > h or gw > w:
        raise ValueError(f"grid {grid} is finer than the image {(h, w)}")
    lum = luminance(img)
    rows, cols = _cell_starts(h, gh), _cell_starts(w, gw)
    sums = np.add.reduceat(np.add.reduceat(lum, rows, axis=0), cols, axis=1)
    heights = np.diff(np.append(rows, h))
    widths = np.diff(np.append(cols, w))
    return sums / (heights[:, None] * widths[None, :])


def resample_nearest(bmap: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Nearest-neighbour resize of a 2-D map to ``shape``."""
    gh, gw = bmap.shape
    h, w = shape
    ri = (np.arange(h) * gh) // h
    ci = (np.arange(w) * gw) // w
    return bmap[ri[:, None], ci[None, :]]


def skip_fuse(
    gamma_feat: np.ndarray,
    dec_feat: np.ndarray,
    bmap: np.ndarray | None,
    level: int,
) -> np.ndarray:
    """Skip connection: level 1 weights the transferred features by
    ``1 + bmap`` before adding the decoder features; deeper levels add only."""
    if gamma_feat.shape != dec_feat.shape:
        raise ValueError(f"feature shapes differ: {gamma_feat.shape} vs {dec_feat.shape}")
    if level not in (1, 2, 3, 4):
        raise ValueError(f"level must be 1..4, got {level}")
    if level != 1 or bmap is None:
        return gamma_feat + dec_feat
    bmap = np.asarray(bmap, dtype=np.float64)
    if bmap.shape != gamma_feat.shape[:2]:
        bmap = resample_nearest(bmap, gamma_feat.shape[:2])
    return gamma_feat * (1.0 + bmap[:, :, None]) + dec_feat


def _check_pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def loss_brightness(pred: np.ndarray, target: np.ndarray, normalize: bool = False) -> float:
    """Squared error summed over the batch and every element.

    With ``normalize=True`` the mean is returned instead of the sum.
    """
    pred, target = _check_pair(pred, target)
    sq = (pred - target) ** 2
    return float(sq.mean() if normalize else sq.sum())


def loss_pixel(pred: np.ndarray, target: np.ndarray, normalize: bool = False) -> float:
    """Absolute error summed over the batch and every element (mean if ``normalize``)."""
    pred, target = _check_pair(pred, target)
    ab = np.abs(pred - target)
    return float(ab.mean() if normalize else ab.sum())


def loss_adversarial(real_scores: Sequence[float], fake_scores: Sequence[float]) -> float:
    """``mean(log D(real)) + mean(log(1 - D(fake)))`` for discriminator
    probabilities, each clamped to ``[1e-7, 1 - 1e-7]``."""
    real = np.asarray(real_scores, dtype=np.float64).ravel()
    fake = np.asarray(fake_scores, dtype=np.float64).ravel()
    if real.size == 0 or fake.size == 0:
        raise ValueError("score lists must be non-empty")
    real = np.clip(real, EPS, 1.0 - EPS)
    fake = np.clip(fake, EPS, 1.0 - EPS)
    return float(np.log(real).mean() + np.log1p(-fake).mean())


def loss_total(
    pixel: float, adversarial: float, brightness: float, lambda1: float = 0.5, lambda2: float = 1.0
) -> float:
    return pixel + lambda1 * adversarial + lambda2 * brightness
