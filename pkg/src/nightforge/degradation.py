"""Additive composition of the night base image, light glows and noise."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .rng import RngStream, box_muller


def make_noise(rng: RngStream, shape: tuple[int, ...], sigma: float) -> np.ndarray:
    """I.i.d. ``N(0, sigma**2)`` field drawn from the stream's ``noise`` purpose.

    Values are generated in C order with :func:`nightforge.rng.box_muller`.
    """
    if sigma < 0.0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    n = int(np.prod(shape))
    if sigma == 0.0:
        return np.zeros(shape)
    return (sigma * box_muller(rng.generator("noise"), n)).reshape(shape)


def sum_glows(glows: Sequence[np.ndarray], shape: tuple[int, ...]) -> np.ndarray:
    """Pixelwise sum of glow layers, independent of list order.

    Contributions are sorted per element before accumulating so any
    permutation of ``glows`` gives bit-identical totals.
    """
    if not glows:
        return np.zeros(shape)
    for g in glows:
        if g.shape != tuple(shape):
            raise ValueError(f"glow layer shape {g.shape} does not match {tuple(shape)}")
    if len(glows) == 1:
        return np.asarray(glows[0], dtype=np.float64).copy()
    stack = np.sort(np.stack(glows), axis=0)
    total = stack[0].copy()
    for layer in stack[1:]:
        total += layer
    return total


def compose_hazy(
    base: np.ndarray, glows: Sequence[np.ndarray], noise: np.ndarray
) -> np.ndarray:
    """``clamp(base + sum(glows) + noise, 0, 1)`` with a single final clamp."""
    if noise.shape != base.shape:
        raise ValueError(f"noise shape {noise.shape} does not match image {base.shape}")
    total = sum_glows(glows, base.shape)
    return np.clip(base + total + noise, 0.0, 1.0)
