"""Procedural daytime scenes with matching disparity maps.

Used by the demos and the test-suite as stand-ins for real photographs:
a bright sky band over textured ground and a few building blocks.
"""

from __future__ import annotations

import numpy as np


def daytime_scene(
    seed: int, height: int = 64, width: int = 64, sky_fraction: float = 0.4
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(image, raw_disparity)``.

    The disparity is unnormalized (sky at 0, nearest ground around 40) so it
    exercises the loader's min-max step when written to disk.
    """
    rng = np.random.default_rng(seed)
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]
    horizon = int(round(sky_fraction * height))

    img = np.empty((height, width, 3))
    # Sky: blue-white vertical gradient.
    t = rows / max(horizon, 1)
    sky_top = np.array([0.55, 0.70, 0.95])
    sky_low = np.array([0.85, 0.90, 0.97])
    sky = sky_top + (sky_low - sky_top) * t[:, :, None]
    img[:] = np.broadcast_to(sky, (height, width, 3))

    # Ground: base colour with low-frequency texture.
    ground = rng.uniform(0.35, 0.6, size=3)
    phase = rng.uniform(0, 2 * np.pi, size=2)
    texture = 0.08 * np.sin(cols / 5.0 + phase[0]) * np.cos(rows / 7.0 + phase[1])
    below = rows >= horizon
    img = np.where(below[:, :, None], ground + texture[:, :, None], img)

    depth = np.zeros((height, width))
    span = max(height - horizon, 1)
    ramp = 4.0 + 36.0 * (rows - horizon) / span
    depth = np.where(below, np.broadcast_to(ramp, (height, width)), depth)

    # Buildings rise above the horizon; constant disparity per block.
    for _ in range(int(rng.integers(1, 4))):
        bw = int(rng.integers(max(2, width // 10), max(3, width // 4)))
        x0 = int(rng.integers(0, max(1, width - bw)))
        top = int(rng.integers(max(0, horizon // 3), max(1, horizon)))
        bottom = min(height, horizon + max(1, height // 10))
        shade = rng.uniform(0.25, 0.55)
        tint = shade * np.array([1.0, rng.uniform(0.9, 1.05), rng.uniform(0.85, 1.1)])
        img[top:bottom, x0 : x0 + bw] = tint
        # Windows for some texture.
        img[top + 1 : bottom - 1 : 3, x0 + 1 : x0 + bw - 1 : 3] = 0.8 * tint + 0.15
        depth[top:bottom, x0 : x0 + bw] = rng.uniform(6.0, 12.0)

    return np.clip(img, 0.0, 1.0), depth
