"""
Depth-guided night darkening
============================

Walk one procedural daytime scene through the brightness-mapping steps and
save a strip of the intermediate results.

Run with ``python demos/01_brightness_mapping.py``; images land in
``demo_output/``.
"""

from pathlib import Path

import numpy as np

from nightforge import (
    SynthesisParams,
    adjust_sky_mean,
    build_illumination_mask,
    darken_sky,
    luminance,
    pixelwise_gamma,
    save_image,
    segment_sky,
)
from nightforge.io import normalize_depth
from nightforge.scenes import daytime_scene

out = Path("demo_output")
out.mkdir(exist_ok=True)

day, raw_depth = daytime_scene(seed=3, height=192, width=256)
depth = normalize_depth(raw_depth)  # disparity: 1 = nearest, 0 = sky
params = SynthesisParams()

###############################################################################
# Sky is wherever ``1 - depth`` reaches the threshold.
sky = segment_sky(depth, params.varrho)
print(f"sky covers {sky.mean():.1%} of the frame")

###############################################################################
# The illumination mask starts from the depth and is scaled differently on
# sky and non-sky pixels. It becomes the per-pixel gamma exponent (times alpha).
illum = build_illumination_mask(depth, sky, params.phi1, params.phi2)
print(f"exponent range: {params.alpha * illum.min():.2f} .. {params.alpha * illum.max():.2f}")

###############################################################################
# Darken the sky, apply the spatially varying gamma, then pull the sky mean
# to the target level.
darkened = darken_sky(day, sky, params.rho)
night = pixelwise_gamma(darkened, illum, params.alpha)
night = adjust_sky_mean(night, sky, params.mu)

lum_day, lum_night = luminance(day), luminance(night)
print(f"non-sky mean luminance: day {lum_day[~sky].mean():.3f} -> night {lum_night[~sky].mean():.3f}")
print(f"sky mean luminance:     day {lum_day[sky].mean():.3f} -> night {lum_night[sky].mean():.3f}")

# Near pixels (large disparity) get large exponents and go darkest; distant
# ground near the horizon keeps most of its brightness. Set
# ``illumination_source="inverse-depth"`` to flip that relationship.
mask_vis = np.repeat((illum / illum.max())[:, :, None], 3, axis=2)
strip = np.concatenate([day, mask_vis, darkened, night], axis=1)
save_image(strip, out / "brightness_mapping.png")
print("wrote", out / "brightness_mapping.png")
