"""
Brightness labels, skip fusion and losses
=========================================

The training-side arithmetic on plain arrays: build brightness labels from a
synthesized night image, weight skip-connection features with a brightness
map, and evaluate the combined objective.
"""

import numpy as np

from nightforge import (
    RngStream,
    SynthesisParams,
    brightness_label,
    loss_adversarial,
    loss_brightness,
    loss_pixel,
    loss_total,
    skip_fuse,
    synthesize_pair,
)
from nightforge.io import normalize_depth
from nightforge.scenes import daytime_scene

rng = np.random.default_rng(0)
day, raw = daytime_scene(seed=1, height=128, width=128)
night, label, _ = synthesize_pair(day, normalize_depth(raw), SynthesisParams(), RngStream(0, 0), grid=(8, 8))
print("label grid:\n", np.round(label, 2))

###############################################################################
# Level-1 skip fusion scales the transferred features by ``1 + M`` (the map is
# resampled to the feature resolution); deeper levels are plain sums.
enc = rng.normal(size=(32, 32, 16))
dec = rng.normal(size=(32, 32, 16))
fused = skip_fuse(enc, dec, label, level=1)
plain = skip_fuse(enc, dec, label, level=2)
print("mean |fused - plain| =", np.abs(fused - plain).mean().round(4))

###############################################################################
# Losses use the summed forms; pass ``normalize=True`` for means.
predicted_map = np.clip(label + rng.normal(scale=0.05, size=label.shape), 0, 1)
l_m = loss_brightness(predicted_map[None], label[None])
l_pc = loss_pixel(night[None], day[None], normalize=True)
l_adv = loss_adversarial(real_scores=[0.8, 0.7], fake_scores=[0.3, 0.4])
print(f"L_M={l_m:.4f}  L_pc={l_pc:.4f}  L_adv={l_adv:.4f}  total={loss_total(l_pc, l_adv, l_m):.4f}")
