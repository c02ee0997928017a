"""Synthetic hazy-night / clear-day training pairs from daytime images and depth."""

__version__ = "0.1.0"

from .brightness import (
    adjust_sky_mean,
    build_illumination_mask,
    darken_sky,
    pixelwise_gamma,
    segment_sky,
)
from .config import PipelineConfig, validate_config
from .core import ConfigError, LightSource, SynthesisParams, luminance
from .degradation import compose_hazy, make_noise
from .io import load_depth, load_image, save_image
from .lights import attenuation_map, colorize, render_cone, render_point, sample_lights
from .pipeline import DatasetManifest, run_pipeline, synthesize_pair
from .rng import RngStream
from .stats import BrightnessStats, channel_mean_image, compare_sets, compute_stats
from .training import (
    brightness_label,
    loss_adversarial,
    loss_brightness,
    loss_pixel,
    loss_total,
    skip_fuse,
)
