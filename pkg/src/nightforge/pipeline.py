"""Per-image synthesis chain and the directory-level dataset pipeline."""

from __future__ import annotations

import json
import logging
import shutil
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from PIL import Image as PILImage

from . import __version__
from .brightness import (
    adjust_sky_mean,
    build_illumination_mask,
    darken_sky,
    pixelwise_gamma,
    segment_sky,
)
from .config import PipelineConfig
from .core import SynthesisParams, as_depth, as_image, check_same_size, luminance
from .degradation import compose_hazy, make_noise
from .io import load_depth, load_image, load_mask, save_gray, save_image
from .lights import render_light, sample_lights
from .rng import RngStream
from .training import brightness_label

log = logging.getLogger(__name__)

MANIFEST_VERSION = "1"
IMAGE_SUFFIXES = (".png",)
DEPTH_SUFFIXES = (".pfm", ".png")


class PipelineError(RuntimeError):
    pass


def _mean_or_none(values: np.ndarray) -> float | None:
    return float(values.mean()) if values.size else None


def synthesize_pair(
    day: np.ndarray,
    depth: np.ndarray,
    params: SynthesisParams,
    rng: RngStream,
    grid: tuple[int, int] = (16, 16),
    sky: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, dict[str, Any]]:
    """Turn one daytime image and its depth into a hazy night image.

    Returns ``(hazy, label, record)`` where ``label`` is the brightness label
    of the hazy image on ``grid`` and ``record`` summarizes every sampled
    quantity. ``sky`` overrides the depth-thresholded sky mask.
    """
    day = as_image(day)
    depth = as_depth(depth)
    check_same_size(day, depth, "image and depth map")
    notes = []
    if sky is None:
        sky = segment_sky(depth, params.varrho)
    else:
        sky = np.asarray(sky, dtype=bool)
        check_same_size(day, sky, "image and sky mask")
    if sky.all():
        msg = "whole frame classified as sky; sky-specific steps skipped"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
        sky = np.zeros_like(sky)

    illum = build_illumination_mask(
        depth, sky, params.phi1, params.phi2, params.illumination_source
    )
    night = pixelwise_gamma(darken_sky(day, sky, params.rho), illum, params.alpha)
    if sky.any():
        night = adjust_sky_mean(night, sky, params.mu)

    lights = sample_lights(rng, params, sky)
    shape = day.shape[:2]
    glows = [render_light(light, shape, params.light_distance_scale) for light in lights]
    noise = make_noise(rng, day.shape, params.noise_sigma)
    hazy = compose_hazy(night, glows, noise)
    label = brightness_label(hazy, grid)

    lum_hazy = luminance(hazy)
    record = {
        "lights": [light.summary() for light in lights],
        "sky_fraction": float(sky.mean()),
        "mean_luminance_clear": float(luminance(day).mean()),
        "mean_luminance_hazy": float(lum_hazy.mean()),
        "sky_luminance_hazy": _mean_or_none(lum_hazy[sky]),
        "nonsky_luminance_hazy": _mean_or_none(lum_hazy[~sky]),
        "label_mean": float(label.mean()),
        "notes": notes,
    }
    return hazy, label, record


@dataclass
class DatasetManifest:
    master_seed: int
    params: dict[str, Any]
    grid: tuple[int, int]
    records: list[dict[str, Any]] = field(default_factory=list)
    version: str = MANIFEST_VERSION

    @property
    def successes(self) -> list[dict[str, Any]]:
        return [r for r in self.records if r["status"] == "ok"]

    @property
    def failures(self) -> list[dict[str, Any]]:
        return [r for r in self.records if r["status"] == "failed"]

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "generator": f"nightforge {__version__}",
            "master_seed": self.master_seed,
            "params": self.params,
            "grid": list(self.grid),
            "records": sorted(self.records, key=lambda r: r["index"]),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DatasetManifest":
        d = json.loads(text)
        return cls(
            master_seed=d["master_seed"],
            params=d["params"],
            grid=tuple(d["grid"]),
            records=d["records"],
            version=d["version"],
        )

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")


def find_pairs(input_dir: Path, depth_dir: Path) -> list[tuple[str, Path, Path | None]]:
    """``(stem, image_path, depth_path_or_None)`` for every input image, sorted by stem."""
    images = sorted(
        p for p in input_dir.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
    out = []
    for img in images:
        depth = None
        for suffix in DEPTH_SUFFIXES:
            cand = depth_dir / (img.stem + suffix)
            if cand.is_file():
                depth = cand
                break
        out.append((img.stem, img, depth))
    return out


def _resize_plane(plane: np.ndarray, size: int, resample: int) -> np.ndarray:
    im = PILImage.fromarray(plane.astype(np.float32), mode="F")
    return np.asarray(im.resize((size, size), resample=resample), dtype=np.float64)


def _resize_image(img: np.ndarray, size: int) -> np.ndarray:
    chans = [_resize_plane(img[:, :, c], size, PILImage.BILINEAR) for c in range(3)]
    return np.clip(np.stack(chans, axis=2), 0.0, 1.0)


def _process_one(
    index: int, stem: str, image_path: Path, depth_path: Path | None, config: PipelineConfig
) -> dict[str, Any]:
    record: dict[str, Any] = {
        "index": index,
        "stem": stem,
        "input": image_path.name,
        "depth": depth_path.name if depth_path else None,
    }
    out_dir = config.output_dir
    try:
        if depth_path is None:
            raise PipelineError(f"no depth map for {image_path.name}")
        day = load_image(image_path)
        depth = load_depth(depth_path)
        sky = None
        if config.sky_mask_dir is not None:
            mask_path = config.sky_mask_dir / f"{stem}.png"
            if mask_path.is_file():
                sky = load_mask(mask_path)
                record["sky_mask"] = mask_path.name
        check_same_size(day, depth, "image and depth map")
        if config.resize:
            day = _resize_image(day, config.resize)
            depth = np.clip(_resize_plane(depth, config.resize, PILImage.BILINEAR), 0.0, 1.0)
            if sky is not None:
                sky = _resize_plane(sky.astype(np.float64), config.resize, PILImage.NEAREST) > 0.5
        rng = RngStream(config.seed or 0, index)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            hazy, label, stats = synthesize_pair(day, depth, config.params, rng, config.grid, sky)
        hazy_name, clear_name, label_name = (
            f"{stem}_hazy.png",
            f"{stem}_clear.png",
            f"{stem}_label.png",
        )
        save_image(hazy, out_dir / hazy_name)
        if config.resize:
            save_image(day, out_dir / clear_name)
        else:
            shutil.copyfile(image_path, out_dir / clear_name)
        save_gray(label, out_dir / label_name)
        record.update(status="ok", hazy=hazy_name, clear=clear_name, label=label_name, **stats)
    except Exception as exc:  # noqa: BLE001 - one bad image must not stop the run
        record.update(status="failed", error=f"{type(exc).__name__}: {exc}")
    return record


def _run_task(args: tuple) -> dict[str, Any]:
    return _process_one(*args)


def run_pipeline(config: PipelineConfig) -> DatasetManifest:
    """Synthesize every image/depth pair under ``config`` and write the dataset.

    Outputs per pair ``<stem>_hazy.png``, ``<stem>_clear.png`` and
    ``<stem>_label.png`` plus one ``manifest.json``. Per-image failures are
    recorded and skipped unless ``config.strict`` is set.
    """
    for name in ("input_dir", "depth_dir", "output_dir"):
        if getattr(config, name) is None:
            raise PipelineError(f"{name} is not set")
    for name in ("input_dir", "depth_dir", "sky_mask_dir"):
        d = getattr(config, name)
        if d is not None and not Path(d).is_dir():
            raise PipelineError(f"{name} does not exist: {d}")
    Path(config.output_dir).mkdir(parents=True, exist_ok=True)
    config = config.with_overrides(
        input_dir=Path(config.input_dir),
        depth_dir=Path(config.depth_dir),
        output_dir=Path(config.output_dir),
        sky_mask_dir=Path(config.sky_mask_dir) if config.sky_mask_dir else None,
    )

    pairs = find_pairs(config.input_dir, config.depth_dir)
    if not any(depth is not None for _, _, depth in pairs):
        raise PipelineError(
            f"no image/depth pairs found in {config.input_dir} and {config.depth_dir}"
        )
    tasks = [(i, stem, img, depth, config) for i, (stem, img, depth) in enumerate(pairs)]

    records = []
    if config.jobs <= 1 or len(tasks) == 1:
        for task in tasks:
            rec = _run_task(task)
            records.append(rec)
            if config.strict and rec["status"] == "failed":
                raise PipelineError(f"{rec['input']}: {rec['error']}")
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for rec in pool.map(_run_task, tasks):
                records.append(rec)
                if config.strict and rec["status"] == "failed":
                    pool.shutdown(cancel_futures=True)
                    raise PipelineError(f"{rec['input']}: {rec['error']}")

    manifest = DatasetManifest(
        master_seed=config.seed or 0,
        params=config.params.to_dict(),
        grid=tuple(config.grid),
        records=sorted(records, key=lambda r: r["index"]),
    )
    manifest.write(config.output_dir / "manifest.json")
    for rec in manifest.failures:
        log.warning("failed: %s (%s)", rec["input"], rec["error"])
    log.info("%d succeeded, %d failed", len(manifest.successes), len(manifest.failures))
    return manifest
