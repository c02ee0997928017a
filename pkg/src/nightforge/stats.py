"""Brightness statistics: channel-mean images, luminance histograms, set comparison."""

from __future__ import annotations

import csv
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import as_image, check_same_size, luminance
from .io import load_image, save_image

CSV_SCHEMA = "nightforge-stats v1"
DEFAULT_BINS = 32


@dataclass(frozen=True)
class BrightnessStats:
    channel_means: tuple[float, float, float]
    luminance_mean: float
    histogram: np.ndarray  # normalized luminance histogram over [0, 1]
    sky_mean: float | None = None
    nonsky_mean: float | None = None


def channel_mean_image(img: np.ndarray) -> np.ndarray:
    """Image of the same size where every pixel is the per-channel mean."""
    img = as_image(img)
    flat = img.reshape(-1, 3)
    # Offsetting by the first pixel keeps constant images exactly constant.
    means = flat[0] + (flat - flat[0]).mean(axis=0)
    return np.broadcast_to(np.clip(means, 0.0, 1.0), img.shape).copy()


def luminance_histogram(lum: np.ndarray, bins: int = DEFAULT_BINS) -> np.ndarray:
    """Histogram over bins ``[k/n, (k+1)/n)``, last bin closed at 1; sums to 1."""
    counts, _ = np.histogram(np.ravel(lum), bins=bins, range=(0.0, 1.0))
    total = counts.sum()
    return counts / total if total else counts.astype(np.float64)


def compute_stats(
    img: np.ndarray, sky: np.ndarray | None = None, bins: int = DEFAULT_BINS
) -> BrightnessStats:
    img = as_image(img)
    lum = luminance(img)
    sky_mean = nonsky_mean = None
    if sky is not None:
        sky = np.asarray(sky, dtype=bool)
        check_same_size(img, sky, "image and sky mask")
        if sky.any():
            sky_mean = float(lum[sky].mean())
        if (~sky).any():
            nonsky_mean = float(lum[~sky].mean())
    means = img.reshape(-1, 3).mean(axis=0)
    return BrightnessStats(
        channel_means=tuple(float(m) for m in means),
        luminance_mean=float(lum.mean()),
        histogram=luminance_histogram(lum, bins),
        sky_mean=sky_mean,
        nonsky_mean=nonsky_mean,
    )


def _list_images(directory: Path) -> list[Path]:
    if not directory.is_dir():
        raise FileNotFoundError(f"not a directory: {directory}")
    files = sorted(p for p in directory.iterdir() if p.is_file() and p.suffix.lower() == ".png")
    if not files:
        raise ValueError(f"no PNG images in {directory}")
    return files


def compare_sets(
    sets: Mapping[str, str | Path],
    out_dir: str | Path,
    bins: int = DEFAULT_BINS,
    channel_means: bool = False,
) -> dict[str, BrightnessStats]:
    """Compare brightness across named image directories.

    Writes ``stats.csv`` (one row per image, then one summary row per set)
    and ``histogram.png`` (pooled luminance histograms overlaid), plus
    ``<set>/<stem>_chanmean.png`` when ``channel_means`` is set. Per-image
    rows give the distribution of image means; summary rows give the pooled
    pixel statistics. Returns the pooled stats keyed by set name.
    """
    if not sets:
        raise ValueError("need at least one image set")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    listing = {name: _list_images(Path(d)) for name, d in sets.items()}

    header = ["set", "image", "mean_r", "mean_g", "mean_b", "luminance_mean"]
    header += [f"hist_{k:02d}" for k in range(bins)]
    rows = []
    summaries: dict[str, BrightnessStats] = {}
    for name, files in listing.items():
        chan_sum = np.zeros(3)
        counts = np.zeros(bins)
        n_pix = 0
        for path in files:
            img = load_image(path)
            st = compute_stats(img, bins=bins)
            rows.append([name, path.name, *st.channel_means, st.luminance_mean, *st.histogram])
            chan_sum += img.reshape(-1, 3).sum(axis=0)
            counts += np.histogram(luminance(img), bins=bins, range=(0.0, 1.0))[0]
            n_pix += img.shape[0] * img.shape[1]
            if channel_means:
                set_dir = out_dir / name
                set_dir.mkdir(exist_ok=True)
                save_image(channel_mean_image(img), set_dir / f"{path.stem}_chanmean.png")
        means = chan_sum / n_pix
        summary = BrightnessStats(
            channel_means=tuple(float(m) for m in means),
            luminance_mean=float(means.mean()),
            histogram=counts / counts.sum(),
        )
        summaries[name] = summary
    for name, st in summaries.items():
        rows.append([name, "__summary__", *st.channel_means, st.luminance_mean, *st.histogram])

    with open(out_dir / "stats.csv", "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# {CSV_SCHEMA}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else repr(float(v)) for v in row])

    plot_histograms(summaries, out_dir / "histogram.png")
    return summaries


def plot_histograms(summaries: Mapping[str, BrightnessStats], path: str | Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    n_sets = len(summaries)
    for k, (name, st) in enumerate(summaries.items()):
        bins = st.histogram.size
        width = 1.0 / bins / n_sets
        left = np.arange(bins) / bins + k * width
        ax.bar(left, st.histogram, width=width, align="edge", alpha=0.8,
               label=f"{name} (mean {st.luminance_mean:.3f})")
    ax.set_xlim(0, 1)
    ax.set_xlabel("luminance")
    ax.set_ylabel("fraction of pixels")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
