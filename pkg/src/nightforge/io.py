"""Reading and writing rasters: 8-bit RGB PNG images, 16-bit PNG or PFM depth."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image as PILImage

from .core import as_image

PathLike = str | os.PathLike


def _open_png(path: PathLike) -> PILImage.Image:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    try:
        im = PILImage.open(path)
        im.load()
    except (OSError, SyntaxError) as exc:
        raise ValueError(f"cannot decode {path}: {exc}") from exc
    if im.format != "PNG":
        raise ValueError(f"{path}: expected PNG, got {im.format}")
    if im.width == 0 or im.height == 0:
        raise ValueError(f"{path}: zero-dimension image")
    return im


def load_image(path: PathLike) -> np.ndarray:
    """Load an 8-bit PNG as an ``(H, W, 3)`` float image with values ``byte / 255``.

    Grayscale is replicated into three channels; an alpha channel is dropped.
    """
    im = _open_png(path)
    if im.mode == "P":
        im = im.convert("RGBA" if "transparency" in im.info else "RGB")
    if im.mode == "L":
        arr = np.asarray(im)
        arr = np.repeat(arr[:, :, None], 3, axis=2)
    elif im.mode in ("RGB", "RGBA"):
        arr = np.asarray(im)[:, :, :3]
    elif im.mode == "LA":
        arr = np.repeat(np.asarray(im)[:, :, :1], 3, axis=2)
    else:
        raise ValueError(f"{path}: unsupported PNG mode {im.mode!r} (need 8-bit RGB or gray)")
    return arr.astype(np.float64) / 255.0


def save_image(img: np.ndarray, path: PathLike) -> None:
    """Write an image as 8-bit RGB PNG, each byte ``round(value * 255)``."""
    img = as_image(img)
    data = np.floor(img * 255.0 + 0.5).astype(np.uint8)
    _save(PILImage.fromarray(data, mode="RGB"), path)


def save_gray(values: np.ndarray, path: PathLike) -> None:
    """Write a 2-D array in [0, 1] as 8-bit grayscale PNG."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("expected a 2-D array")
    data = np.floor(np.clip(values, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    _save(PILImage.fromarray(data, mode="L"), path)


def _save(im: PILImage.Image, path: PathLike) -> None:
    path = Path(path)
    try:
        im.save(path, format="PNG")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def normalize_depth(raw: np.ndarray) -> np.ndarray:
    """Per-image min-max normalization to [0, 1]; constant input maps to zeros."""
    raw = np.asarray(raw, dtype=np.float64)
    if not np.all(np.isfinite(raw)):
        raise ValueError("depth contains NaN or inf")
    lo, hi = raw.min(), raw.max()
    if hi == lo:
        return np.zeros_like(raw)
    return (raw - lo) / (hi - lo)


def read_pfm(path: PathLike) -> np.ndarray:
    """Read a single-channel PFM file; rows are returned top-to-bottom."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.readline().strip()
        if header == b"PF":
            raise ValueError(f"{path}: colour PFM is not a depth map")
        if header != b"Pf":
            raise ValueError(f"{path}: not a PFM file")
        dims = fh.readline().split()
        while not dims:  # tolerate blank lines
            dims = fh.readline().split()
        try:
            width, height = int(dims[0]), int(dims[1])
            scale = float(fh.readline().strip())
        except (IndexError, ValueError) as exc:
            raise ValueError(f"{path}: malformed PFM header") from exc
        if width <= 0 or height <= 0:
            raise ValueError(f"{path}: zero-dimension PFM")
        dtype = "<f4" if scale < 0 else ">f4"
        data = np.frombuffer(fh.read(), dtype=dtype)
    if data.size < width * height:
        raise ValueError(f"{path}: truncated PFM data")
    data = data[: width * height].reshape(height, width)
    # PFM stores the bottom row first.
    return np.flipud(data).astype(np.float64)


def write_pfm(values: np.ndarray, path: PathLike) -> None:
    """Write a 2-D array as little-endian single-channel PFM."""
    values = np.asarray(values, dtype="<f4")
    if values.ndim != 2:
        raise ValueError("PFM writer expects a 2-D array")
    h, w = values.shape
    with open(path, "wb") as fh:
        fh.write(b"Pf\n%d %d\n-1.0\n" % (w, h))
        fh.write(np.flipud(values).tobytes())


def write_depth_png16(values: np.ndarray, path: PathLike) -> None:
    """Write values in [0, 1] as a 16-bit grayscale PNG."""
    values = np.asarray(values, dtype=np.float64)
    data = np.floor(np.clip(values, 0.0, 1.0) * 65535.0 + 0.5).astype(np.uint16)
    _save(PILImage.fromarray(data), path)


def load_depth(path: PathLike) -> np.ndarray:
    """Load a depth map (PFM or grayscale PNG) and min-max normalize it."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    if path.suffix.lower() == ".pfm":
        raw = read_pfm(path)
    else:
        im = _open_png(path)
        if im.mode not in ("I;16", "I;16B", "I;16L", "I", "L"):
            raise ValueError(f"{path}: depth PNG must be grayscale, got mode {im.mode!r}")
        raw = np.asarray(im).astype(np.float64)
    return normalize_depth(raw)


def load_mask(path: PathLike) -> np.ndarray:
    """Load a sky-mask PNG; any nonzero pixel counts as sky."""
    im = _open_png(path)
    arr = np.asarray(im.convert("L") if im.mode not in ("L", "1", "I", "I;16") else im)
    return arr.astype(np.int64) > 0
