import shutil
from pathlib import Path

import numpy as np
import pytest

from nightforge.io import save_image, write_pfm
from nightforge.scenes import daytime_scene

DATA = Path(__file__).parent / "data"


def write_pairs(root: Path, seeds, size=64, sky_fraction=0.4):
    """Write ``images/<stem>.png`` and ``depth/<stem>.pfm`` for each seed."""
    images, depth = root / "images", root / "depth"
    images.mkdir(parents=True, exist_ok=True)
    depth.mkdir(parents=True, exist_ok=True)
    for seed in seeds:
        img, disp = daytime_scene(seed, size, size, sky_fraction)
        save_image(img, images / f"scene{seed:03d}.png")
        write_pfm(disp, depth / f"scene{seed:03d}.pfm")
    return images, depth


@pytest.fixture
def dataset(tmp_path):
    images, depth = write_pairs(tmp_path, range(3))
    return images, depth, tmp_path / "out"


@pytest.fixture
def golden_dirs(tmp_path):
    images, depth = tmp_path / "images", tmp_path / "depth"
    images.mkdir()
    depth.mkdir()
    shutil.copy(DATA / "golden.png", images / "golden.png")
    shutil.copy(DATA / "golden.pfm", depth / "golden.pfm")
    return images, depth, tmp_path / "out"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(results):
            terminalreporter.write_line(line)
