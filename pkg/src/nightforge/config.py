"""JSON pipeline configuration."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from .core import ConfigError, SynthesisParams

PARAM_KEYS = {f.name for f in fields(SynthesisParams)}
PIPELINE_KEYS = {
    "grid",
    "jobs",
    "seed",
    "input_dir",
    "depth_dir",
    "output_dir",
    "sky_mask_dir",
    "strict",
    "resize",
}

# Expected shape of each synthesis key: "num", "int", ("num", n), ("int", n), "str", "palette".
_PARAM_KINDS: dict[str, Any] = {
    "varrho": "num",
    "mu": "num",
    "phi1": "num",
    "phi2": "num",
    "rho": "num",
    "alpha": "num",
    "beta": "num",
    "xi": ("num", 3),
    "noise_sigma": "num",
    "light_count": ("int", 2),
    "cone_half_angle": ("num", 2),
    "palette": "palette",
    "illumination_source": "str",
    "light_placement": "str",
    "light_distance_scale": "num",
}


@dataclass(frozen=True)
class PipelineConfig:
    params: SynthesisParams = field(default_factory=SynthesisParams)
    grid: tuple[int, int] = (16, 16)
    jobs: int = 1
    seed: int | None = None
    input_dir: Path | None = None
    depth_dir: Path | None = None
    output_dir: Path | None = None
    sky_mask_dir: Path | None = None
    strict: bool = False
    resize: int | None = None

    def with_overrides(self, **kwargs: Any) -> "PipelineConfig":
        """Copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _is_num(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_kind(key: str, value: Any, kind: Any, problems: list[tuple[str, str]]) -> bool:
    if kind == "num":
        ok = _is_num(value)
        msg = "must be a number"
    elif kind == "int":
        ok = _is_int(value)
        msg = "must be an integer"
    elif kind == "str":
        ok = isinstance(value, str)
        msg = "must be a string"
    elif kind == "palette":
        ok = isinstance(value, list) and all(
            isinstance(t, list) and len(t) == 3 and all(_is_num(c) for c in t) for t in value
        )
        msg = "must be a list of [r, g, b] triples"
    else:
        elem, n = kind
        check = _is_num if elem == "num" else _is_int
        ok = isinstance(value, list) and len(value) == n and all(check(v) for v in value)
        msg = f"must be a list of {n} {'numbers' if elem == 'num' else 'integers'}"
    if not ok:
        problems.append((key, f"{msg}, got {value!r}"))
    return ok


def validate_config(text: str) -> PipelineConfig:
    """Parse JSON config text into a :class:`PipelineConfig`.

    Missing keys take their defaults. All constraint violations are
    collected and raised together as :class:`ConfigError` with field paths;
    unknown keys only produce a warning.
    """
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError([("<root>", f"malformed JSON: {exc}")]) from exc
    if not isinstance(raw, dict):
        raise ConfigError([("<root>", "config must be a JSON object")])

    problems: list[tuple[str, str]] = []
    unknown = sorted(set(raw) - PARAM_KEYS - PIPELINE_KEYS)
    if unknown:
        warnings.warn(f"ignoring unknown config keys: {', '.join(unknown)}", stacklevel=2)

    param_kwargs: dict[str, Any] = {}
    for key, kind in _PARAM_KINDS.items():
        if key in raw and _check_kind(key, raw[key], kind, problems):
            param_kwargs[key] = raw[key]

    params = SynthesisParams()
    if not problems:
        # Build unvalidated to gather every constraint problem at once.
        candidate = object.__new__(SynthesisParams)
        for f in fields(SynthesisParams):
            object.__setattr__(candidate, f.name, param_kwargs.get(f.name, getattr(params, f.name)))
        problems.extend(candidate.problems())

    pipe: dict[str, Any] = {}
    if "grid" in raw and _check_kind("grid", raw["grid"], ("int", 2), problems):
        if min(raw["grid"]) <= 0:
            problems.append(("grid", "grid dimensions must be positive"))
        pipe["grid"] = tuple(raw["grid"])
    if "jobs" in raw and _check_kind("jobs", raw["jobs"], "int", problems):
        if raw["jobs"] < 1:
            problems.append(("jobs", "must be >= 1"))
        pipe["jobs"] = raw["jobs"]
    if "seed" in raw and _check_kind("seed", raw["seed"], "int", problems):
        if not 0 <= raw["seed"] < 2**64:
            problems.append(("seed", "must be an unsigned 64-bit integer"))
        pipe["seed"] = raw["seed"]
    if "resize" in raw and raw["resize"] is not None:
        if _check_kind("resize", raw["resize"], "int", problems) and raw["resize"] <= 0:
            problems.append(("resize", "must be positive"))
        pipe["resize"] = raw["resize"]
    if "strict" in raw:
        if isinstance(raw["strict"], bool):
            pipe["strict"] = raw["strict"]
        else:
            problems.append(("strict", "must be true or false"))
    for key in ("input_dir", "depth_dir", "output_dir", "sky_mask_dir"):
        if raw.get(key) is not None and _check_kind(key, raw[key], "str", problems):
            pipe[key] = Path(raw[key])

    if problems:
        raise ConfigError(problems)
    return PipelineConfig(params=SynthesisParams(**param_kwargs), **pipe)


def load_config(path: str | Path) -> PipelineConfig:
    return validate_config(Path(path).read_text(encoding="utf-8"))
