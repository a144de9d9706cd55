"""Config file loading.

Two formats are accepted: a flat key=value text file (hash comments,
blank lines ignored) and a JSON document matching ExperimentConfig.
A meta.json written by a previous run also loads, via its "config" key.
"""

from __future__ import annotations

import json
from typing import Any

from pydantic import ValidationError

from .errors import ConfigError
from .schemas import (
    ContinuousSpec,
    ExperimentConfig,
    GaussianSpec,
    GridLocalizedSpec,
    GridTwoSiteSpec,
    RandomSpec,
    TwoCoinSpec,
)

_TOP_KEYS = {
    "regime",
    "ensemble",
    "coin1",
    "coin2",
    "bias",
    "q_range",
    "theta_range",
    "phi_range",
    "ic",
    "delta",
    "count",
    "sigma",
    "cutoff",
    "spin",
    "steps",
    "seed",
    "thresholds",
    "drop_first",
    "replicates",
    "label",
}


def _parse_floats(text: str, n: int, key: str) -> list[float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ConfigError(f"{key} expects {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def parse_flat(text: str) -> dict[str, str]:
    """Parse key=value lines into a dict, rejecting unknown keys."""
    pairs: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _TOP_KEYS:
            raise ConfigError(f"line {ln}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {ln}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


def _ensemble_from(pairs: dict[str, str]) -> dict[str, Any]:
    kind = pairs.get("ensemble", "two-coin")
    if kind == "two-coin":
        spec: dict[str, Any] = {"kind": "two-coin"}
        if "coin1" in pairs:
            q, th, ph = _parse_floats(pairs["coin1"], 3, "coin1")
            spec["c1"] = {"q": q, "theta": th, "phi": ph}
        if "coin2" in pairs:
            q, th, ph = _parse_floats(pairs["coin2"], 3, "coin2")
            spec["c2"] = {"q": q, "theta": th, "phi": ph}
        if "bias" in pairs:
            spec["p"] = float(pairs["bias"])
        return spec
    if kind == "continuous":
        spec = {"kind": "continuous"}
        for key in ("q_range", "theta_range", "phi_range"):
            if key in pairs:
                lo, hi = _parse_floats(pairs[key], 2, key)
                spec[key] = (lo, hi)
        return spec
    raise ConfigError(f"ensemble must be two-coin or continuous, got {kind!r}")


def _ic_from(pairs: dict[str, str]) -> dict[str, Any]:
    kind = pairs.get("ic", "grid-two-site")
    if kind in ("grid-two-site", "grid-localized"):
        spec: dict[str, Any] = {"kind": kind}
        if "delta" in pairs:
            spec["delta"] = float(pairs["delta"])
        else:
            raise ConfigError(f"ic={kind} requires delta")
        return spec
    if kind in ("random", "random-two-site"):
        spec = {"kind": kind}
        if "count" in pairs:
            spec["count"] = int(pairs["count"])
        else:
            raise ConfigError(f"ic={kind} requires count")
        return spec
    if kind == "gaussian":
        spec = {"kind": "gaussian"}
        if "sigma" in pairs:
            spec["sigma"] = float(pairs["sigma"])
        else:
            raise ConfigError("ic=gaussian requires sigma")
        if "cutoff" in pairs:
            spec["cutoff"] = float(pairs["cutoff"])
        if "spin" in pairs:
            spec["spin"] = pairs["spin"]
        return spec
    raise ConfigError(
        "ic must be one of grid-two-site, grid-localized, random, "
        f"random-two-site, gaussian; got {kind!r}"
    )


def config_from_pairs(pairs: dict[str, str]) -> ExperimentConfig:
    if "regime" not in pairs:
        raise ConfigError("regime is required")
    if "steps" not in pairs:
        raise ConfigError("steps is required")
    if "seed" not in pairs:
        raise ConfigError("seed is required")
    payload: dict[str, Any] = {
        "regime": pairs["regime"],
        "ensemble": _ensemble_from(pairs),
        "ic": _ic_from(pairs),
    }
    try:
        payload["steps"] = int(pairs["steps"])
        payload["seed"] = int(pairs["seed"])
        if "thresholds" in pairs:
            payload["thresholds"] = [float(p) for p in pairs["thresholds"].split(",")]
        if "drop_first" in pairs:
            payload["drop_first"] = int(pairs["drop_first"])
        if "replicates" in pairs:
            payload["replicates"] = int(pairs["replicates"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "label" in pairs:
        payload["label"] = pairs["label"]
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(_summarize(exc)) from exc


def _summarize(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "config"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def config_from_json(data: Any) -> ExperimentConfig:
    if isinstance(data, dict) and "config" in data and "regime" not in data:
        data = data["config"]
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_summarize(exc)) from exc


def load_config(path: str) -> ExperimentConfig:
    """Load an experiment config from a flat or JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read config {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
        return config_from_json(data)
    return config_from_pairs(parse_flat(text))


__all__ = [
    "parse_flat",
    "config_from_pairs",
    "config_from_json",
    "load_config",
    "ExperimentConfig",
    "TwoCoinSpec",
    "ContinuousSpec",
    "GridTwoSiteSpec",
    "GridLocalizedSpec",
    "RandomSpec",
    "GaussianSpec",
]
