"""CSV rendering and parsing for run artifacts.

Floats are written with %.17g so a parse/render round trip is exact
for doubles; meta.json therefore reproduces byte for byte when the
same run is repeated.
"""

from __future__ import annotations

import numpy as np

from .ensemble import EnsembleResult
from .errors import ConfigError


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def render_timeseries(result: EnsembleResult) -> str:
    lines = ["t,mean_entropy,mean_distance,mean_dispersion"]
    for i in range(result.steps):
        lines.append(
            f"{i + 1},{fmt(result.mean_entropy[i])},"
            f"{fmt(result.mean_distance[i])},{fmt(result.mean_dispersion[i])}"
        )
    return "\n".join(lines) + "\n"


def render_distribution(result: EnsembleResult) -> str:
    lines = ["j,mean_probability"]
    lo = result.distribution_lo
    for i, p in enumerate(result.mean_distribution):
        lines.append(f"{lo + i},{fmt(p)}")
    return "\n".join(lines) + "\n"


def render_thresholds(result: EnsembleResult) -> str:
    lines = ["threshold,fraction"]
    for th, frac in result.threshold_rates.items():
        lines.append(f"{fmt(th)},{fmt(frac)}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[list[str], dict[str, np.ndarray]]:
    """Parse a simple numeric CSV into named float columns."""
    rows = [r for r in text.splitlines() if r.strip()]
    if not rows:
        raise ConfigError("empty CSV")
    header = [h.strip() for h in rows[0].split(",")]
    cols: dict[str, list[float]] = {h: [] for h in header}
    if len(cols) != len(header):
        raise ConfigError(f"duplicate CSV column in {header}")
    for ln, row in enumerate(rows[1:], start=2):
        cells = row.split(",")
        if len(cells) != len(header):
            raise ConfigError(f"CSV line {ln}: expected {len(header)} cells, got {len(cells)}")
        for h, cell in zip(header, cells):
            try:
                cols[h].append(float(cell))
            except ValueError as exc:
                raise ConfigError(f"CSV line {ln}: {exc}") from exc
    return header, {h: np.asarray(v, dtype=np.float64) for h, v in cols.items()}


def timeseries_column(text: str, column: str) -> np.ndarray:
    header, cols = parse_csv(text)
    if column not in cols:
        raise ConfigError(f"CSV has no column {column!r} (columns: {header})")
    if "t" in cols:
        t = cols["t"]
        if not np.array_equal(t, np.arange(1, len(t) + 1)):
            raise ConfigError("timeseries t column must run 1..n")
    return cols[column]


def render_compare_timeseries(labels: list[str], results: list[EnsembleResult]) -> str:
    header = "t," + ",".join(f"{lb}_entropy" for lb in labels)
    lines = [header]
    steps = results[0].steps
    for i in range(steps):
        cells = [str(i + 1)] + [fmt(r.mean_entropy[i]) for r in results]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_compare_distribution(labels: list[str], results: list[EnsembleResult]) -> str:
    lo = min(r.distribution_lo for r in results)
    hi = max(r.distribution_lo + len(r.mean_distribution) for r in results)
    header = "j," + ",".join(f"{lb}_probability" for lb in labels)
    lines = [header]
    for j in range(lo, hi):
        cells = [str(j)]
        for r in results:
            i = j - r.distribution_lo
            p = r.mean_distribution[i] if 0 <= i < len(r.mean_distribution) else 0.0
            cells.append(fmt(p))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
