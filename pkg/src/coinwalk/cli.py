"""Command line front end.

Every command is a thin client of the service layer; by default the
service runs in process, --server points at a remote instance. Exit
codes: 0 success, 2 validation problem, 3 numerical domain failure,
4 I/O or transport failure.
"""

from __future__ import annotations

import functools
import json
import os
from typing import Any, Callable

import click
import httpx

from .client import ServiceClient
from .config import load_config
from .errors import ConfigError, NumericalDomainError, ParameterDomainError

_server_option = click.option(
    "--server", default=None, metavar="URL", help="Remote service URL (default: in process)."
)
_threads_option = click.option(
    "--threads", default=1, show_default=True, help="Worker threads; never changes results."
)
_out_option = click.option(
    "--out", default=None, metavar="DIR", help="Output directory (default: config out_dir or cwd)."
)


def _guarded(fn: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except (ConfigError, ParameterDomainError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(2)
        except NumericalDomainError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3)
        except (OSError, httpx.TransportError, RuntimeError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(4)

    return wrapper


def _write_text(directory: str, name: str, text: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _write_json(directory: str, name: str, obj: Any) -> str:
    return _write_text(directory, name, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


@click.group()
def main() -> None:
    """Quantum walk experiments with ordered and disordered coins."""


@main.command()
@click.option("--config", "config_path", required=True, metavar="PATH", help="Experiment config file.")
@click.option("--seed", default=None, type=int, help="Override the config seed.")
@_threads_option
@_out_option
@_server_option
@_guarded
def run(config_path: str, seed: int | None, threads: int, out: str | None, server: str | None) -> None:
    """Run one ensemble and write CSV artifacts plus meta.json."""
    cfg = load_config(config_path)
    payload = cfg.model_dump(mode="json")
    if seed is not None:
        payload["seed"] = seed
    out_dir = out or cfg.out_dir or "."
    with ServiceClient(server) as client:
        resp = client.run(payload, threads=threads)
    _write_text(out_dir, "timeseries.csv", resp["timeseries_csv"])
    _write_text(out_dir, "distribution.csv", resp["distribution_csv"])
    _write_text(out_dir, "thresholds.csv", resp["thresholds_csv"])
    _write_json(out_dir, "meta.json", resp["meta"])
    meta = resp["meta"]
    click.echo(
        f"run: {meta['realizations']} realizations, {payload['steps']} steps, "
        f"{meta['wall_time_s']:.2f}s -> {out_dir}"
    )


@main.command()
@click.argument("timeseries", type=click.Path())
@click.option("--drop-first", default=100, show_default=True, help="Leading points to exclude.")
@click.option("--column", default="mean_distance", show_default=True, help="Series to fit.")
@_out_option
@_server_option
@_guarded
def fit(timeseries: str, drop_first: int, column: str, out: str | None, server: str | None) -> None:
    """Fit a power law to a timeseries column; writes fit.json."""
    text = _read_text(timeseries)
    with ServiceClient(server) as client:
        resp = client.fit(text, drop_first=drop_first, column=column)
    _write_json(out or ".", "fit.json", resp)
    lo, hi = resp["ci95"]
    click.echo(
        f"fit: slope={resp['slope']:.6f} ci95=[{lo:.6f}, {hi:.6f}] "
        f"points={resp['points_used']}"
    )


@main.command()
@click.option(
    "--config",
    "config_paths",
    required=True,
    multiple=True,
    metavar="PATH",
    help="Config file; give at least twice.",
)
@_threads_option
@_out_option
@_server_option
@_guarded
def compare(config_paths: tuple[str, ...], threads: int, out: str | None, server: str | None) -> None:
    """Run several configs side by side; writes merged CSVs and summary.json."""
    if len(config_paths) < 2:
        raise ConfigError("compare needs at least two --config files")
    configs = [load_config(p).model_dump(mode="json") for p in config_paths]
    with ServiceClient(server) as client:
        resp = client.compare(configs, threads=threads)
    out_dir = out or "."
    _write_text(out_dir, "timeseries.csv", resp["timeseries_csv"])
    _write_text(out_dir, "distribution.csv", resp["distribution_csv"])
    _write_json(out_dir, "summary.json", resp["summary"])
    for entry in resp["summary"]["final_entropy"]:
        click.echo(f"compare: {entry['label']} final entropy {entry['final_mean_entropy']:.6f}")


@main.command("oracle-check")
@click.option("--cases", default=100, show_default=True, help="Random cases to run.")
@click.option("--steps", default=8, show_default=True, help="Steps per case (max 12).")
@click.option("--seed", default=7, show_default=True, help="Case generator seed.")
@click.option("--tolerance", default=1e-12, show_default=True, help="Max allowed difference.")
@_server_option
@_guarded
def oracle_check(cases: int, steps: int, seed: int, tolerance: float, server: str | None) -> None:
    """Check the fast evolution against a dense matrix reference."""
    with ServiceClient(server) as client:
        resp = client.oracle_check(cases=cases, steps=steps, seed=seed, tolerance=tolerance)
    verdict = "PASS" if resp["passed"] else "FAIL"
    click.echo(
        f"oracle-check: {resp['cases']} cases, {resp['steps']} steps, "
        f"max difference {resp['max_difference']:.3e} "
        f"(tolerance {resp['tolerance']:.1e}) {verdict}"
    )
    if not resp["passed"]:
        raise NumericalDomainError("evolution disagrees with the dense reference")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
