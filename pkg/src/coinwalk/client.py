"""Thin client for the experiment service.

By default requests are dispatched to the app in process (no socket,
no running server needed); passing a base URL talks to a remote
instance over HTTP instead. Both modes go through the same request
path, so validation and error shaping behave identically.
"""

from __future__ import annotations

from typing import Any

import httpx

from .errors import ConfigError, NumericalDomainError

_TIMEOUT = httpx.Timeout(15.0, read=3600.0)


class ServiceClient:
    def __init__(self, server: str | None = None):
        if server is None:
            import warnings

            with warnings.catch_warnings():
                # starlette 1.3 warns that its httpx bridge is deprecated;
                # the suggested replacement is not packaged yet.
                warnings.filterwarnings("ignore", message=".*httpx2.*")
                from starlette.testclient import TestClient

            from .service import create_app

            self._client: httpx.Client = TestClient(
                create_app(), base_url="http://service", raise_server_exceptions=False
            )
        else:
            self._client = httpx.Client(base_url=server, timeout=_TIMEOUT)

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def _post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        resp = self._client.post(path, json=payload)
        if resp.status_code >= 400:
            self._raise_for(resp)
        return resp.json()

    @staticmethod
    def _raise_for(resp: httpx.Response) -> None:
        try:
            detail = resp.json().get("detail")
        except ValueError:
            detail = None
        if isinstance(detail, dict):
            kind = detail.get("kind")
            message = str(detail.get("message", "unknown error"))
        else:
            kind = None
            message = str(detail) if detail else f"service returned {resp.status_code}"
        if kind == "domain":
            raise NumericalDomainError(message)
        if kind == "validation" or resp.status_code == 422:
            raise ConfigError(message)
        raise RuntimeError(f"service error {resp.status_code}: {message}")

    def health(self) -> dict[str, Any]:
        resp = self._client.get("/health")
        if resp.status_code >= 400:
            self._raise_for(resp)
        return resp.json()

    def run(self, config: dict[str, Any], threads: int = 1) -> dict[str, Any]:
        return self._post("/run", {"config": config, "threads": threads})

    def fit(
        self, timeseries_csv: str, drop_first: int = 100, column: str = "mean_distance"
    ) -> dict[str, Any]:
        return self._post(
            "/fit",
            {"timeseries_csv": timeseries_csv, "drop_first": drop_first, "column": column},
        )

    def compare(self, configs: list[dict[str, Any]], threads: int = 1) -> dict[str, Any]:
        return self._post("/compare", {"configs": configs, "threads": threads})

    def oracle_check(
        self, cases: int = 100, steps: int = 8, seed: int = 7, tolerance: float = 1e-12
    ) -> dict[str, Any]:
        return self._post(
            "/oracle-check",
            {"cases": cases, "steps": steps, "seed": seed, "tolerance": tolerance},
        )
