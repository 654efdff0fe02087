"""Thin client for the lab service.

Without a base URL the client mounts the FastAPI app in-process (same
machine, same filesystem, no server to start); with one it speaks plain
HTTP to a remote lab, in which case result files land on the server.
"""

from __future__ import annotations

import httpx


class LabClient:
    def __init__(self, base_url: str | None = None):
        if base_url:
            self._http = httpx.Client(base_url=base_url, timeout=None)
        else:
            from fastapi.testclient import TestClient

            from fhtlab.service.app import create_app

            self._http = TestClient(create_app())

    def get(self, path: str) -> tuple[int, dict]:
        resp = self._http.get(path)
        return resp.status_code, resp.json()

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        resp = self._http.post(path, json=payload)
        return resp.status_code, resp.json()

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "LabClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
