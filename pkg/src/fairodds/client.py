"""Client for the audit service.

Without a base URL the client mounts the FastAPI app in process over an ASGI
transport, so the CLI works with no server running; point it at a URL to use
a remote deployment instead. Either way the wire format is identical.
"""

from __future__ import annotations

import asyncio
from typing import Any, Dict, Optional

import httpx

from .errors import ClientError


class _InProcessTransport(httpx.BaseTransport):
    """Serve requests from the ASGI app on a private event loop."""

    def __init__(self, app: Any) -> None:
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        return asyncio.run(self._round_trip(request))

    async def _round_trip(self, request: httpx.Request) -> httpx.Response:
        response = await self._asgi.handle_async_request(request)
        content = await response.aread()
        await response.aclose()
        # repackage with a sync byte stream for the sync client
        return httpx.Response(
            status_code=response.status_code,
            headers=response.headers,
            content=content,
            request=request,
            extensions=response.extensions,
        )

    def close(self) -> None:
        asyncio.run(self._asgi.aclose())


def _detail(resp: httpx.Response) -> str:
    try:
        body = resp.json()
    except ValueError:
        return resp.text
    if isinstance(body, dict):
        return str(body.get("detail", body))
    return str(body)


class ServiceClient:
    def __init__(self, base_url: Optional[str] = None, timeout: float = 30.0) -> None:
        if base_url:
            self._http = httpx.Client(base_url=base_url, timeout=timeout)
        else:
            from .service.app import create_app

            self._http = httpx.Client(
                transport=_InProcessTransport(create_app()),
                base_url="http://fairodds.local",
                timeout=timeout,
            )

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def _request(self, method: str, path: str, payload: Optional[Dict[str, Any]] = None) -> httpx.Response:
        try:
            resp = self._http.request(method, path, json=payload)
        except httpx.HTTPError as exc:
            raise ClientError(0, f"cannot reach the audit service: {exc}") from exc
        if resp.status_code >= 400:
            raise ClientError(resp.status_code, _detail(resp))
        return resp

    def _post_json(self, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._request("POST", path, payload).json()

    def health(self) -> Dict[str, Any]:
        return self._request("GET", "/health").json()

    def audit(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._post_json("/audit", payload)

    def diagnose(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._post_json("/diagnose", payload)

    def lines(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._post_json("/lines", payload)

    def compatibility(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._post_json("/compatibility", payload)

    def tradeoff(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return self._post_json("/tradeoff", payload)

    def example(self, point: str) -> Dict[str, Any]:
        return self._request("GET", f"/example/{point}").json()

    def plot(self, spec: Dict[str, Any]) -> str:
        return self._request("POST", "/plot", {"spec": spec}).text
