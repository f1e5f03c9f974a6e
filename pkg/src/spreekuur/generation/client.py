"""Chat-completion clients.

``HttpLLMClient`` talks to any endpoint that speaks the common
chat-completions JSON dialect (``POST {base_url}/chat/completions`` with
a ``messages`` list, reply under ``choices[0].message.content``).
``StubLLMClient`` replays canned replies for tests and dry runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import requests

from ..errors import AuthError, ClientError, MalformedResponse

Message = dict  # {"role": ..., "content": ...}


@dataclass
class CallRecord:
    """One completed round trip, kept for reporting."""

    model: str
    latency: float
    prompt_tokens: Optional[int] = None
    completion_tokens: Optional[int] = None


def _check_messages(messages: Sequence[Message]) -> None:
    if not messages:
        raise ValueError("messages must be non-empty")
    if messages[0].get("role") != "system":
        raise ValueError("first message must have role 'system'")


class LLMClient:
    """Interface: turn a message list into the assistant's reply text."""

    def complete(self, messages: Sequence[Message], **params) -> str:
        raise NotImplementedError


class HttpLLMClient(LLMClient):
    """Client for OpenAI-style chat-completion HTTP endpoints.

    Retries transient failures (connection errors, timeouts, 429 and 5xx
    responses) with exponential backoff. 401/403 raise AuthError right
    away since retrying cannot help. The ``post`` callable is injectable
    so tests never need a network.
    """

    RETRYABLE_STATUS = frozenset({429, 500, 502, 503, 504})

    def __init__(
        self,
        base_url: str,
        model: str,
        token: Optional[str] = None,
        timeout: float = 120.0,
        max_retries: int = 3,
        backoff: float = 1.0,
        post: Optional[Callable] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.token = token
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self._post = post or requests.post
        self._sleep = sleep
        self.records: list[CallRecord] = []

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        return headers

    def complete(self, messages: Sequence[Message], **params) -> str:
        _check_messages(messages)
        payload = {"model": self.model, "messages": list(messages), **params}
        url = f"{self.base_url}/chat/completions"
        last_error: Optional[Exception] = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                self._sleep(self.backoff * (2 ** (attempt - 1)))
            started = time.monotonic()
            try:
                response = self._post(
                    url, json=payload, headers=self._headers(), timeout=self.timeout
                )
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_error = exc
                continue
            latency = time.monotonic() - started
            status = response.status_code
            if status in (401, 403):
                raise AuthError(f"endpoint rejected credentials (HTTP {status})")
            if status in self.RETRYABLE_STATUS:
                last_error = ClientError(f"HTTP {status} from endpoint")
                continue
            if status != 200:
                raise ClientError(f"HTTP {status} from endpoint")
            return self._extract(response, latency)
        raise ClientError(f"request failed after {self.max_retries + 1} attempts: {last_error}")

    def _extract(self, response, latency: float) -> str:
        try:
            body = response.json()
        except ValueError as exc:
            raise MalformedResponse(f"response body is not JSON: {exc}") from exc
        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise MalformedResponse(f"unexpected response shape: {exc!r}") from exc
        if not isinstance(content, str):
            raise MalformedResponse("message content is not text")
        usage = body.get("usage") or {}
        self.records.append(
            CallRecord(
                model=body.get("model", self.model),
                latency=latency,
                prompt_tokens=usage.get("prompt_tokens"),
                completion_tokens=usage.get("completion_tokens"),
            )
        )
        return content


@dataclass
class StubLLMClient(LLMClient):
    """Deterministic stand-in: replays ``replies`` in order.

    Records every call's messages and params. ``fail_on`` makes the
    call at that index (0-based) raise ClientError once, which lets
    tests exercise resume-after-failure paths.
    """

    replies: Sequence[str] = ()
    fail_on: Optional[int] = None
    calls: list = field(default_factory=list)
    _cursor: int = 0
    _failed: bool = False

    def complete(self, messages: Sequence[Message], **params) -> str:
        _check_messages(messages)
        index = len(self.calls)
        self.calls.append({"messages": [dict(m) for m in messages], "params": params})
        if self.fail_on is not None and index == self.fail_on and not self._failed:
            self._failed = True
            raise ClientError(f"stub failure injected at call {index}")
        if self._cursor >= len(self.replies):
            raise ClientError("stub ran out of canned replies")
        reply = self.replies[self._cursor]
        self._cursor += 1
        return reply
