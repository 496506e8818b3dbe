"""Reliability/latency benchmark client for chat-completion style LLM endpoints."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import httpx

from puntua.errors import ConfigurationError, EndpointError
from puntua.labels import Utterance
from puntua.metrics import check_reliability
from puntua.predictors.prompts import PromptTemplate, build_prompt

log = logging.getLogger(__name__)

API_KEY_ENV = "PUNTUA_LLM_API_KEY"


@dataclass(frozen=True)
class LlmEndpointConfig:
    base_url: str
    model: str
    temperature: float = 0.2
    max_tokens: int = 1024
    api_key: str = field(default="", repr=False)
    timeout_s: float = 60.0

    @classmethod
    def from_env(cls, base_url: str, model: str, **kwargs) -> "LlmEndpointConfig":
        key = os.environ.get(API_KEY_ENV, "")
        if not key:
            raise ConfigurationError(f"environment variable {API_KEY_ENV} is not set")
        return cls(base_url=base_url, model=model, api_key=key, **kwargs)

    @property
    def completions_url(self) -> str:
        return self.base_url.rstrip("/") + "/chat/completions"


@dataclass(frozen=True)
class BenchRecord:
    id: str
    output: Optional[str]
    reliable: bool
    latency_s: Optional[float]
    attempts: int
    error: Optional[str] = None


def request_payload(prompt: str, endpoint: LlmEndpointConfig) -> dict:
    return {
        "model": endpoint.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": endpoint.temperature,
        "max_tokens": endpoint.max_tokens,
    }


def complete(client: httpx.Client, endpoint: LlmEndpointConfig, prompt: str) -> tuple[str, float]:
    """Issue one completion request; returns the reply text and elapsed seconds.

    The clock covers request construction through response parsing.
    """
    start = time.perf_counter()
    resp = client.post(
        endpoint.completions_url,
        json=request_payload(prompt, endpoint),
        headers={"Authorization": f"Bearer {endpoint.api_key}"},
    )
    resp.raise_for_status()
    text = resp.json()["choices"][0]["message"]["content"]
    elapsed = time.perf_counter() - start
    if not isinstance(text, str):
        raise ValueError("completion content is not a string")
    return text.strip(), elapsed


def _run_one(
    client: httpx.Client,
    u: Utterance,
    endpoint: LlmEndpointConfig,
    template: PromptTemplate,
    retries: int,
) -> BenchRecord:
    prompt = build_prompt(" ".join(u.words), template)
    error = None
    for attempt in range(1, retries + 2):
        try:
            text, elapsed = complete(client, endpoint, prompt)
        except (httpx.HTTPError, ValueError, KeyError, IndexError, TypeError) as exc:
            error = f"{type(exc).__name__}: {exc}"
            log.warning("utterance %s attempt %d failed: %s", u.id, attempt, error)
            continue
        return BenchRecord(u.id, text, check_reliability(u.words, text), elapsed, attempt)
    return BenchRecord(u.id, None, False, None, retries + 1, error)


def benchmark_llm(
    utterances: Sequence[Utterance],
    endpoint: LlmEndpointConfig,
    template: PromptTemplate,
    *,
    retries: int = 2,
    max_inflight: int = 1,
    client: Optional[httpx.Client] = None,
) -> list[BenchRecord]:
    """Send every utterance (marks removed) to *endpoint* and check each reply.

    Results come back in input order. A call that still fails after
    *retries* extra attempts is recorded as unreliable with no latency.
    Keep ``max_inflight`` at 1 when the latency numbers matter.
    """
    if not endpoint.api_key:
        raise ConfigurationError(f"no API key configured (set {API_KEY_ENV})")
    if max_inflight < 1:
        raise ConfigurationError("max_inflight must be at least 1")
    if retries < 0:
        raise ConfigurationError("retries must be non-negative")

    own_client = client is None
    if own_client:
        client = httpx.Client(timeout=endpoint.timeout_s)
    try:
        if max_inflight == 1:
            records = [_run_one(client, u, endpoint, template, retries) for u in utterances]
        else:
            with ThreadPoolExecutor(max_workers=max_inflight) as pool:
                records = list(
                    pool.map(lambda u: _run_one(client, u, endpoint, template, retries), utterances)
                )
    finally:
        if own_client:
            client.close()

    if records and all(r.output is None for r in records):
        raise EndpointError(
            f"all {len(records)} requests to {endpoint.completions_url} failed; last error: {records[-1].error}"
        )
    return records
