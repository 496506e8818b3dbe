import pytest

from conftest import make_utterances
from puntua.errors import ConfigurationError, EndpointError
from puntua.predictors.llm import API_KEY_ENV, LlmEndpointConfig, benchmark_llm, request_payload
from puntua.predictors.prompts import PromptTemplate

ZERO = PromptTemplate.zero_shot()


def endpoint(url: str) -> LlmEndpointConfig:
    return LlmEndpointConfig(base_url=url, model="stub", api_key="k")


def test_defaults_and_payload():
    ep = endpoint("http://x/v1/")
    assert ep.completions_url == "http://x/v1/chat/completions"
    payload = request_payload("p", ep)
    assert payload == {
        "model": "stub",
        "messages": [{"role": "user", "content": "p"}],
        "temperature": 0.2,
        "max_tokens": 1024,
    }


def test_api_key_from_env(monkeypatch):
    monkeypatch.delenv(API_KEY_ENV, raising=False)
    with pytest.raises(ConfigurationError):
        LlmEndpointConfig.from_env("http://x", "m")
    monkeypatch.setenv(API_KEY_ENV, "secret")
    ep = LlmEndpointConfig.from_env("http://x", "m")
    assert ep.api_key == "secret" and "secret" not in repr(ep)


def test_missing_key_fails_before_requests(stub):
    ep = LlmEndpointConfig(base_url=stub.url("echo"), model="m")
    with pytest.raises(ConfigurationError):
        benchmark_llm(make_utterances(2), ep, ZERO)
    assert stub.requests == []


def test_echo_is_reliable(stub):
    utts = make_utterances(4)
    records = benchmark_llm(utts, endpoint(stub.url("echo")), ZERO)
    assert [r.id for r in records] == [u.id for u in utts]
    assert all(r.reliable for r in records)
    assert stub.requests[0]["auth"] == "Bearer k"
    assert stub.requests[0]["body"]["messages"][0]["content"].endswith(
        "### Input: bueno cómo está cliente0\n### Output:"
    )


def test_translation_is_unreliable(stub):
    records = benchmark_llm(make_utterances(3), endpoint(stub.url("translate")), ZERO)
    assert not any(r.reliable for r in records)
    assert all(r.output == "Hello, how are you?" for r in records)


def test_half_rewritten(stub):
    records = benchmark_llm(make_utterances(6), endpoint(stub.url("half")), ZERO)
    assert [r.reliable for r in records] == [True, False] * 3


def test_retries_recover(stub):
    records = benchmark_llm(make_utterances(3), endpoint(stub.url("flaky")), ZERO, retries=1)
    assert all(r.reliable and r.attempts == 2 for r in records)


def test_exhausted_retries_recorded(stub):
    utts = make_utterances(2)
    with pytest.raises(EndpointError):
        benchmark_llm(utts, endpoint(stub.url("fail")), ZERO, retries=2)
    assert len(stub.requests) == 6


def test_unreachable_endpoint():
    with pytest.raises(EndpointError):
        benchmark_llm(make_utterances(1), endpoint("http://127.0.0.1:9"), ZERO, retries=0)


def test_inflight_keeps_input_order(stub):
    utts = make_utterances(8)
    records = benchmark_llm(utts, endpoint(stub.url("echo", "delay20")), ZERO, max_inflight=4)
    assert [r.id for r in records] == [u.id for u in utts]
    assert all(r.reliable for r in records)


def test_does_not_mutate_inputs(stub):
    utts = make_utterances(2, with_reference=True)
    before = list(utts)
    benchmark_llm(utts, endpoint(stub.url("echo")), PromptTemplate.few_shot())
    assert utts == before


def test_latency_with_delay(stub):
    records = benchmark_llm(make_utterances(10), endpoint(stub.url("echo", "delay50")), ZERO)
    mean = sum(r.latency_s for r in records) / len(records)
    assert 0.045 <= mean <= 0.070
