"""Prediction channels: file-backed tracks, the rule baseline and LLM prompting."""

from puntua.predictors.io import dump_predictions, load_predictions
from puntua.predictors.llm import BenchRecord, LlmEndpointConfig, benchmark_llm
from puntua.predictors.prompts import PromptMode, PromptTemplate, build_prompt
from puntua.predictors.rules import RuleTable, rule_lexical_predict

__all__ = [
    "BenchRecord",
    "LlmEndpointConfig",
    "PromptMode",
    "PromptTemplate",
    "RuleTable",
    "benchmark_llm",
    "build_prompt",
    "dump_predictions",
    "load_predictions",
    "rule_lexical_predict",
]
