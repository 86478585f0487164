"""Service configuration: bot message, pipeline defaults, external reader.

A missing config file is not an error; every field has a default so the
service can run bare.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .pipeline import PipelineConfig
from .reader import ExternalReaderConfig

__all__ = ["ConfigError", "DEFAULT_WELCOME_MESSAGE", "ServiceConfig", "load_service_config"]

DEFAULT_WELCOME_MESSAGE = "My name is Emma, your voice assistance, how can I help you today?"


class ConfigError(Exception):
    """The config file exists but cannot be used."""


@dataclass(frozen=True)
class ServiceConfig:
    welcome_message: str = DEFAULT_WELCOME_MESSAGE
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    cors_origins: tuple[str, ...] = ("*",)
    ui_dir: str | None = None

    def __post_init__(self) -> None:
        if not self.welcome_message:
            raise ValueError("welcome_message must be non-empty")


def load_service_config(path: str | Path | None) -> ServiceConfig:
    """Read a JSON config file; a None path or absent file yields defaults."""
    if path is None:
        return ServiceConfig()
    path = Path(path)
    if not path.exists():
        return ServiceConfig()
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load config {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"config {path} must be a JSON object")

    try:
        external = None
        if isinstance(payload.get("external_reader"), dict):
            raw = payload["external_reader"]
            external = ExternalReaderConfig(
                endpoint=raw["endpoint"],
                timeout_ms=int(raw.get("timeout_ms", 5000)),
                fallback_to_lexical=bool(raw.get("fallback_to_lexical", True)),
            )
        pipeline_defaults = PipelineConfig()
        raw_pipeline = payload.get("pipeline", {})
        if not isinstance(raw_pipeline, dict):
            raise ConfigError(f"config {path}: 'pipeline' must be an object")
        pipeline = PipelineConfig(
            top_k_docs=int(raw_pipeline.get("top_k_docs", pipeline_defaults.top_k_docs)),
            fusion_alpha=float(raw_pipeline.get("fusion_alpha", pipeline_defaults.fusion_alpha)),
            no_answer_message=raw_pipeline.get(
                "no_answer_message", pipeline_defaults.no_answer_message
            ),
            reader_mode=raw_pipeline.get("reader_mode", pipeline_defaults.reader_mode),
            external_reader=external,
        )
        origins = payload.get("cors_origins", ["*"])
        if not isinstance(origins, list):
            raise ConfigError(f"config {path}: 'cors_origins' must be a list")
        return ServiceConfig(
            welcome_message=payload.get("welcome_message", DEFAULT_WELCOME_MESSAGE),
            pipeline=pipeline,
            cors_origins=tuple(origins),
            ui_dir=payload.get("ui_dir"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config {path}: {exc!r}") from exc
