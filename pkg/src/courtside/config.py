"""
Application configuration for the HTTP service and CLI.

The config file is plain ``key = value`` text with ``#`` comments, e.g.::

    data_dir = ./data/clips
    reference_path = ./data/reference.json
    chat.mode = mock
    chat.script_path = ./data/mock_chat.json
    listen.port = 8800
    detection.cut_speed = 6.0

The COURTSIDE_CONFIG environment variable, when set, overrides the config
file path given on the command line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .detection import DetectionParams
from .filtering import FilterParams
from .overlay import FlashForwardParams
from .tactics import DistanceParams

ENV_CONFIG = "COURTSIDE_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class ChatConfig:
    mode: str = "mock"  # mock | remote
    endpoint: str = ""
    key: str = ""
    model: str = ""
    timeout: float = 30.0
    script_path: Optional[str] = None
    fallback_enabled: bool = True
    retries: int = 2

    def validate(self) -> None:
        if self.mode not in ("mock", "remote"):
            raise ConfigError(f"chat.mode must be mock or remote, got {self.mode!r}")
        if self.mode == "mock" and not self.script_path:
            raise ConfigError("chat.mode = mock requires chat.script_path")
        if self.mode == "remote" and not (self.endpoint and self.key):
            raise ConfigError("chat.mode = remote requires chat.endpoint and chat.key")


@dataclass
class AppConfig:
    data_dir: str = "./data/clips"
    reference_path: Optional[str] = None
    tactic_descriptions_path: Optional[str] = None
    stats_path: Optional[str] = None
    tool_fixtures_path: Optional[str] = None
    ui_dir: Optional[str] = None
    host: str = "127.0.0.1"
    port: int = 8800
    chat: ChatConfig = field(default_factory=ChatConfig)
    detection: DetectionParams = field(default_factory=DetectionParams)
    filter: FilterParams = field(default_factory=FilterParams)
    distance: DistanceParams = field(default_factory=DistanceParams)
    flashforward: FlashForwardParams = field(default_factory=FlashForwardParams)
    knn_k: int = 3

    def validate(self) -> None:
        self.chat.validate()


_DETECTION_KEYS = {
    "possession_radius": float,
    "possession_hold": int,
    "marking_hysteresis": int,
    "screen_proximity": float,
    "cut_speed": float,
    "cut_window": float,
}
_FILTER_KEYS = {"cut_receive_window": float, "screen_relevance_radius": float}
_DISTANCE_KEYS = {"radius": int, "correspondence": str}


def parse_config_text(text: str) -> AppConfig:
    cfg = AppConfig()
    detection: dict = {}
    filt: dict = {}
    distance: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            _apply_key(cfg, detection, filt, distance, key, value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"line {lineno}: {key}: {e}") from None
    if detection:
        cfg.detection = DetectionParams(**{**_params_dict(cfg.detection), **detection})
    if filt:
        cfg.filter = FilterParams(**{**_params_dict(cfg.filter), **filt})
    if distance:
        cfg.distance = DistanceParams(**{**_params_dict(cfg.distance), **distance})
    cfg.validate()
    return cfg


def _params_dict(obj) -> dict:
    return {k: getattr(obj, k) for k in obj.__dataclass_fields__}


def _apply_key(cfg: AppConfig, detection, filt, distance, key: str, value: str) -> None:
    if key == "data_dir":
        cfg.data_dir = value
    elif key == "reference_path":
        cfg.reference_path = value
    elif key == "tactic_descriptions_path":
        cfg.tactic_descriptions_path = value
    elif key == "stats_path":
        cfg.stats_path = value
    elif key == "tool_fixtures_path":
        cfg.tool_fixtures_path = value
    elif key == "ui_dir":
        cfg.ui_dir = value
    elif key == "listen.host":
        cfg.host = value
    elif key == "listen.port":
        cfg.port = int(value)
    elif key == "knn.k":
        cfg.knn_k = int(value)
    elif key == "chat.mode":
        cfg.chat.mode = value
    elif key == "chat.endpoint":
        cfg.chat.endpoint = value
    elif key == "chat.key":
        cfg.chat.key = value
    elif key == "chat.model":
        cfg.chat.model = value
    elif key == "chat.timeout":
        cfg.chat.timeout = float(value)
    elif key == "chat.script_path":
        cfg.chat.script_path = value
    elif key == "chat.fallback":
        cfg.chat.fallback_enabled = value.lower() in ("1", "true", "on", "yes")
    elif key == "chat.retries":
        cfg.chat.retries = int(value)
    elif key == "flashforward.horizon":
        cfg.flashforward = FlashForwardParams(horizon=float(value))
    elif key.startswith("detection."):
        sub = key.split(".", 1)[1]
        if sub not in _DETECTION_KEYS:
            raise ConfigError(f"unknown detection key {sub!r}")
        detection[sub] = _DETECTION_KEYS[sub](value)
    elif key.startswith("filter."):
        sub = key.split(".", 1)[1]
        if sub not in _FILTER_KEYS:
            raise ConfigError(f"unknown filter key {sub!r}")
        filt[sub] = _FILTER_KEYS[sub](value)
    elif key.startswith("distance."):
        sub = key.split(".", 1)[1]
        if sub not in _DISTANCE_KEYS:
            raise ConfigError(f"unknown distance key {sub!r}")
        distance[sub] = _DISTANCE_KEYS[sub](value)
    else:
        raise ConfigError(f"unknown key {key!r}")


def load_config(path: Optional[str] = None) -> AppConfig:
    """Read config from ``path``, honoring the COURTSIDE_CONFIG override.
    No path and no env var gives the defaults (which fail validation only
    when a chat script is actually needed)."""
    effective = os.environ.get(ENV_CONFIG) or path
    if effective is None:
        cfg = AppConfig()
        cfg.chat.script_path = ""  # defaults run fallback-only mock
        return cfg
    p = Path(effective)
    if not p.exists():
        raise ConfigError(f"config file not found: {effective}")
    return parse_config_text(p.read_text(encoding="utf-8"))
