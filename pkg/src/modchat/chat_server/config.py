"""Config file loading and service wiring.

Documented keys (all optional; missing URLs mean in-process services):

    {
      "pod_base_url": "http://localhost:8001",
      "detection_base_url": "http://localhost:8002",
      "compliance_base_url": "http://localhost:8003",
      "backend_timeout": 10.0,
      "ethical_threshold": 3,
      "rooms": {"lobby": 4, "youth": 3}
    }

Room values are the per-room minor severity thresholds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..compliance.service import ComplianceService, DEFAULT_ETHICAL_THRESHOLD
from ..detection.classify import default_lexicon
from ..detection.counter import TemplateCounterBackend
from ..pod_store.store import PodService
from .core import ChatServer, RoomPolicy, DEFAULT_MINOR_SEVERITY_THRESHOLD


@dataclass
class ChatConfig:
    pod_base_url: Optional[str] = None
    detection_base_url: Optional[str] = None
    compliance_base_url: Optional[str] = None
    backend_timeout: float = 10.0
    ethical_threshold: int = DEFAULT_ETHICAL_THRESHOLD
    rooms: dict[str, int] = field(default_factory=dict)


def load_config(path: str | Path) -> ChatConfig:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    known = {f for f in ChatConfig.__dataclass_fields__}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return ChatConfig(**data)


def build_server(config: ChatConfig, pod_service: Optional[PodService] = None) -> ChatServer:
    from .clients import ComplianceHTTPClient, DetectionHTTPClient, PodHTTPClient

    if config.pod_base_url:
        pods = PodHTTPClient(config.pod_base_url, timeout=config.backend_timeout)
    else:
        pods = pod_service or PodService()
    if config.detection_base_url:
        detection = DetectionHTTPClient(config.detection_base_url, timeout=config.backend_timeout)
        counter = detection
    else:
        detection = default_lexicon()
        counter = TemplateCounterBackend()
    if config.compliance_base_url:
        compliance = ComplianceHTTPClient(config.compliance_base_url, timeout=config.backend_timeout)
    else:
        compliance = ComplianceService(ethical_threshold=config.ethical_threshold)
    rooms = {
        rid: RoomPolicy(minor_severity_threshold=threshold)
        for rid, threshold in (config.rooms or {"lobby": DEFAULT_MINOR_SEVERITY_THRESHOLD}).items()
    }
    return ChatServer(pods, detection, compliance, counter_backend=counter, rooms=rooms)
