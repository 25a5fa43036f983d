from .classify import (
    BackendError,
    Classification,
    DetectionBackend,
    HATE,
    HOL_DENIAL,
    HOL_NONE,
    LexiconBackend,
    LexiconRule,
    NO_HATE,
    RemoteBackend,
    RemoteConfig,
    ValidationError,
    classify,
    default_lexicon,
    parse_remote_reply,
)
from .counter import RemoteCounterBackend, TemplateCounterBackend, generate_counter
from .prompts import (
    CounterRequest,
    CounterValidationError,
    ViolationSummary,
    build_counter_prompt,
    build_detection_prompt,
)
from .http import build_router, create_app

__all__ = [
    "BackendError",
    "Classification",
    "CounterRequest",
    "CounterValidationError",
    "DetectionBackend",
    "HATE",
    "HOL_DENIAL",
    "HOL_NONE",
    "LexiconBackend",
    "LexiconRule",
    "NO_HATE",
    "RemoteBackend",
    "RemoteConfig",
    "RemoteCounterBackend",
    "TemplateCounterBackend",
    "ValidationError",
    "ViolationSummary",
    "build_counter_prompt",
    "build_detection_prompt",
    "build_router",
    "classify",
    "create_app",
    "default_lexicon",
    "generate_counter",
    "parse_remote_reply",
]
