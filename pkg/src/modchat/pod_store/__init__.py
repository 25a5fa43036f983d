from .store import (
    DENIED,
    AuditEvent,
    AuthenticationError,
    ConsentGrant,
    MAJORITY_THRESHOLDS,
    Pod,
    PodError,
    PodService,
    PodValidationError,
    PROFILE_PREDICATES,
    PURPOSES,
    Triple,
    is_minor_by_table,
)
from .http import build_router, create_app

__all__ = [
    "AuditEvent",
    "AuthenticationError",
    "ConsentGrant",
    "DENIED",
    "MAJORITY_THRESHOLDS",
    "PROFILE_PREDICATES",
    "PURPOSES",
    "Pod",
    "PodError",
    "PodService",
    "PodValidationError",
    "Triple",
    "build_router",
    "create_app",
    "is_minor_by_table",
]
