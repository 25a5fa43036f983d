from .service import (
    ComplianceRequest,
    ComplianceService,
    DEFAULT_ETHICAL_THRESHOLD,
    EthicalViolation,
    LegalViolation,
    RequestValidationError,
    RulebaseConfigError,
    Verdict,
    default_rulebases,
    jurisdiction_facts,
    normalize_location,
    parse_verdict,
    render,
)
from .http import build_router, create_app

__all__ = [
    "ComplianceRequest",
    "ComplianceService",
    "DEFAULT_ETHICAL_THRESHOLD",
    "EthicalViolation",
    "LegalViolation",
    "RequestValidationError",
    "RulebaseConfigError",
    "Verdict",
    "build_router",
    "create_app",
    "default_rulebases",
    "jurisdiction_facts",
    "normalize_location",
    "parse_verdict",
    "render",
]
