"""Legal-then-ethical compliance checking.

A five-slot request is converted into a ground slot map and dispatched as
an `executionRequest` message, first to the legal rulebase, then to the
ethical one.  `result` effects populate the verdict, which renders to a
fixed wire form: compact JSON with key order response -> legal_violation
-> ethical_violation.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from ..rule_engine import (
    Atom,
    Clause,
    Literal,
    Num,
    Rulebase,
    RuleSyntaxError,
    SlotMap,
    Text,
    dispatch,
    parse_rulebase,
)

CHAT_CONTEXTS = ("adults_only", "minors_present")
HOL_VALUES = ("hol_denial", "none")
DEFAULT_ETHICAL_THRESHOLD = 3

_LOCATION_RE = re.compile(r"^[a-z]{2}(-[a-z]{2})?$")


class RequestValidationError(Exception):
    pass


class RulebaseConfigError(Exception):
    """Shipped or overridden rule files failed to parse; fatal at startup."""


@dataclass(frozen=True)
class ComplianceRequest:
    user_location: str
    user_age: int
    chat_context: str
    hate_speech_score: int
    hol: str

    def __post_init__(self):
        if not isinstance(self.user_location, str) or not _LOCATION_RE.match(self.user_location):
            raise RequestValidationError(f"bad user_location {self.user_location!r}")
        if not isinstance(self.user_age, int) or not 0 <= self.user_age <= 150:
            raise RequestValidationError(f"bad user_age {self.user_age!r}")
        if self.chat_context not in CHAT_CONTEXTS:
            raise RequestValidationError(f"bad chat_context {self.chat_context!r}")
        if not isinstance(self.hate_speech_score, int) or not 0 <= self.hate_speech_score <= 5:
            raise RequestValidationError(f"bad hate_speech_score {self.hate_speech_score!r}")
        if self.hol not in HOL_VALUES:
            raise RequestValidationError(f"bad hol {self.hol!r}")
        if self.hol == "hol_denial" and self.hate_speech_score != 5:
            raise RequestValidationError("hol_denial requires hate_speech_score 5")


@dataclass(frozen=True)
class LegalViolation:
    reason: str


@dataclass(frozen=True)
class EthicalViolation:
    reason: str
    score: int


@dataclass(frozen=True)
class Verdict:
    legal: Optional[LegalViolation] = None
    ethical: Optional[EthicalViolation] = None


def normalize_location(location: str) -> str:
    """Compound codes like us-ca fall back to the country for the
    jurisdiction lookup."""
    return location.split("-", 1)[0]


def _read_rule_source(name: str, rulebase_dir: Optional[str]) -> str:
    if rulebase_dir is not None:
        return (Path(rulebase_dir) / name).read_text(encoding="utf-8")
    return resources.files("modchat.compliance").joinpath("rules", name).read_text("utf-8")


def _with_threshold(rb: Rulebase, threshold: int) -> Rulebase:
    replacement = Clause(Literal("ethicalThreshold", (Num(threshold),)))
    clauses = tuple(
        replacement if c.is_fact and c.head.predicate == "ethicalThreshold" else c
        for c in rb.clauses
    )
    return Rulebase(clauses, name=rb.name)


def default_rulebases(
    rulebase_dir: Optional[str] = None,
    ethical_threshold: int = DEFAULT_ETHICAL_THRESHOLD,
) -> tuple[Rulebase, Rulebase]:
    try:
        legal = parse_rulebase(_read_rule_source("legal.rules", rulebase_dir), name="legal")
        ethical = parse_rulebase(_read_rule_source("ethical.rules", rulebase_dir), name="ethical")
    except (RuleSyntaxError, OSError) as e:
        raise RulebaseConfigError(f"cannot load rulebases: {e}") from e
    return legal, _with_threshold(ethical, ethical_threshold)


def jurisdiction_facts(legal_rb: Rulebase) -> set[str]:
    return {
        c.head.args[0].name
        for c in legal_rb.clauses_for("illCountry")
        if c.is_fact and len(c.head.args) == 1 and isinstance(c.head.args[0], Atom)
    }


def _payload(req: ComplianceRequest) -> SlotMap:
    return SlotMap(
        (
            ("user_location", Atom(normalize_location(req.user_location))),
            ("user_age", Num(req.user_age)),
            ("chat_context", Atom(req.chat_context)),
            ("hate_speech_score", Num(req.hate_speech_score)),
            ("hol", Atom(req.hol)),
        )
    )


class ComplianceService:
    """Stateless checks over immutable rulebases; `reload` swaps the pair
    atomically while in-flight checks finish on the old one."""

    def __init__(
        self,
        rulebase_dir: Optional[str] = None,
        ethical_threshold: int = DEFAULT_ETHICAL_THRESHOLD,
    ):
        self._lock = threading.Lock()
        self._rulebases = default_rulebases(rulebase_dir, ethical_threshold)

    @property
    def rulebases(self) -> tuple[Rulebase, Rulebase]:
        with self._lock:
            return self._rulebases

    def reload(self, rulebase_dir: Optional[str] = None, ethical_threshold: int = DEFAULT_ETHICAL_THRESHOLD):
        pair = default_rulebases(rulebase_dir, ethical_threshold)
        with self._lock:
            self._rulebases = pair

    def check(self, req: ComplianceRequest) -> Verdict:
        legal_rb, ethical_rb = self.rulebases
        payload = _payload(req)
        legal = ethical = None
        for effect in dispatch("executionRequest", payload, legal_rb):
            if effect.verb == "result":
                kind, reason = effect.args[0], effect.args[1]
                if isinstance(kind, Text) and kind.value == "legal_violation":
                    legal = LegalViolation(reason=reason.value)
        for effect in dispatch("executionRequest", payload, ethical_rb):
            if effect.verb == "result":
                kind, reason, score = effect.args[0], effect.args[1], effect.args[2]
                if isinstance(kind, Text) and kind.value == "ethical_violation":
                    ethical = EthicalViolation(reason=reason.value, score=int(score.value))
        return Verdict(legal=legal, ethical=ethical)


def render(verdict: Verdict, pretty: bool = False) -> bytes:
    response: dict = {}
    if verdict.legal is not None:
        response["legal_violation"] = {"reason": verdict.legal.reason}
    if verdict.ethical is not None:
        response["ethical_violation"] = {
            "reason": verdict.ethical.reason,
            "score": verdict.ethical.score,
        }
    doc = {"response": response}
    if pretty:
        return json.dumps(doc, indent=3, ensure_ascii=False).encode("utf-8")
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def parse_verdict(data: bytes) -> Verdict:
    doc = json.loads(data)
    response = doc["response"]
    legal = ethical = None
    if "legal_violation" in response:
        legal = LegalViolation(reason=response["legal_violation"]["reason"])
    if "ethical_violation" in response:
        ev = response["ethical_violation"]
        ethical = EthicalViolation(reason=ev["reason"], score=ev["score"])
    return Verdict(legal=legal, ethical=ethical)
