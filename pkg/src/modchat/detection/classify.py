"""Hate-speech classification backends.

The deterministic lexicon backend is the default so the whole pipeline is
testable offline; the remote backend speaks to an LLM endpoint and parses
its three-line reply (label / severity / holocaust-denial flag).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Optional, Protocol

import httpx

from .prompts import build_detection_prompt

HATE = "hate"
NO_HATE = "no_hate"
HOL_DENIAL = "hol_denial"
HOL_NONE = "none"


class ValidationError(Exception):
    pass


class BackendError(Exception):
    """The remote classifier timed out, errored, or replied out of
    contract.  Fail-closed handling is the caller's decision."""


@dataclass(frozen=True)
class Classification:
    label: str
    severity: Optional[int] = None
    hol: str = HOL_NONE

    def __post_init__(self):
        if self.label not in (HATE, NO_HATE):
            raise ValidationError(f"bad label {self.label!r}")
        if self.hol not in (HOL_DENIAL, HOL_NONE):
            raise ValidationError(f"bad hol flag {self.hol!r}")
        if self.label == NO_HATE:
            if self.severity is not None or self.hol != HOL_NONE:
                raise ValidationError("no_hate carries no severity and no denial flag")
        else:
            if self.severity is None or not 1 <= self.severity <= 5:
                raise ValidationError(f"severity must be 1-5, got {self.severity!r}")
            if self.hol == HOL_DENIAL and self.severity != 5:
                raise ValidationError("Holocaust denial forces severity 5")


@dataclass(frozen=True)
class LexiconRule:
    pattern: str  # case-insensitive phrase
    weight: int
    hol_marker: bool = False

    def __post_init__(self):
        if not 1 <= self.weight <= 5:
            raise ValidationError(f"weight must be 1-5, got {self.weight}")


class DetectionBackend(Protocol):
    def classify(self, text: str) -> Classification: ...


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip().lower())


@dataclass
class LexiconBackend:
    """Matches case-insensitive phrases; severity is the max weight among
    matched rules and any matched hol marker flags Holocaust denial."""

    rules: list[LexiconRule] = field(default_factory=list)

    def classify(self, text: str) -> Classification:
        normalized = _normalize(text)
        matched = [
            r
            for r in self.rules
            if re.search(r"\b" + re.escape(_normalize(r.pattern)) + r"\b", normalized)
        ]
        if not matched:
            return Classification(NO_HATE)
        hol = any(r.hol_marker for r in matched)
        severity = 5 if hol else max(r.weight for r in matched)
        return Classification(HATE, severity, HOL_DENIAL if hol else HOL_NONE)


def default_lexicon() -> LexiconBackend:
    return LexiconBackend(
        rules=[
            LexiconRule("the holocaust never happened", 5, hol_marker=True),
            LexiconRule("the holocaust is a myth", 5, hol_marker=True),
            LexiconRule("the holocaust is a lie", 5, hol_marker=True),
            LexiconRule("the holocaust did not happen", 5, hol_marker=True),
            LexiconRule("you should all be killed", 5),
            LexiconRule("deserve to die", 5),
            LexiconRule("go back to your country", 4),
            LexiconRule("you people are vermin", 4),
            LexiconRule("you are scum", 3),
            LexiconRule("nobody wants your kind here", 3),
            LexiconRule("you are a disgrace", 2),
            LexiconRule("shut up, idiot", 1),
        ]
    )


_HOL_LINE = re.compile(r"^holocaust-denial:\s*(yes|no)$")


def parse_remote_reply(text: str) -> Classification:
    """Parse the remote classifier's reply.

    Contract: first line 'hate' or 'no-hate'; for 'hate' a severity line
    (1-5) and a 'holocaust-denial: yes|no' line follow.  Anything else,
    including 'no-hate' with trailing content, is out of contract.
    """
    lines = [l.strip().lower() for l in text.strip().splitlines() if l.strip()]
    if not lines:
        raise BackendError("empty reply from classifier backend")
    label = lines[0]
    if label == "no-hate":
        if len(lines) > 1:
            raise BackendError(f"no-hate reply with trailing content: {text!r}")
        return Classification(NO_HATE)
    if label != "hate":
        raise BackendError(f"unrecognized label line {lines[0]!r}")
    if len(lines) != 3:
        raise BackendError(f"hate reply must have exactly 3 lines, got {len(lines)}")
    if not lines[1].isdigit() or not 1 <= int(lines[1]) <= 5:
        raise BackendError(f"bad severity line {lines[1]!r}")
    severity = int(lines[1])
    m = _HOL_LINE.match(lines[2])
    if not m:
        raise BackendError(f"bad holocaust-denial line {lines[2]!r}")
    hol = HOL_DENIAL if m.group(1) == "yes" else HOL_NONE
    if hol == HOL_DENIAL and severity != 5:
        raise BackendError("holocaust denial reply must carry severity 5")
    return Classification(HATE, severity, hol)


@dataclass
class RemoteConfig:
    base_url: str
    api_key: str = ""
    model: str = "gpt-3.5-turbo"
    timeout: float = 10.0
    retries: int = 2

    @classmethod
    def from_env(cls, env=os.environ) -> "RemoteConfig":
        return cls(
            base_url=env.get("MODCHAT_DETECT_BASE_URL", ""),
            api_key=env.get("MODCHAT_DETECT_API_KEY", ""),
            model=env.get("MODCHAT_DETECT_MODEL", "gpt-3.5-turbo"),
            timeout=float(env.get("MODCHAT_DETECT_TIMEOUT", "10")),
        )


class RemoteBackend:
    """Talks to an LLM completion endpoint; stateless after construction."""

    def __init__(self, config: RemoteConfig, transport: Optional[httpx.BaseTransport] = None):
        self.config = config
        self._client = httpx.Client(
            base_url=config.base_url,
            timeout=config.timeout,
            transport=transport,
            headers={"Authorization": f"Bearer {config.api_key}"} if config.api_key else {},
        )

    def _complete(self, prompt: str) -> str:
        last: Exception | None = None
        for _ in range(self.config.retries + 1):
            try:
                r = self._client.post(
                    "/completions", json={"model": self.config.model, "prompt": prompt}
                )
                r.raise_for_status()
                return r.json()["text"]
            except (httpx.HTTPError, KeyError, ValueError) as e:
                last = e
        raise BackendError(f"remote backend failed after retries: {last}")

    def classify(self, text: str) -> Classification:
        return parse_remote_reply(self._complete(build_detection_prompt(text)))

    def complete(self, prompt: str) -> str:
        return self._complete(prompt)


def classify(text: str, backend: DetectionBackend) -> Classification:
    if not text or not text.strip():
        raise ValidationError("cannot classify empty text")
    return backend.classify(text)
