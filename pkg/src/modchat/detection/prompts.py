"""Prompt builders for the remote backends.  Both are pure functions:
equal input gives byte-equal output."""

from __future__ import annotations

from dataclasses import dataclass

DETECTION_TEMPLATE = (
    "Analyze the following text for hate speech and respond with `hate' or "
    "`no-hate'. Provide a level of hate from 1-5, and indicate if Holocaust "
    "denial is present."
)

COUNTER_TEMPLATE = (
    "Generate a counter speech for the following text. You are an observer. "
    "The response should be between 50-100 words, contextualizing the "
    "problematic statements for someone of {national_origin} origin and "
    "providing the counter speech in {language}."
)

_DELIM_OPEN = "<<<"
_DELIM_CLOSE = ">>>"


class CounterValidationError(Exception):
    pass


@dataclass(frozen=True)
class ViolationSummary:
    legal: bool = False
    ethical: bool = False
    reason: str = ""


@dataclass(frozen=True)
class CounterRequest:
    original_text: str
    national_origin: str
    language: str
    violation_summary: ViolationSummary = ViolationSummary()

    def __post_init__(self):
        if not self.language:
            raise CounterValidationError("language tag must be non-empty")


def _escape_delimiters(text: str) -> str:
    # keep user text from closing the block early
    return text.replace(_DELIM_OPEN, r"\<\<\<").replace(_DELIM_CLOSE, r"\>\>\>")


def _block(text: str) -> str:
    return f"{_DELIM_OPEN}\n{_escape_delimiters(text)}\n{_DELIM_CLOSE}"


def build_detection_prompt(text: str) -> str:
    return f"{DETECTION_TEMPLATE}\n\n{_block(text)}"


def build_counter_prompt(req: CounterRequest) -> str:
    header = COUNTER_TEMPLATE.format(
        national_origin=req.national_origin, language=req.language
    )
    vs = req.violation_summary
    categories = []
    if vs.legal:
        categories.append("national law")
    if vs.ethical:
        categories.append("community guidelines")
    context = (
        f"Context: the statement was found to violate "
        f"{' and '.join(categories) if categories else 'no rules'}"
        + (f" (reason: {vs.reason})." if vs.reason else ".")
    )
    return f"{header}\n\n{context}\n\n{_block(req.original_text)}"
