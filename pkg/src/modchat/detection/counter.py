"""Counter-speech generation.

The template backend is deterministic and fully offline; it localizes the
violation category and reason into English, German or Greek.  The remote
backend delegates to the LLM endpoint and only warns (never rejects) when
the reply falls outside the suggested 50-100 word window.
"""

from __future__ import annotations

import logging

from .classify import BackendError, RemoteBackend
from .prompts import CounterRequest, CounterValidationError, build_counter_prompt

log = logging.getLogger(__name__)

_TEMPLATES = {
    "en": (
        "Your message was not published because it conflicts with {category}. "
        "Reason: {reason}. Statements like this cause real harm: they spread "
        "misinformation and target people for who they are. The historical "
        "record on these events is unambiguous, and this community is "
        "committed to a factual and respectful exchange. Please reconsider "
        "the message and the people it affects."
    ),
    "de": (
        "Ihre Nachricht wurde nicht veröffentlicht, da sie gegen {category} "
        "verstößt. Grund: {reason}. Solche Aussagen richten realen Schaden "
        "an: Sie verbreiten Falschinformationen und greifen Menschen an. Die "
        "historische Faktenlage zu diesen Ereignissen ist eindeutig, und "
        "diese Community steht für einen sachlichen und respektvollen "
        "Austausch. Bitte überdenken Sie die Nachricht und ihre Wirkung."
    ),
    "el": (
        "Το μήνυμά σας δεν δημοσιεύτηκε επειδή παραβιάζει {category}. Αιτία: "
        "{reason}. Τέτοιες δηλώσεις προκαλούν πραγματική βλάβη: διαδίδουν "
        "παραπληροφόρηση και στοχοποιούν ανθρώπους. Τα ιστορικά γεγονότα "
        "είναι αδιαμφισβήτητα και αυτή η κοινότητα επιμένει σε έναν "
        "τεκμηριωμένο και ευγενικό διάλογο. Σας ζητούμε να ξανασκεφτείτε το "
        "μήνυμα και τον αντίκτυπό του."
    ),
}

_CATEGORIES = {
    "en": {
        "legal": "national law",
        "ethical": "our community guidelines",
        "both": "national law and our community guidelines",
    },
    "de": {
        "legal": "nationales Recht",
        "ethical": "unsere Gemeinschaftsrichtlinien",
        "both": "nationales Recht und unsere Gemeinschaftsrichtlinien",
    },
    "el": {
        "legal": "την εθνική νομοθεσία",
        "ethical": "τους κανόνες της κοινότητας",
        "both": "την εθνική νομοθεσία και τους κανόνες της κοινότητας",
    },
}

_REASONS = {
    "Holocaust Denial": {
        "en": "Holocaust Denial",
        "de": "Leugnung des Holocaust",
        "el": "Άρνηση του Ολοκαυτώματος",
    },
    "hate speech": {
        "en": "hate speech",
        "de": "Hassrede",
        "el": "ρητορική μίσους",
    },
}


def _language_key(tag: str) -> str:
    primary = tag.lower().split("-", 1)[0]
    return primary if primary in _TEMPLATES else "en"


def localized_reason(reason: str, lang: str) -> str:
    return _REASONS.get(reason, {}).get(lang, reason)


class TemplateCounterBackend:
    def generate(self, req: CounterRequest) -> str:
        lang = _language_key(req.language)
        vs = req.violation_summary
        if vs.legal and vs.ethical:
            kind = "both"
        elif vs.legal:
            kind = "legal"
        else:
            kind = "ethical"
        return _TEMPLATES[lang].format(
            category=_CATEGORIES[lang][kind],
            reason=localized_reason(vs.reason, lang),
        )


class RemoteCounterBackend:
    def __init__(self, remote: RemoteBackend):
        self._remote = remote

    def generate(self, req: CounterRequest) -> str:
        text = self._remote.complete(build_counter_prompt(req))
        words = len(text.split())
        if not 50 <= words <= 100:
            log.warning("counter speech outside 50-100 word window (%d words)", words)
        return text


def generate_counter(req: CounterRequest, backend) -> str:
    """Produce counter text; on remote failure callers fall back to the
    deterministic template so some counter text always exists."""
    vs = req.violation_summary
    if not (vs.legal or vs.ethical):
        raise CounterValidationError("counter speech needs a legal or ethical violation")
    try:
        return backend.generate(req)
    except BackendError:
        if isinstance(backend, TemplateCounterBackend):
            raise
        log.warning("remote counter backend failed, using template fallback")
        return TemplateCounterBackend().generate(req)
