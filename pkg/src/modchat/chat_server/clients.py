"""HTTP client adapters so the chat server can talk to pod, detection and
compliance services deployed behind their documented endpoints.  Each
adapter mirrors the in-process object it stands in for."""

from __future__ import annotations

from typing import Optional

import httpx

from ..compliance.service import ComplianceRequest, Verdict, parse_verdict
from ..detection.classify import BackendError, Classification
from ..detection.prompts import CounterRequest
from ..pod_store.store import DENIED
from .core import PodUnavailableError


class PodHTTPClient:
    def __init__(self, base_url: str, timeout: float = 10.0, transport=None):
        self._client = httpx.Client(base_url=base_url, timeout=timeout, transport=transport)

    def grant_consent(self, pod_id, credential, requester, purpose, attributes) -> str:
        try:
            r = self._client.post(
                f"/pods/{pod_id}/grants",
                json={
                    "credential": credential,
                    "requester": requester,
                    "purpose": purpose,
                    "attributes": list(attributes),
                },
            )
            r.raise_for_status()
            return r.json()["grant_id"]
        except httpx.TransportError as e:
            raise PodUnavailableError(str(e)) from e

    def revoke_consent(self, pod_id, credential, grant_id) -> None:
        try:
            r = self._client.delete(
                f"/pods/{pod_id}/grants/{grant_id}",
                headers={"X-Owner-Credential": credential},
            )
            r.raise_for_status()
        except httpx.TransportError as e:
            raise PodUnavailableError(str(e)) from e

    def read_attribute(self, pod_id, requester, purpose, predicate):
        try:
            r = self._client.get(
                f"/pods/{pod_id}/attr/{predicate}",
                params={"requester": requester, "purpose": purpose},
            )
            r.raise_for_status()
        except httpx.TransportError as e:
            raise PodUnavailableError(str(e)) from e
        body = r.json()
        return DENIED if body.get("denied") else body["value"]

    def is_minor(self, pod_id, requester, purpose):
        try:
            r = self._client.get(
                f"/pods/{pod_id}/minor", params={"requester": requester, "purpose": purpose}
            )
            r.raise_for_status()
        except httpx.TransportError as e:
            raise PodUnavailableError(str(e)) from e
        body = r.json()
        return DENIED if body.get("denied") else body["minor"]


class DetectionHTTPClient:
    def __init__(self, base_url: str, timeout: float = 10.0, transport=None):
        self._client = httpx.Client(base_url=base_url, timeout=timeout, transport=transport)

    def classify(self, text: str) -> Classification:
        try:
            r = self._client.post("/detect", json={"text": text})
            r.raise_for_status()
            body = r.json()
            return Classification(body["label"], body.get("severity"), body["hol"])
        except (httpx.HTTPError, KeyError, ValueError) as e:
            raise BackendError(f"detection service error: {e}") from e

    def generate(self, req: CounterRequest) -> str:
        try:
            r = self._client.post(
                "/counter",
                json={
                    "text": req.original_text,
                    "national_origin": req.national_origin,
                    "language": req.language,
                    "legal": req.violation_summary.legal,
                    "ethical": req.violation_summary.ethical,
                    "reason": req.violation_summary.reason,
                },
            )
            r.raise_for_status()
            return r.json()["counter"]
        except (httpx.HTTPError, KeyError, ValueError) as e:
            raise BackendError(f"counter service error: {e}") from e


class ComplianceHTTPClient:
    def __init__(self, base_url: str, timeout: float = 10.0, transport=None):
        self._client = httpx.Client(base_url=base_url, timeout=timeout, transport=transport)

    def check(self, req: ComplianceRequest) -> Verdict:
        r = self._client.post(
            "/compliance/check",
            json={
                "user_location": req.user_location,
                "user_age": req.user_age,
                "chat_context": req.chat_context,
                "hate_speech_score": req.hate_speech_score,
                "hol": req.hol,
            },
        )
        r.raise_for_status()
        return parse_verdict(r.content)
