"""Consent-governed personal datastores.

Each pod holds exactly four profile triples (name, age, country, language)
plus purpose-bound consent grants.  Reads are default-deny: they succeed
only under an active grant whose purpose matches the request and whose
attribute set covers the predicate.  Every read, granted or denied,
leaves one audit event.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Union

PROFILE_NS = "profile"
PROFILE_PREDICATES = (
    "profile:name",
    "profile:age",
    "profile:country",
    "profile:language",
)
PURPOSES = ("moderation", "minor_check", "counter_speech", "portability")

# country -> (inclusive upper bound for "minor").  Germany counts age 14
# and younger as a child; everywhere else defaults to under 18.
MAJORITY_THRESHOLDS = {"de": 14}
DEFAULT_MAJORITY_THRESHOLD = 17

_COUNTRY_RE = re.compile(r"^[a-z]{2}(-[a-z]{2})?$")


class PodError(Exception):
    """Unknown pod or grant."""


class PodValidationError(Exception):
    pass


class AuthenticationError(Exception):
    pass


class _DeniedType:
    """Missing or revoked consent is a normal value, not an exception."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Denied"

    def __bool__(self):
        return False


DENIED = _DeniedType()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def _hash_credential(credential: str) -> str:
    return hashlib.sha256(credential.encode()).hexdigest()


def short_predicate(name: str) -> str:
    """Accept both 'age' and 'profile:age'."""
    return name.split(":", 1)[-1]


def full_predicate(name: str) -> str:
    name = short_predicate(name)
    full = f"{PROFILE_NS}:{name}"
    if full not in PROFILE_PREDICATES:
        raise PodValidationError(f"unknown profile predicate {name!r}")
    return full


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: Union[str, int]


@dataclass
class ConsentGrant:
    grant_id: str
    requester: str
    purpose: str
    attributes: frozenset[str]  # full predicate names
    issued_at: str
    revoked_at: Optional[str] = None

    @property
    def active(self) -> bool:
        return self.revoked_at is None


@dataclass(frozen=True)
class AuditEvent:
    outcome: str  # "read" or "denied"
    requester: str
    purpose: str
    predicate: str
    at: str


@dataclass
class Pod:
    pod_id: str
    credential_hash: str
    triples: list[Triple] = field(default_factory=list)
    grants: list[ConsentGrant] = field(default_factory=list)
    audit_log: list[AuditEvent] = field(default_factory=list)


def _validate_profile(profile: dict) -> dict:
    missing = {"name", "age", "country", "language"} - set(profile)
    if missing:
        raise PodValidationError(f"profile is missing fields: {sorted(missing)}")
    age = profile["age"]
    if not isinstance(age, int) or isinstance(age, bool) or not 0 <= age <= 150:
        raise PodValidationError(f"age must be an integer in [0, 150], got {age!r}")
    country = profile["country"]
    if not isinstance(country, str) or not _COUNTRY_RE.match(country):
        raise PodValidationError(
            f"country must be a lowercase ISO-3166-1 alpha-2 code "
            f"(optionally with a region suffix, e.g. us-ca), got {country!r}"
        )
    if not isinstance(profile["name"], str) or not profile["name"]:
        raise PodValidationError("name must be a non-empty string")
    if not isinstance(profile["language"], str) or not profile["language"]:
        raise PodValidationError("language must be a non-empty string")
    return profile


def is_minor_by_table(age: int, country: str) -> bool:
    primary = country.split("-", 1)[0]
    threshold = MAJORITY_THRESHOLDS.get(primary, DEFAULT_MAJORITY_THRESHOLD)
    return age <= threshold


class PodService:
    """In-memory pod provider.  Mutations are serialized per service via a
    lock; a revoke acknowledged before a read is issued is seen by it."""

    def __init__(self):
        self._pods: dict[str, Pod] = {}
        self._lock = threading.RLock()

    # -- lifecycle -------------------------------------------------------

    def create_pod(self, owner_credential: str, profile: dict) -> str:
        profile = _validate_profile(profile)
        with self._lock:
            pod_id = f"pod-{uuid.uuid4().hex[:12]}"
            pod = Pod(pod_id=pod_id, credential_hash=_hash_credential(owner_credential))
            for key in ("name", "age", "country", "language"):
                pod.triples.append(Triple("me", f"{PROFILE_NS}:{key}", profile[key]))
            self._pods[pod_id] = pod
            return pod_id

    def _pod(self, pod_id: str) -> Pod:
        pod = self._pods.get(pod_id)
        if pod is None:
            raise PodError(f"unknown pod {pod_id!r}")
        return pod

    def _authenticated(self, pod_id: str, credential: str) -> Pod:
        pod = self._pod(pod_id)
        if pod.credential_hash != _hash_credential(credential):
            raise AuthenticationError(f"bad credential for pod {pod_id!r}")
        return pod

    # -- consent ---------------------------------------------------------

    def grant_consent(
        self,
        pod_id: str,
        owner_credential: str,
        requester: str,
        purpose: str,
        attributes,
    ) -> str:
        if purpose not in PURPOSES:
            raise PodValidationError(f"unknown purpose {purpose!r}")
        attrs = frozenset(full_predicate(a) for a in attributes)
        with self._lock:
            pod = self._authenticated(pod_id, owner_credential)
            for g in pod.grants:
                if g.active and g.requester == requester and g.purpose == purpose and g.attributes == attrs:
                    return g.grant_id
            grant = ConsentGrant(
                grant_id=f"grant-{uuid.uuid4().hex[:12]}",
                requester=requester,
                purpose=purpose,
                attributes=attrs,
                issued_at=_now(),
            )
            pod.grants.append(grant)
            return grant.grant_id

    def revoke_consent(self, pod_id: str, owner_credential: str, grant_id: str) -> None:
        with self._lock:
            pod = self._authenticated(pod_id, owner_credential)
            for g in pod.grants:
                if g.grant_id == grant_id:
                    if g.revoked_at is None:
                        g.revoked_at = _now()
                    return
            raise PodError(f"unknown grant {grant_id!r}")

    def _covered(self, pod: Pod, requester: str, purpose: str, needed: frozenset[str]) -> bool:
        """True iff some active grant for this requester and purpose covers
        all needed attributes."""
        return any(
            g.active and g.requester == requester and g.purpose == purpose and needed <= g.attributes
            for g in pod.grants
        )

    # -- reads -----------------------------------------------------------

    def read_attribute(self, pod_id: str, requester: str, purpose: str, predicate: str):
        predicate = full_predicate(predicate)
        with self._lock:
            pod = self._pod(pod_id)
            if not self._covered(pod, requester, purpose, frozenset({predicate})):
                pod.audit_log.append(AuditEvent("denied", requester, purpose, predicate, _now()))
                return DENIED
            pod.audit_log.append(AuditEvent("read", requester, purpose, predicate, _now()))
            for t in pod.triples:
                if t.predicate == predicate:
                    return t.object
            return DENIED  # no such triple; profile pods always have all four

    def is_minor(self, pod_id: str, requester: str, purpose: str):
        """Data-minimized age check: one boolean out, never the raw age or
        country."""
        needed = frozenset({"profile:age", "profile:country"})
        with self._lock:
            pod = self._pod(pod_id)
            if purpose != "minor_check" or not self._covered(pod, requester, purpose, needed):
                pod.audit_log.append(AuditEvent("denied", requester, purpose, "minor", _now()))
                return DENIED
            pod.audit_log.append(AuditEvent("read", requester, purpose, "minor", _now()))
            values = {t.predicate: t.object for t in pod.triples}
            return is_minor_by_table(values["profile:age"], values["profile:country"])

    # -- portability -----------------------------------------------------

    def export_pod(self, pod_id: str, owner_credential: str) -> str:
        with self._lock:
            pod = self._authenticated(pod_id, owner_credential)
            lines = []
            for t in pod.triples:
                lines.append(f"T {t.subject} {t.predicate} {_encode_object(t.object)}")
            for g in pod.grants:
                attrs = ",".join(sorted(short_predicate(a) for a in g.attributes))
                revoked = g.revoked_at or "-"
                lines.append(
                    f"G {g.grant_id} {g.requester} {g.purpose} {attrs} {g.issued_at} {revoked}"
                )
            return "\n".join(lines) + "\n"

    def import_pod(self, document: str, owner_credential: str) -> str:
        """Rebuild a pod from an export document; inverse of export_pod up
        to the pod id."""
        triples: list[Triple] = []
        grants: list[ConsentGrant] = []
        for lineno, line in enumerate(document.split("\n"), start=1):
            if not line.strip():
                continue
            kind, rest = line[0], line[2:]
            if kind == "T":
                subject, predicate, obj = rest.split(" ", 2)
                triples.append(Triple(subject, predicate, _decode_object(obj)))
            elif kind == "G":
                grant_id, requester, purpose, attrs, issued, revoked = rest.split(" ")
                grants.append(
                    ConsentGrant(
                        grant_id=grant_id,
                        requester=requester,
                        purpose=purpose,
                        attributes=frozenset(full_predicate(a) for a in attrs.split(",") if a),
                        issued_at=issued,
                        revoked_at=None if revoked == "-" else revoked,
                    )
                )
            else:
                raise PodValidationError(f"bad export line {lineno}: {line!r}")
        with self._lock:
            pod_id = f"pod-{uuid.uuid4().hex[:12]}"
            pod = Pod(pod_id=pod_id, credential_hash=_hash_credential(owner_credential))
            pod.triples = triples
            pod.grants = grants
            self._pods[pod_id] = pod
            return pod_id

    # test/introspection helpers

    def audit_log(self, pod_id: str) -> list[AuditEvent]:
        return list(self._pod(pod_id).audit_log)

    def grants(self, pod_id: str) -> list[ConsentGrant]:
        return list(self._pod(pod_id).grants)

    def triples(self, pod_id: str) -> list[Triple]:
        return list(self._pod(pod_id).triples)


def _encode_object(obj: Union[str, int]) -> str:
    if isinstance(obj, int):
        return str(obj)
    # JSON string escaping keeps the value on one physical line
    return json.dumps(obj, ensure_ascii=False)


def _decode_object(text: str) -> Union[str, int]:
    if text.startswith('"'):
        return json.loads(text)
    return int(text)
