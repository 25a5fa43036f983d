"""The chat platform: rooms, consent-coupled sessions and the moderation
pipeline.

Per message the pipeline runs in a fixed order: pod read under purpose
`moderation`, classification, compliance check, and only then (for
suppressions) the pod reads under purpose `counter_speech`.  Profile
attributes live in the session cache for the duration of the session only
and are erased on close, when all grants are revoked back at the pod.

Rooms are sequential domains: one lock per room orders all membership
changes and post decisions, which is the order the minor-safety property
is defined over.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from ..compliance.service import ComplianceRequest, Verdict
from ..detection.classify import BackendError, Classification, NO_HATE
from ..detection.counter import TemplateCounterBackend
from ..detection.prompts import CounterRequest, ViolationSummary
from ..pod_store.store import DENIED

PLATFORM_REQUESTER = "platform"
REQUIRED_PURPOSES = frozenset({"moderation", "minor_check"})
GRANT_ATTRIBUTES = {
    "moderation": ("age", "country"),
    "minor_check": ("age", "country"),
    "counter_speech": ("language", "country"),
}

# representative ages for the compliance request; the raw age never
# leaves the pod, only the minimized minor flag does
MINOR_AGE_BRACKET = 14
ADULT_AGE_BRACKET = 30

DEFAULT_MINOR_SEVERITY_THRESHOLD = 4


class ChatError(Exception):
    pass


class SessionRefused(ChatError):
    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(message or code)


class PodUnavailableError(Exception):
    """The pod service could not be reached (transport failure)."""


@dataclass(frozen=True)
class Deliver:
    pass


@dataclass(frozen=True)
class Suppress:
    legal: bool
    ethical: bool
    reason: str
    counter: str

    def __post_init__(self):
        if not (self.legal or self.ethical):
            raise ValueError("a suppression carries a legal or ethical flag")


@dataclass(frozen=True)
class Held:
    cause: str


MessageDecision = Union[Deliver, Suppress, Held]


@dataclass(frozen=True)
class ConsentBundle:
    credential: str
    purposes: tuple[str, ...]


@dataclass
class RoomPolicy:
    minor_severity_threshold: int = DEFAULT_MINOR_SEVERITY_THRESHOLD


@dataclass(frozen=True)
class MessageRecord:
    author: str
    text: str
    ts: float


@dataclass
class SuppressionRecord:
    room_id: str
    original_text: str
    decision: Suppress
    ref: str


@dataclass
class Session:
    session_id: str
    user_id: str
    pod_id: str
    credential: str
    grant_ids: dict[str, str]
    minor: Optional[bool] = None
    language: Optional[str] = None
    country: Optional[str] = None
    open: bool = True
    suppressions: list[SuppressionRecord] = field(default_factory=list)


@dataclass
class Room:
    room_id: str
    policy: RoomPolicy
    members: list[str] = field(default_factory=list)  # session ids, join order
    transcript: list[MessageRecord] = field(default_factory=list)
    lock: threading.RLock = field(default_factory=threading.RLock)


class ChatServer:
    def __init__(
        self,
        pods,
        detector,
        compliance,
        counter_backend=None,
        rooms: Optional[dict[str, RoomPolicy]] = None,
    ):
        self.pods = pods
        self.detector = detector
        self.compliance = compliance
        self.counter_backend = counter_backend or TemplateCounterBackend()
        self.rooms: dict[str, Room] = {
            rid: Room(rid, policy) for rid, policy in (rooms or {"lobby": RoomPolicy()}).items()
        }
        self.sessions: dict[str, Session] = {}
        self.pending_revocations: list[tuple[str, str, str]] = []
        self._registry_lock = threading.RLock()
        self._subscribers: dict[str, Callable[[dict], None]] = {}

    # -- frame delivery (websocket layer subscribes here) ----------------

    def subscribe(self, session_id: str, callback: Callable[[dict], None]):
        self._subscribers[session_id] = callback

    def unsubscribe(self, session_id: str):
        self._subscribers.pop(session_id, None)

    def _send(self, session_id: str, frame: dict):
        cb = self._subscribers.get(session_id)
        if cb is not None:
            cb(frame)

    def _broadcast(self, room: Room, frame: dict):
        for sid in room.members:
            self._send(sid, frame)

    # -- session lifecycle -------------------------------------------------

    def open_session(self, user_id: str, pod_id: str, consent: ConsentBundle) -> Session:
        purposes = set(consent.purposes)
        if not REQUIRED_PURPOSES <= purposes:
            raise SessionRefused(
                "consent_missing",
                "joining requires consent for moderation and minor_check",
            )
        grant_ids: dict[str, str] = {}
        for purpose in consent.purposes:
            attrs = GRANT_ATTRIBUTES.get(purpose)
            if attrs is None:
                continue
            grant_ids[purpose] = self.pods.grant_consent(
                pod_id, consent.credential, PLATFORM_REQUESTER, purpose, attrs
            )
        minor = self.pods.is_minor(pod_id, PLATFORM_REQUESTER, "minor_check")
        if minor is DENIED:
            for purpose, gid in grant_ids.items():
                self.pods.revoke_consent(pod_id, consent.credential, gid)
            raise SessionRefused("consent_missing", "pod denied the minor check")
        session = Session(
            session_id=f"session-{uuid.uuid4().hex[:12]}",
            user_id=user_id,
            pod_id=pod_id,
            credential=consent.credential,
            grant_ids=grant_ids,
            minor=bool(minor),
        )
        with self._registry_lock:
            self.sessions[session.session_id] = session
        return session

    def close_session(self, session_id: str) -> dict:
        with self._registry_lock:
            session = self.sessions.get(session_id)
            if session is None or not session.open:
                return {"closed": True}
            session.open = False
        for room in list(self.rooms.values()):
            if session_id in room.members:
                self.leave_room(session_id, room.room_id, _force=True)
        for purpose, gid in session.grant_ids.items():
            try:
                self.pods.revoke_consent(session.pod_id, session.credential, gid)
            except PodUnavailableError:
                self.pending_revocations.append((session.pod_id, session.credential, gid))
        # session-only retention: nothing of the profile survives the close
        session.minor = None
        session.language = None
        session.country = None
        session.suppressions.clear()
        return {"closed": True}

    def retry_pending_revocations(self):
        remaining = []
        for pod_id, credential, gid in self.pending_revocations:
            try:
                self.pods.revoke_consent(pod_id, credential, gid)
            except PodUnavailableError:
                remaining.append((pod_id, credential, gid))
        self.pending_revocations = remaining

    def _session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None or not session.open:
            raise ChatError(f"unknown or closed session {session_id!r}")
        return session

    def _room(self, room_id: str) -> Room:
        room = self.rooms.get(room_id)
        if room is None:
            raise ChatError(f"unknown room {room_id!r}")
        return room

    # -- rooms -------------------------------------------------------------

    def join_room(self, session_id: str, room_id: str):
        session = self._session(session_id)
        if not session.grant_ids:
            raise SessionRefused("consent_missing", "a session without grants cannot join")
        room = self._room(room_id)
        with room.lock:
            if session_id not in room.members:
                room.members.append(session_id)
            self._broadcast(room, self._presence_frame(room))

    def leave_room(self, session_id: str, room_id: str, _force: bool = False):
        room = self._room(room_id)
        with room.lock:
            if session_id in room.members:
                room.members.remove(session_id)
            self._broadcast(room, self._presence_frame(room))
            self._send(session_id, self._presence_frame(room))

    def _minors_present(self, room: Room) -> bool:
        return any(
            bool(self.sessions[sid].minor)
            for sid in room.members
            if sid in self.sessions and self.sessions[sid].open
        )

    def room_presence(self, room_id: str) -> dict:
        room = self._room(room_id)
        with room.lock:
            return {
                "members": [
                    self.sessions[sid].user_id for sid in room.members if sid in self.sessions
                ],
                "minors_present": self._minors_present(room),
            }

    def _presence_frame(self, room: Room) -> dict:
        return {
            "type": "presence",
            "room": room.room_id,
            "minors_present": self._minors_present(room),
        }

    # -- the moderation pipeline -------------------------------------------

    def post_message(self, session_id: str, room_id: str, text: str) -> MessageDecision:
        session = self._session(session_id)
        room = self._room(room_id)
        with room.lock:
            if session_id not in room.members:
                raise ChatError("session is not a member of this room")
            return self._moderate(session, room, text)

    def _moderate(self, session: Session, room: Room, text: str) -> MessageDecision:
        # (a) author attributes from the pod, purpose-bound to moderation
        try:
            country = self.pods.read_attribute(
                session.pod_id, PLATFORM_REQUESTER, "moderation", "country"
            )
        except PodUnavailableError:
            return self._held(session, room, "pod_unavailable")
        if country is DENIED:
            return self._held(session, room, "consent_required")
        session.country = country

        # (b) classification; a backend failure holds the message (fail closed)
        try:
            classification = self.detector.classify(text)
        except BackendError:
            return self._held(session, room, "classifier_error")

        minors = self._minors_present(room)
        # (c) clean content in an adults-only room skips the compliance hop
        if classification.label == NO_HATE and not minors:
            return self._deliver(session, room, text)

        # (d) legal and ethical compliance check
        severity = classification.severity or 0
        verdict = self.compliance.check(
            ComplianceRequest(
                user_location=country,
                user_age=MINOR_AGE_BRACKET if session.minor else ADULT_AGE_BRACKET,
                chat_context="minors_present" if minors else "adults_only",
                hate_speech_score=severity,
                hol=classification.hol,
            )
        )

        # (e) decide; the minor gate suppresses even without a verdict
        legal = verdict.legal is not None
        ethical = verdict.ethical is not None
        minor_gate = minors and severity >= room.policy.minor_severity_threshold
        if not (legal or ethical or minor_gate):
            return self._deliver(session, room, text)

        if legal:
            reason = verdict.legal.reason
        elif ethical:
            reason = verdict.ethical.reason
        else:
            reason = "high-severity content while minors are present"

        # (f) personalized counter speech, consent permitting
        counter = self._counter_text(session, text, legal, ethical or minor_gate, reason)
        decision = Suppress(legal=legal, ethical=ethical or minor_gate, reason=reason, counter=counter)
        return self._suppress(session, room, text, decision)

    def _counter_text(self, session: Session, text: str, legal: bool, ethical: bool, reason: str) -> str:
        try:
            language = self.pods.read_attribute(
                session.pod_id, PLATFORM_REQUESTER, "counter_speech", "language"
            )
            origin = self.pods.read_attribute(
                session.pod_id, PLATFORM_REQUESTER, "counter_speech", "country"
            )
        except PodUnavailableError:
            return ""
        if language is DENIED or origin is DENIED:
            return ""  # degraded mode: category label only
        session.language = language
        req = CounterRequest(
            original_text=text,
            national_origin=origin,
            language=language,
            violation_summary=ViolationSummary(legal=legal, ethical=ethical, reason=reason),
        )
        try:
            return self.counter_backend.generate(req)
        except BackendError:
            return TemplateCounterBackend().generate(req)

    # (g) outcomes

    def _deliver(self, session: Session, room: Room, text: str) -> Deliver:
        record = MessageRecord(author=session.user_id, text=text, ts=time.time())
        room.transcript.append(record)
        self._broadcast(
            room,
            {
                "type": "message",
                "room": room.room_id,
                "author": record.author,
                "text": record.text,
                "ts": record.ts,
            },
        )
        return Deliver()

    def _suppress(self, session: Session, room: Room, text: str, decision: Suppress) -> Suppress:
        ref = f"sup-{uuid.uuid4().hex[:8]}"
        session.suppressions.append(
            SuppressionRecord(room_id=room.room_id, original_text=text, decision=decision, ref=ref)
        )
        self._send(
            session.session_id,
            {
                "type": "suppressed",
                "room": room.room_id,
                "legal": decision.legal,
                "ethical": decision.ethical,
                "reason": decision.reason,
                "counter": decision.counter,
                "original_ref": ref,
            },
        )
        return decision

    def _held(self, session: Session, room: Room, cause: str) -> Held:
        self._send(
            session.session_id,
            {"type": "held", "room": room.room_id, "cause": cause},
        )
        return Held(cause=cause)
