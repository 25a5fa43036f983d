"""Demo fixture: four preconfigured rooms, each with one virtual chat
partner of a different age and origin.  Partner profiles live in ordinary
pods, just like real users'."""

from __future__ import annotations

from dataclasses import dataclass

from ..compliance.service import ComplianceService
from ..detection.classify import default_lexicon
from ..pod_store.store import PodService
from .core import ChatServer, ConsentBundle, RoomPolicy

DEMO_PARTNERS = [
    # room, user, age, country, language
    ("berlin-cafe", "mia", 29, "de", "de"),
    ("athens-agora", "nikos", 34, "gr", "el"),
    ("california-lounge", "taylor", 40, "us-ca", "en"),
    ("youth-corner", "anna", 14, "de", "de"),
]

DEMO_ROOM_THRESHOLD = 4
FULL_CONSENT = ("moderation", "minor_check", "counter_speech")


@dataclass
class DemoPlatform:
    pods: PodService
    server: ChatServer
    partner_sessions: dict[str, str]


def create_demo_platform(ethical_threshold: int | None = None) -> DemoPlatform:
    pods = PodService()
    kwargs = {} if ethical_threshold is None else {"ethical_threshold": ethical_threshold}
    server = ChatServer(
        pods,
        default_lexicon(),
        ComplianceService(**kwargs),
        rooms={room: RoomPolicy(DEMO_ROOM_THRESHOLD) for room, *_ in DEMO_PARTNERS},
    )
    partner_sessions = {}
    for room, user, age, country, language in DEMO_PARTNERS:
        credential = f"{user}-secret"
        pod_id = pods.create_pod(
            credential, {"name": user.capitalize(), "age": age, "country": country, "language": language}
        )
        session = server.open_session(user, pod_id, ConsentBundle(credential, FULL_CONSENT))
        server.join_room(session.session_id, room)
        partner_sessions[user] = session.session_id
    return DemoPlatform(pods=pods, server=server, partner_sessions=partner_sessions)
