from .core import (
    ChatError,
    ChatServer,
    ConsentBundle,
    Deliver,
    Held,
    MessageDecision,
    MessageRecord,
    PodUnavailableError,
    Room,
    RoomPolicy,
    Session,
    SessionRefused,
    Suppress,
)
from .config import ChatConfig, build_server, load_config
from .demo import DemoPlatform, create_demo_platform
from .http import build_router, create_app

__all__ = [
    "ChatConfig",
    "ChatError",
    "ChatServer",
    "ConsentBundle",
    "Deliver",
    "DemoPlatform",
    "Held",
    "MessageDecision",
    "MessageRecord",
    "PodUnavailableError",
    "Room",
    "RoomPolicy",
    "Session",
    "SessionRefused",
    "Suppress",
    "build_router",
    "build_server",
    "create_app",
    "create_demo_platform",
    "load_config",
]
