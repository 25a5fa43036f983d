"""HTTP + WebSocket surface of the chat platform.

Client frames: join {room}, leave {room}, post {room, text}.
Server frames: message, suppressed, held, presence — JSON documents with
a `type` field, one per websocket message.
"""

from __future__ import annotations

import asyncio
import json

from fastapi import APIRouter, FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from .core import ChatError, ChatServer, ConsentBundle, SessionRefused


class OpenSessionRequest(BaseModel):
    user_id: str
    pod_id: str
    credential: str
    purposes: list[str]


def build_router(server: ChatServer) -> APIRouter:
    router = APIRouter()

    @router.post("/sessions")
    def open_session(req: OpenSessionRequest):
        try:
            session = server.open_session(
                req.user_id, req.pod_id, ConsentBundle(req.credential, tuple(req.purposes))
            )
        except SessionRefused as e:
            raise HTTPException(status_code=403, detail={"code": e.code, "message": str(e)})
        return {"session_id": session.session_id}

    @router.delete("/sessions/{session_id}")
    def close_session(session_id: str):
        return server.close_session(session_id)

    @router.get("/rooms")
    def rooms():
        return {
            "rooms": [
                {
                    "room_id": room.room_id,
                    "minor_severity_threshold": room.policy.minor_severity_threshold,
                }
                for room in server.rooms.values()
            ]
        }

    @router.get("/rooms/{room_id}/presence")
    def presence(room_id: str):
        try:
            return server.room_presence(room_id)
        except ChatError as e:
            raise HTTPException(status_code=404, detail=str(e))

    @router.websocket("/ws/{session_id}")
    async def socket(ws: WebSocket, session_id: str):
        await ws.accept()
        if session_id not in server.sessions:
            await ws.send_text(json.dumps({"type": "error", "message": "unknown session"}))
            await ws.close()
            return
        loop = asyncio.get_running_loop()
        outbox: asyncio.Queue = asyncio.Queue()

        def enqueue(frame: dict):
            # core callbacks may fire from other threads
            loop.call_soon_threadsafe(outbox.put_nowait, frame)

        server.subscribe(session_id, enqueue)

        async def sender():
            while True:
                frame = await outbox.get()
                await ws.send_text(json.dumps(frame, ensure_ascii=False))

        sender_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    frame = json.loads(raw)
                    kind = frame.get("type")
                    if kind == "join":
                        server.join_room(session_id, frame["room"])
                    elif kind == "leave":
                        server.leave_room(session_id, frame["room"])
                    elif kind == "post":
                        server.post_message(session_id, frame["room"], frame["text"])
                    else:
                        enqueue({"type": "error", "message": f"unknown frame type {kind!r}"})
                except (ChatError, KeyError, json.JSONDecodeError) as e:
                    enqueue({"type": "error", "message": str(e)})
        except WebSocketDisconnect:
            pass
        finally:
            sender_task.cancel()
            server.unsubscribe(session_id)

    return router


def create_app(server: ChatServer) -> FastAPI:
    app = FastAPI(title="moderated chat")
    app.include_router(build_router(server))
    return app
