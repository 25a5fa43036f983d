"""HTTP surface of the pod service."""

from __future__ import annotations

from fastapi import APIRouter, FastAPI, Header, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .store import (
    DENIED,
    AuthenticationError,
    PodError,
    PodService,
    PodValidationError,
)


class CreatePodRequest(BaseModel):
    credential: str
    profile: dict


class GrantRequest(BaseModel):
    credential: str
    requester: str
    purpose: str
    attributes: list[str]


def build_router(service: PodService) -> APIRouter:
    router = APIRouter()

    def guard(fn):
        try:
            return fn()
        except PodError as e:
            raise HTTPException(status_code=404, detail=str(e))
        except AuthenticationError as e:
            raise HTTPException(status_code=401, detail=str(e))
        except PodValidationError as e:
            raise HTTPException(status_code=422, detail=str(e))

    @router.post("/pods")
    def create_pod(req: CreatePodRequest):
        pod_id = guard(lambda: service.create_pod(req.credential, req.profile))
        return {"pod_id": pod_id}

    @router.post("/pods/{pod_id}/grants")
    def grant(pod_id: str, req: GrantRequest):
        grant_id = guard(
            lambda: service.grant_consent(
                pod_id, req.credential, req.requester, req.purpose, req.attributes
            )
        )
        return {"grant_id": grant_id}

    @router.delete("/pods/{pod_id}/grants/{grant_id}")
    def revoke(pod_id: str, grant_id: str, x_owner_credential: str = Header(...)):
        guard(lambda: service.revoke_consent(pod_id, x_owner_credential, grant_id))
        return {"revoked": True}

    @router.get("/pods/{pod_id}/attr/{predicate}")
    def read_attribute(pod_id: str, predicate: str, requester: str, purpose: str):
        value = guard(lambda: service.read_attribute(pod_id, requester, purpose, predicate))
        if value is DENIED:
            return {"denied": True}
        return {"value": value}

    @router.get("/pods/{pod_id}/minor")
    def minor(pod_id: str, requester: str, purpose: str):
        value = guard(lambda: service.is_minor(pod_id, requester, purpose))
        if value is DENIED:
            return {"denied": True}
        # data minimization: the payload is exactly one boolean
        return {"minor": value}

    @router.get("/pods/{pod_id}/export", response_class=PlainTextResponse)
    def export(pod_id: str, x_owner_credential: str = Header(...)):
        return guard(lambda: service.export_pod(pod_id, x_owner_credential))

    return router


def create_app(service: PodService | None = None) -> FastAPI:
    app = FastAPI(title="pod store")
    app.include_router(build_router(service or PodService()))
    return app
