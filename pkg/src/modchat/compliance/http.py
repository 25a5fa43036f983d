"""HTTP surface: POST /compliance/check with the five flat parameters."""

from __future__ import annotations

from fastapi import APIRouter, FastAPI, HTTPException
from fastapi.responses import Response
from pydantic import BaseModel

from .service import (
    ComplianceRequest,
    ComplianceService,
    RequestValidationError,
    render,
)


class CheckBody(BaseModel):
    user_location: str
    user_age: int
    chat_context: str
    hate_speech_score: int
    hol: str


def build_router(service: ComplianceService) -> APIRouter:
    router = APIRouter()

    @router.post("/compliance/check")
    def check(body: CheckBody):
        try:
            req = ComplianceRequest(**body.model_dump())
        except RequestValidationError as e:
            raise HTTPException(status_code=422, detail=str(e))
        return Response(content=render(service.check(req)), media_type="application/json")

    return router


def create_app(service: ComplianceService | None = None) -> FastAPI:
    app = FastAPI(title="compliance checker")
    app.include_router(build_router(service or ComplianceService()))
    return app
