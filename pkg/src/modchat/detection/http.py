"""HTTP surface: POST /detect and POST /counter."""

from __future__ import annotations

from fastapi import APIRouter, FastAPI, HTTPException
from pydantic import BaseModel

from .classify import BackendError, ValidationError, classify, default_lexicon
from .counter import TemplateCounterBackend, generate_counter
from .prompts import CounterRequest, CounterValidationError, ViolationSummary


class DetectRequest(BaseModel):
    text: str


class CounterRequestBody(BaseModel):
    text: str
    national_origin: str
    language: str
    legal: bool = False
    ethical: bool = False
    reason: str = ""


def build_router(detector=None, counter_backend=None) -> APIRouter:
    detector = detector or default_lexicon()
    counter_backend = counter_backend or TemplateCounterBackend()
    router = APIRouter()

    @router.post("/detect")
    def detect(req: DetectRequest):
        try:
            c = classify(req.text, detector)
        except ValidationError as e:
            raise HTTPException(status_code=422, detail=str(e))
        except BackendError as e:
            raise HTTPException(status_code=502, detail=str(e))
        out = {"label": c.label, "hol": c.hol}
        if c.severity is not None:
            out["severity"] = c.severity
        return out

    @router.post("/counter")
    def counter(req: CounterRequestBody):
        try:
            cr = CounterRequest(
                original_text=req.text,
                national_origin=req.national_origin,
                language=req.language,
                violation_summary=ViolationSummary(req.legal, req.ethical, req.reason),
            )
            return {"counter": generate_counter(cr, counter_backend)}
        except CounterValidationError as e:
            raise HTTPException(status_code=422, detail=str(e))
        except BackendError as e:
            raise HTTPException(status_code=502, detail=str(e))

    return router


def create_app(detector=None, counter_backend=None) -> FastAPI:
    app = FastAPI(title="hate speech detection")
    app.include_router(build_router(detector, counter_backend))
    return app
