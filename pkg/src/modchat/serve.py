"""Run the whole platform in one process: pod store, detection,
compliance and chat share a FastAPI app, so the browser client needs a
single base URL."""

from __future__ import annotations

import argparse
from pathlib import Path

from fastapi import FastAPI
from fastapi.staticfiles import StaticFiles

from .chat_server import http as chat_http
from .chat_server.demo import create_demo_platform
from .compliance import http as compliance_http
from .compliance.service import ComplianceService
from .detection import http as detection_http
from .pod_store import http as pod_http


def create_combined_app(static_dir: str | None = None) -> FastAPI:
    demo = create_demo_platform()
    app = FastAPI(title="moderated chat platform")
    app.include_router(pod_http.build_router(demo.pods))
    app.include_router(detection_http.build_router())
    app.include_router(compliance_http.build_router(ComplianceService()))
    app.include_router(chat_http.build_router(demo.server))
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def main(argv=None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="modchat-serve")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=7000)
    parser.add_argument(
        "--static-dir",
        default=None,
        help="directory with the built web client, served at /",
    )
    args = parser.parse_args(argv)
    uvicorn.run(create_combined_app(args.static_dir), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
