"""compliance-check: run a single verdict from the command line."""

from __future__ import annotations

import argparse
import sys

from .service import (
    ComplianceRequest,
    ComplianceService,
    DEFAULT_ETHICAL_THRESHOLD,
    RequestValidationError,
    RulebaseConfigError,
    render,
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="compliance-check")
    p.add_argument("--location", required=True, help="user location code, e.g. gr or us-ca")
    p.add_argument("--age", required=True, type=int)
    p.add_argument("--context", required=True, choices=["adults_only", "minors_present"])
    p.add_argument("--score", required=True, type=int, help="hate speech score 0-5")
    p.add_argument("--hol", required=True, choices=["hol_denial", "none"])
    p.add_argument("--rulebase-dir", default=None, help="override the shipped rule files")
    p.add_argument(
        "--ethical-threshold",
        type=int,
        default=DEFAULT_ETHICAL_THRESHOLD,
        help="score at which content violates the guidelines",
    )
    p.add_argument("--pretty", action="store_true", help="indented output instead of wire form")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        service = ComplianceService(args.rulebase_dir, args.ethical_threshold)
        req = ComplianceRequest(
            user_location=args.location,
            user_age=args.age,
            chat_context=args.context,
            hate_speech_score=args.score,
            hol=args.hol,
        )
    except (RequestValidationError, RulebaseConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(render(service.check(req), pretty=args.pretty).decode("utf-8") + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
