"""Thin command-line client for the analysis service.

All algebra lives behind the service layer; the CLI reads the machine
file, builds the request, dispatches it (in-process by default, over
HTTP when --server is given), and renders the response.

Exit codes: 0 ok, 1 parse/input error, 2 structural precondition unmet,
3 closure budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import render, service
from .closure_engine import DEFAULT_CLOSURE_LIMIT
from .errors import MachineParseError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_STRUCTURAL = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

_KIND_TO_EXIT = {
    "parse": EXIT_INPUT,
    "transport": EXIT_INPUT,
    "not_simple": EXIT_STRUCTURAL,
    "budget": EXIT_BUDGET,
    "internal": EXIT_INTERNAL,
}

_RUNNERS = {
    "analyze": (service.run_analyze, render.render_analysis),
    "decompose": (service.run_decompose, render.render_analysis),
    "classify": (service.run_classify, render.render_classify),
    "verify": (service.run_verify, render.render_verify),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crsm",
        description="Analyze and decompose finite state machines via their sequential closure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="machine description file")
    common.add_argument("--json", action="store_true", help="emit the structured report")
    common.add_argument(
        "--max-closure",
        type=int,
        default=DEFAULT_CLOSURE_LIMIT,
        metavar="N",
        help="bound on closure enumeration (default %(default)s)",
    )
    common.add_argument(
        "--server",
        metavar="URL",
        help="send the request to a running crsm service instead of computing locally",
    )

    sub.add_parser("analyze", parents=[common], help="closure and structure report")
    sub.add_parser("decompose", parents=[common], help="full pipeline; fails if not simple")
    sub.add_parser("classify", parents=[common], help="basic-type label")
    sub.add_parser("verify", parents=[common], help="decompose and check recomposition")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _request_payload(args) -> dict:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MachineParseError(f"cannot read {args.file}: {exc.strerror or exc}")
    fmt = "json" if path.suffix.lower() == ".json" else "text"
    return {"machine_text": text, "machine_format": fmt, "max_closure": args.max_closure}


def _dispatch_local(command: str, payload: dict) -> dict:
    runner, _ = _RUNNERS[command]
    try:
        result = runner(service.AnalyzeRequest(**payload))
    except service.PIPELINE_ERRORS as exc:
        _, info = service.error_info(exc)
        return {"error": info.model_dump()}
    return result.model_dump(mode="json")


def _dispatch_remote(command: str, payload: dict, server: str) -> dict:
    import httpx

    url = server.rstrip("/") + "/" + command
    try:
        response = httpx.post(url, json=payload, timeout=300.0)
    except httpx.HTTPError as exc:
        return {"error": {"kind": "transport", "message": f"{url}: {exc}"}}
    if response.status_code == 422:
        return {"error": {"kind": "parse", "message": response.text}}
    try:
        return response.json()
    except ValueError:
        return {"error": {"kind": "internal", "message": response.text}}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run(service.app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        payload = _request_payload(args)
    except MachineParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.server:
        body = _dispatch_remote(args.command, payload, args.server)
    else:
        body = _dispatch_local(args.command, payload)

    if "error" in body:
        info = body["error"]
        print(f"error: {info['message']}", file=sys.stderr)
        return _KIND_TO_EXIT.get(info.get("kind"), EXIT_INTERNAL)

    if args.json:
        print(json.dumps(body, indent=2))
    else:
        _, renderer = _RUNNERS[args.command]
        sys.stdout.write(renderer(body))

    if args.command == "verify" and not body.get("passed"):
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
