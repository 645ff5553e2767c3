"""Command-line client.

All computation lives behind the service handlers; this module only
builds requests, renders responses, and maps errors onto exit codes:

    0  success / verified
    1  verification mismatch (or a violated inequality)
    2  input error
    3  budget exceeded
"""

from __future__ import annotations

import argparse
import sys

from .errors import BudgetExceededError, InputError
from .render import (
    canonical_json,
    render_analyze,
    render_bound,
    render_examples,
    render_verify,
)
from .service import handlers
from .service.models import (
    AlgebraSource,
    AnalyzeRequest,
    AnalyzeResponse,
    BoundRequest,
    BoundResponse,
    ExamplesResponse,
    FieldSpec,
    VerifyRequest,
    VerifyResponse,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_source_args(sp: argparse.ArgumentParser):
    sp.add_argument("file", nargs="?", help="algebra file (omit when using --builtin)")
    sp.add_argument("--builtin", help="name of a built-in algebra (see 'examples')")
    sp.add_argument("--alpha", type=int, help="parameter of the elliptic9 builtin")
    sp.add_argument(
        "--q-override",
        metavar="p,k",
        help="run over F_{p^k}: field for builtins, base extension for files",
    )
    sp.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    sp.add_argument("--server", help="base URL of a running service instance")


def _parse_q_override(raw: str | None) -> FieldSpec | None:
    if raw is None:
        return None
    parts = raw.split(",")
    try:
        if len(parts) == 1:
            return FieldSpec(p=int(parts[0]), k=1)
        if len(parts) == 2:
            return FieldSpec(p=int(parts[0]), k=int(parts[1]))
    except ValueError:
        pass
    raise _CliError(f"--q-override expects 'p' or 'p,k', got {raw!r}", EXIT_INPUT)


def _source_from_args(args) -> tuple[AlgebraSource, FieldSpec | None]:
    if (args.file is None) == (args.builtin is None):
        raise _CliError("provide exactly one of <file> or --builtin", EXIT_INPUT)
    if args.file is not None:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _CliError(f"cannot read {args.file}: {exc}", EXIT_INPUT) from None
        source = AlgebraSource(text=text, alpha=args.alpha)
    else:
        source = AlgebraSource(builtin=args.builtin, alpha=args.alpha)
    return source, _parse_q_override(args.q_override)


def _parse_t_list(raw: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise _CliError(f"--t expects comma-separated integers, got {raw!r}", EXIT_INPUT) from None


# ---------------------------------------------------------------------------
# transport: in-process by default, HTTP when --server is given
# ---------------------------------------------------------------------------

def _remote_post(server: str, path: str, request, response_cls):
    import httpx

    url = server.rstrip("/") + path
    try:
        resp = httpx.post(url, json=request.model_dump(), timeout=None)
    except httpx.HTTPError as exc:
        raise _CliError(f"cannot reach {url}: {exc}", EXIT_INPUT) from None
    return _remote_response(resp, response_cls)


def _remote_get(server: str, path: str, response_cls):
    import httpx

    url = server.rstrip("/") + path
    try:
        resp = httpx.get(url, timeout=None)
    except httpx.HTTPError as exc:
        raise _CliError(f"cannot reach {url}: {exc}", EXIT_INPUT) from None
    return _remote_response(resp, response_cls)


def _remote_response(resp, response_cls):
    if resp.status_code == 200:
        return response_cls.model_validate(resp.json())
    try:
        payload = resp.json()
    except ValueError:
        payload = {}
    err = payload.get("error", {})
    kind = err.get("kind", "error")
    message = err.get("message", f"HTTP {resp.status_code}")
    code = EXIT_BUDGET if kind == "budget-exceeded" else EXIT_INPUT
    if resp.status_code >= 500:
        code = EXIT_MISMATCH
    raise _CliError(f"{kind}: {message}", code)


def _run_analyze(req: AnalyzeRequest, server: str | None) -> AnalyzeResponse:
    if server:
        return _remote_post(server, "/analyze", req, AnalyzeResponse)
    return handlers.handle_analyze(req)


def _run_verify(req: VerifyRequest, server: str | None) -> VerifyResponse:
    if server:
        return _remote_post(server, "/verify", req, VerifyResponse)
    return handlers.handle_verify(req)


def _run_bound(req: BoundRequest, server: str | None) -> BoundResponse:
    if server:
        return _remote_post(server, "/bound", req, BoundResponse)
    return handlers.handle_bound(req)


def _run_examples(server: str | None) -> ExamplesResponse:
    if server:
        return _remote_get(server, "/examples", ExamplesResponse)
    return handlers.handle_examples()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    source, field = _source_from_args(args)
    req = AnalyzeRequest(
        source=source,
        field=field,
        t=_parse_t_list(args.t),
        enum_budget=args.budget,
        threads=args.threads,
    )
    resp = _run_analyze(req, args.server)
    if args.format == "json":
        sys.stdout.write(canonical_json(resp))
    else:
        sys.stdout.write(render_analyze(resp))
    return EXIT_OK


def _cmd_verify(args) -> int:
    source, field = _source_from_args(args)
    req = VerifyRequest(
        source=source,
        field=field,
        t_max=args.t_max,
        oracle_budget=args.budget,
        threads=args.threads,
    )
    resp = _run_verify(req, args.server)
    sys.stdout.write(render_verify(resp))
    return EXIT_OK if resp.ok else EXIT_MISMATCH


def _cmd_bound(args) -> int:
    source, field = _source_from_args(args)
    req = BoundRequest(source=source, field=field, t=args.t, threads=args.threads)
    resp = _run_bound(req, args.server)
    sys.stdout.write(render_bound(resp))
    return EXIT_OK if resp.holds else EXIT_MISMATCH


def _cmd_examples(args) -> int:
    resp = _run_examples(args.server)
    sys.stdout.write(render_examples(resp))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commfibre",
        description=(
            "Exact fibre sizes of commutator word maps over finite p-groups "
            "(class < p, exponent p), with brute-force verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="full rank-stratum analysis and statistics")
    _add_source_args(sp)
    sp.add_argument("--t", default="1", help="comma-separated word lengths (default 1)")
    sp.add_argument("--format", choices=["table", "json"], default="table")
    sp.add_argument("--budget", type=int, help="enumeration point budget")
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("verify", help="compare against the brute-force group oracle")
    _add_source_args(sp)
    sp.add_argument("--t-max", type=int, default=2, help="verify t = 1 .. t_max (default 2)")
    sp.add_argument("--budget", type=int, help="oracle pair-evaluation budget")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("bound", help="exact L1 distance vs its upper bound")
    _add_source_args(sp)
    sp.add_argument("--t", type=int, required=True, help="word length t")
    sp.set_defaults(func=_cmd_bound)

    sp = sub.add_parser("examples", help="list built-in algebras")
    sp.add_argument("--server", help="base URL of a running service instance")
    sp.set_defaults(func=_cmd_examples)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceededError as exc:
        print(f"error (budget-exceeded): {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
