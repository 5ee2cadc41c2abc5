"""Command-line front end: check, solve, query, render, serve.

Exit codes: 0 success, 1 diagnostics (or timeout / too many answer sets),
2 usage errors.  Output for solve and query is byte-identical to the
textual fields the HTTP service returns for the same input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .display import plan_json
from .errors import SparcError
from .pipeline import check_text, run
from .preprocess import DirectoryResolver, StandardResolver
from .solver import MAX_TIMEOUT_SEC, SolveLimits
from .syntax import literal_text, term_text


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _resolver(args, input_path: str):
    roots = [Path(d) for d in (args.include_dir or [])]
    if input_path != "-":
        parent = Path(input_path).resolve().parent
        if parent not in roots:
            roots.append(parent)
    return StandardResolver(DirectoryResolver(roots)) if roots else StandardResolver()


def _limits(parser: argparse.ArgumentParser, args) -> SolveLimits:
    timeout = getattr(args, "timeout", None)
    max_models = getattr(args, "max_models", None)
    kw = {}
    if timeout is not None:
        if not (0 < timeout <= MAX_TIMEOUT_SEC):
            parser.error(f"--timeout must lie in (0, {MAX_TIMEOUT_SEC:g}]")
        kw["timeout_sec"] = timeout
    if max_models is not None:
        if max_models < 1:
            parser.error("--max-models must be positive")
        kw["max_answer_sets"] = max_models
    return SolveLimits(**kw)


def _print_diagnostics(diags, label: str | None = None):
    for d in diags:
        prefix = f"{label}: " if label else ""
        print(f"{prefix}{d}", file=sys.stderr)


def _cmd_check(parser, args) -> int:
    text = _read_input(args.file)
    diags = check_text(text, _resolver(args, args.file))
    if diags:
        _print_diagnostics(diags)
        return 1
    print("no errors found")
    return 0


def _cmd_solve(parser, args) -> int:
    text = _read_input(args.file)
    result = run(text, "answer_sets", limits=_limits(parser, args),
                 resolver=_resolver(args, args.file))
    if not result.ok:
        _print_diagnostics(result.diagnostics)
        return 1
    if args.format == "json":
        payload = [[literal_text(l) for l in s.sorted_literals()] for s in result.answer_sets]
        print(json.dumps({"answerSets": payload}))
    else:
        for s in result.answer_sets:
            print(s.text())
    return 0


def _cmd_query(parser, args) -> int:
    text = _read_input(args.file)
    result = run(text, "query", query_text=args.query,
                 limits=_limits(parser, args), resolver=_resolver(args, args.file))
    if not result.ok:
        _print_diagnostics(result.diagnostics)
        return 1
    answer = result.query_answer
    if args.format == "json":
        payload: dict = {"inconsistent": answer.inconsistent}
        if answer.bindings is None:
            payload["verdict"] = str(answer.verdict)
        else:
            payload["bindings"] = [
                {k: term_text(v) for k, v in sorted(b.items())} for b in answer.bindings]
        print(json.dumps(payload))
    else:
        print(answer.text())
    return 0


def _cmd_render(parser, args) -> int:
    text = _read_input(args.file)
    result = run(text, "execute", limits=_limits(parser, args),
                 resolver=_resolver(args, args.file))
    if not result.ok:
        _print_diagnostics(result.diagnostics)
        return 1
    out = Path(args.out)
    if out.suffix == ".json":
        payload = {"plans": [plan_json(p) for p in result.plans]}
        out.write_text(json.dumps(payload), encoding="utf-8")
    else:
        out.write_text(result.html, encoding="utf-8")
    print(f"wrote {out}")
    return 0


def _cmd_serve(parser, args) -> int:
    import uvicorn

    from .service.app import create_app
    from .service.config import ServiceConfig

    config = ServiceConfig.from_env()
    if args.data_dir:
        config = config.with_data_dir(args.data_dir)
    if args.host:
        config = config.with_listen(args.host, config.port)
    if args.port:
        config = config.with_listen(config.host, args.port)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparclab",
                                     description="SPARC workbench: check, solve, query, render, serve")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_limits=True):
        p.add_argument("file", help="SPARC source file, or - for standard input")
        p.add_argument("--include-dir", action="append", metavar="DIR",
                       help="extra directory searched by quoted #include paths")
        if with_limits:
            p.add_argument("--timeout", type=float, metavar="SEC",
                           help=f"solver time limit, at most {MAX_TIMEOUT_SEC:g}s")
            p.add_argument("--max-models", type=int, metavar="N",
                           help="answer-set cap")

    p_check = sub.add_parser("check", help="report parse/sort/type diagnostics")
    common(p_check, with_limits=False)

    p_solve = sub.add_parser("solve", help="print the answer sets")
    common(p_solve)
    p_solve.add_argument("--format", choices=("text", "json"), default="text")

    p_query = sub.add_parser("query", help="answer a query against the program")
    common(p_query)
    p_query.add_argument("--query", required=True, metavar="Q",
                         help="the query literal, e.g. 'p(a)?'")
    p_query.add_argument("--format", choices=("text", "json"), default="text")

    p_render = sub.add_parser("render", help="compile drawings to a plan or web page")
    common(p_render)
    p_render.add_argument("--out", required=True, metavar="PATH",
                          help="output file; .json writes render plans, anything else HTML")

    p_serve = sub.add_parser("serve", help="start the workspace HTTP service")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--data-dir", default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "check": _cmd_check,
        "solve": _cmd_solve,
        "query": _cmd_query,
        "render": _cmd_render,
        "serve": _cmd_serve,
    }[args.command]
    try:
        return handler(parser, args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SparcError as e:
        _print_diagnostics(e.diagnostics)
        return 1


if __name__ == "__main__":
    sys.exit(main())
