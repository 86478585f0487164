"""Operator CLI: ingest a corpus, ask questions, evaluate, run the service.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import socket
import sys
from pathlib import Path

import uvicorn

from .config import ConfigError, load_service_config
from .corpus import CorpusError, load_corpus
from .metrics import GoldSetError, evaluate, load_gold
from .pipeline import answer
from .retriever import build_index
from .rooms import RoomsError, load_rooms
from .service import DEFAULT_PORT, QaEngine, create_app
from .snapshot import SnapshotError, load_snapshot, save_snapshot

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; this CLI reserves 2
    # for data errors
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hotelqa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="build an index snapshot from a corpus")
    ingest.add_argument("--corpus", required=True, help="corpus path (file or directory)")
    ingest.add_argument("--format", choices=["jsonl", "text_dir"], default="jsonl")
    ingest.add_argument("--out", required=True, help="snapshot output path")

    ask = sub.add_parser("ask", help="answer one question from an index snapshot")
    ask.add_argument("question")
    ask.add_argument("--index", required=True, help="index snapshot path")
    ask.add_argument("--k", type=int, default=None, help="documents to retrieve")
    ask.add_argument("--alpha", type=float, default=None, help="retriever weight in score fusion")
    ask.add_argument("--config", default=None, help="service config file")

    evl = sub.add_parser("eval", help="score the pipeline against a gold set")
    evl.add_argument("--index", required=True)
    evl.add_argument("--gold", required=True, help="gold JSONL path")
    evl.add_argument("--k", type=int, default=3, help="retrieval depth for recall@k")
    evl.add_argument("--alpha", type=float, default=None)
    evl.add_argument("--config", default=None)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--index", required=True)
    serve.add_argument("--rooms", default=None, help="rooms/bookings JSON file")
    serve.add_argument("--config", default=None)
    serve.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("HOTELQA_PORT", DEFAULT_PORT)),
    )
    return parser


def _pipeline_config(args: argparse.Namespace):
    """Pipeline settings from the config file with flag overrides; may raise ConfigError."""
    service_config = load_service_config(getattr(args, "config", None))
    pipeline = service_config.pipeline
    overrides = {}
    if getattr(args, "k", None) is not None:
        overrides["top_k_docs"] = args.k
    if getattr(args, "alpha", None) is not None:
        overrides["fusion_alpha"] = args.alpha
    if overrides:
        pipeline = dataclasses.replace(pipeline, **overrides)
    return pipeline


def _data_error(message: str) -> int:
    print(f"hotelqa: error: {message}", file=sys.stderr)
    return EXIT_DATA


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        corpus = load_corpus(args.corpus, format=args.format)
    except CorpusError as exc:
        return _data_error(str(exc))
    index = build_index(corpus)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_snapshot(out, corpus, index)
    print(f"documents: {len(corpus.documents)}")
    print(f"paragraphs: {len(corpus.paragraphs)}")
    print(f"vocabulary_terms: {len(index.vocabulary)}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_ask(args: argparse.Namespace) -> int:
    try:
        corpus, index = load_snapshot(args.index)
        pipeline = _pipeline_config(args)
    except (SnapshotError, ConfigError) as exc:
        return _data_error(str(exc))
    try:
        response = answer(args.question, index, corpus, pipeline)
    except Exception as exc:  # external reader hard failure
        return _data_error(str(exc))
    print(json.dumps(response.to_dict(), ensure_ascii=False))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        corpus, index = load_snapshot(args.index)
        examples = load_gold(args.gold)
        pipeline = _pipeline_config(args)
    except (SnapshotError, GoldSetError, ConfigError) as exc:
        return _data_error(str(exc))
    report = evaluate(index, corpus, examples, pipeline, k=args.k)
    print(json.dumps(report.to_dict(), ensure_ascii=False))
    print()
    print(f"{'examples':>16}  {report.n}")
    print(f"{'exact match':>16}  {report.exact_match:.4f}")
    print(f"{'token F1':>16}  {report.f1:.4f}")
    print(f"{f'recall@{args.k}':>16}  {report.recall_at_k:.4f}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        engine = QaEngine.from_snapshot(args.index)
    except SnapshotError as exc:
        return _data_error(str(exc))
    rooms = None
    if args.rooms is not None:
        if Path(args.rooms).exists():
            try:
                rooms = load_rooms(args.rooms)
            except RoomsError as exc:
                return _data_error(str(exc))
        else:
            print(
                f"hotelqa: warning: rooms file {args.rooms} not found; "
                "/api/rooms will answer 503",
                file=sys.stderr,
            )
    try:
        service_config = load_service_config(args.config)
    except ConfigError as exc:
        return _data_error(str(exc))

    host = "127.0.0.1"
    try:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
            probe.bind((host, args.port))
    except OSError as exc:
        return _data_error(f"cannot bind port {args.port}: {exc}")

    app = create_app(engine=engine, rooms=rooms, config=service_config)
    uvicorn.run(app, host=host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "ingest": cmd_ingest,
        "ask": cmd_ask,
        "eval": cmd_eval,
        "serve": cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
