"""Command line entry point for the pipeline stages and the service."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import ConfigError, load_config


def _add_config_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="path to the pipeline config file (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventatlas",
        description="Offline pipeline and query service for historical event exploration",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_config_arg(sub.add_parser("ingest", help="select the event-article working set"))
    _add_config_arg(sub.add_parser("extract", help="extract dates, locations and anchors"))

    p_model = sub.add_parser("model", help="fit topic models and pick the most coherent")
    _add_config_arg(p_model)
    p_model.add_argument("--k-min", type=int, help="smallest candidate topic count")
    p_model.add_argument("--k-max", type=int, help="largest candidate topic count")
    p_model.add_argument("--k-step", type=int, help="candidate step size")
    p_model.add_argument("--seed", type=int, help="sampler seed")
    p_model.add_argument("--iterations", type=int, help="sampler sweeps")

    _add_config_arg(sub.add_parser("rank", help="compute pagerank and topic contribution"))
    _add_config_arg(sub.add_parser("index", help="build the query index"))

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    _add_config_arg(p_serve)
    p_serve.add_argument("--port", type=int, help="listen port (overrides config)")
    p_serve.add_argument("--host", help="listen host (overrides config)")

    _add_config_arg(sub.add_parser("all", help="run ingest through index"))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    from . import pipeline

    try:
        if args.command == "ingest":
            doc = pipeline.run_ingest(cfg)
            print(f"selected {doc['selected_count']} of {doc['article_count']} articles")
        elif args.command == "extract":
            doc = pipeline.run_extract(cfg)
            print(f"extracted {doc['event_count']} events ({doc['anchored_count']} anchored)")
        elif args.command == "model":
            if args.k_min is not None:
                cfg.model.k_min = args.k_min
            if args.k_max is not None:
                cfg.model.k_max = args.k_max
            if args.k_step is not None:
                cfg.model.k_step = args.k_step
            if args.seed is not None:
                cfg.model.seed = args.seed
            if args.iterations is not None:
                cfg.model.iterations = args.iterations
            summary = pipeline.run_model(cfg)
            print(f"selected k={summary['k']} (coherence {summary['coherence']:.4f})")
        elif args.command == "rank":
            doc = pipeline.run_rank(cfg)
            print(f"ranked {len(doc['pagerank'])} articles")
        elif args.command == "index":
            meta = pipeline.run_index(cfg)
            print(f"indexed {meta['event_count']} events")
        elif args.command == "all":
            meta = pipeline.run_all(cfg)
            print(f"pipeline complete: {meta['event_count']} events in {meta['elapsed_s']}s")
        elif args.command == "serve":
            import uvicorn

            from .service import create_app

            engine = pipeline.build_engine(cfg)
            app = create_app(engine)
            host = args.host or cfg.serve.host
            port = args.port if args.port is not None else cfg.serve.port
            uvicorn.run(app, host=host, port=port, log_level="info")
    except Exception as exc:  # surfaced as a diagnostic, not a traceback
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
