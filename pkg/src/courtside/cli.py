"""
Command line interface.

Subcommands: analyze a clip file, classify it against a reference set,
evaluate a reference set with k-fold cross-validation, synthesize clips
from play scripts, and serve the HTTP API. Exit codes: 0 success, 1 data
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .detection import detect_all
from .filtering import annotate_events, filter_events
from .ingestion import (
    ParseError,
    generate_synthetic_play,
    load_clip,
    load_play_script,
    load_reference_set,
    save_clip,
)
from .tactics import DistanceParams, cross_validate, knn_classify, normalize_trajectories


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="courtside")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="detect, filter and classify a clip file")
    p.add_argument("clip", help="clip JSON file")
    p.add_argument("--refs", help="reference set JSON for tactic classification")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--radius", type=int, default=10)
    p.add_argument("--diagnostics", action="store_true", help="include removed events")

    p = sub.add_parser("classify", help="classify a clip against a reference set")
    p.add_argument("clip")
    p.add_argument("--refs", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--radius", type=int, default=10)
    p.add_argument(
        "--correspondence",
        choices=["fixed_slot", "optimal_assignment"],
        default="optimal_assignment",
    )

    p = sub.add_parser("evaluate", help="k-fold cross-validation of a reference set")
    p.add_argument("--refs", required=True)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=10)

    p = sub.add_parser("synth", help="render a play script into a clip")
    p.add_argument("script", nargs="?", help="play script JSON file")
    p.add_argument("--play", help="name of a built-in play instead of a file")
    p.add_argument("--list-plays", action="store_true", help="list built-in plays")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=0.0, help="position jitter in feet")
    p.add_argument("--fps", type=float, default=25.0)
    p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", help="config file (COURTSIDE_CONFIG overrides)")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    return parser


def _cmd_analyze(args) -> int:
    clip = load_clip(Path(args.clip).read_bytes())
    events = detect_all(clip)
    filtered = filter_events(events, fps=clip.fps)
    out = {
        "clip_id": clip.clip_id,
        "events": [e.to_json() for e in events],
        "filtered": [e.to_json() for e in filtered],
        "tactic": None,
    }
    if args.diagnostics:
        out["diagnostics"] = annotate_events(events, fps=clip.fps)
    if args.refs:
        refset = load_reference_set(Path(args.refs).read_bytes())
        params = DistanceParams(radius=args.radius)
        pred = knn_classify(
            normalize_trajectories(clip), refset, k=min(args.k, len(refset.clips)), params=params
        )
        out["tactic"] = pred.to_json()
    print(json.dumps(out, indent=2))
    return 0


def _cmd_classify(args) -> int:
    clip = load_clip(Path(args.clip).read_bytes())
    refset = load_reference_set(Path(args.refs).read_bytes())
    params = DistanceParams(radius=args.radius, correspondence=args.correspondence)
    pred = knn_classify(normalize_trajectories(clip), refset, k=args.k, params=params)
    print(json.dumps(pred.to_json(), indent=2))
    return 0


def _cmd_evaluate(args) -> int:
    refset = load_reference_set(Path(args.refs).read_bytes())
    params = DistanceParams(radius=args.radius)
    cm = cross_validate(refset, folds=args.folds, k=args.k, params=params, seed=args.seed)
    report = cm.to_json()
    report["params"] = {
        "folds": args.folds,
        "k": args.k,
        "seed": args.seed,
        "radius": args.radius,
        "correspondence": params.correspondence,
    }
    print(json.dumps(report, indent=2))
    return 0


def _cmd_synth(args) -> int:
    from . import playbook

    plays = {s.clip_id: s for s in playbook.detector_scenarios(args.fps)}
    for label_script in [playbook.tactic_script(l) for l in list(playbook.TacticLabel)]:
        plays[label_script.clip_id] = label_script
    if args.list_plays:
        print("\n".join(sorted(plays)))
        return 0
    if args.play:
        if args.play not in plays:
            print(f"unknown play {args.play!r}; try --list-plays", file=sys.stderr)
            return 1
        script = plays[args.play]
    elif args.script:
        script = load_play_script(Path(args.script).read_bytes())
    else:
        print("synth needs a script file or --play NAME", file=sys.stderr)
        return 2
    clip, _ = generate_synthetic_play(script, fps=args.fps, noise_sigma=args.sigma, seed=args.seed)
    payload = save_clip(clip)
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())
        sys.stdout.write("\n")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "classify": _cmd_classify,
        "evaluate": _cmd_evaluate,
        "synth": _cmd_synth,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
