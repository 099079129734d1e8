"""
HTTP service: clips, analysis, tactic Q&A, stats Q&A, and overlay scripts.

All analysis for a clip (detection, filtering, classification) is computed
once and cached; requests after the first only assemble responses. With a
mock chat client the whole pipeline is deterministic, so identical requests
produce identical bodies.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .config import AppConfig
from .core import TacticLabel
from .detection import ActionEvent, detect_all
from .filtering import annotate_events, filter_events
from .ingestion import ReferenceSet, StatsTable, load_clip, load_reference_set, load_stats_table
from .narrative import (
    ChatError,
    ExplanationParseError,
    ExplanationPlan,
    MockChatClient,
    Perspective,
    RemoteChatClient,
    answer_tactic_question,
    build_game_context,
    fallback_generate,
    parse_explanation,
)
from .overlay import compile_script
from .statsqa import (
    ReactError,
    StatsTableTool,
    ToolRegistry,
    load_tool_fixtures,
    run_react,
)
from .tactics import TacticPrediction, knn_classify, normalize_trajectories

MEDIA_TYPE = "application/vnd.courtside.v1+json"

GENERIC_DESCRIPTION = (
    "A set offensive play in which screens, cuts, and quick passes are "
    "combined to free a shooter for a clean attempt."
)


def load_tactic_descriptions(path: Optional[str] = None) -> dict[TacticLabel, str]:
    if path:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    else:
        raw = json.loads(
            resources.files("courtside")
            .joinpath("data/tactic_descriptions.json")
            .read_text(encoding="utf-8")
        )
    return {TacticLabel(k): v for k, v in raw.items()}


@dataclass
class ClipAnalysis:
    clip_id: str
    events: list[ActionEvent]
    filtered: list[ActionEvent]
    tactic: Optional[TacticPrediction]


class Corpus:
    """Loaded clips plus lazily cached per-clip analysis."""

    def __init__(self, config: AppConfig):
        self.config = config
        self.clips = {}
        data_dir = Path(config.data_dir)
        if data_dir.is_dir():
            for path in sorted(data_dir.glob("*.json")):
                try:
                    clip = load_clip(path.read_bytes())
                except Exception as e:
                    raise RuntimeError(f"failed to load clip {path}: {e}") from e
                self.clips[clip.clip_id] = clip
        self.refset: Optional[ReferenceSet] = None
        if config.reference_path:
            self.refset = load_reference_set(Path(config.reference_path).read_bytes())
        self.stats: Optional[StatsTable] = None
        if config.stats_path:
            self.stats = load_stats_table(Path(config.stats_path).read_bytes())
        self.descriptions = load_tactic_descriptions(config.tactic_descriptions_path)
        self._analysis: dict[str, ClipAnalysis] = {}
        self._lock = threading.Lock()

    def clip(self, clip_id: str):
        if clip_id not in self.clips:
            raise HTTPException(status_code=404, detail=f"unknown clip {clip_id!r}")
        return self.clips[clip_id]

    def analysis(self, clip_id: str) -> ClipAnalysis:
        clip = self.clip(clip_id)
        with self._lock:
            if clip_id in self._analysis:
                return self._analysis[clip_id]
        events = detect_all(clip, self.config.detection)
        filtered = filter_events(events, self.config.filter, clip.fps)
        tactic = None
        if self.refset is not None:
            tactic = knn_classify(
                normalize_trajectories(clip),
                self.refset,
                k=min(self.config.knn_k, len(self.refset.clips)),
                params=self.config.distance,
            )
        result = ClipAnalysis(clip_id, events, filtered, tactic)
        with self._lock:
            self._analysis[clip_id] = result
        return result

    def description_for(self, tactic: Optional[TacticPrediction]) -> str:
        if tactic is None:
            return GENERIC_DESCRIPTION
        return self.descriptions.get(tactic.label, GENERIC_DESCRIPTION)


def build_chat_client(config: AppConfig):
    if config.chat.mode == "remote":
        return RemoteChatClient(
            endpoint=config.chat.endpoint,
            api_key=config.chat.key,
            model=config.chat.model,
            timeout=config.chat.timeout,
        )
    if config.chat.script_path and Path(config.chat.script_path).exists():
        return MockChatClient.from_file(config.chat.script_path)
    return MockChatClient([])  # no rules: every call falls back


def _respond(payload, status_code: int = 200) -> JSONResponse:
    return JSONResponse(payload, status_code=status_code, media_type=MEDIA_TYPE)


def _parse_perspective(value: str) -> Perspective:
    try:
        return Perspective(value.lower())
    except ValueError:
        raise HTTPException(
            status_code=422,
            detail=f"perspective must be one of {{first, third}}, got {value!r}",
        ) from None


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    corpus = Corpus(config)
    chat = build_chat_client(config)
    app = FastAPI(title="courtside", version="1")

    tools = ToolRegistry()
    if corpus.stats is not None:
        tools.register(StatsTableTool(table=corpus.stats))
    if config.tool_fixtures_path:
        for tool in load_tool_fixtures(config.tool_fixtures_path):
            tools.register(tool)

    @app.get("/api/health")
    def health():
        return _respond({"status": "ok", "clips": len(corpus.clips)})

    @app.get("/api/clips")
    def list_clips():
        out = []
        for clip_id, clip in corpus.clips.items():
            a = corpus.analysis(clip_id)
            out.append(
                {
                    "clip_id": clip_id,
                    "fps": clip.fps,
                    "n_frames": clip.n_frames,
                    "offense_team": clip.offense_team.value,
                    "attack_direction": clip.attack_direction.value,
                    "tactic": a.tactic.to_json() if a.tactic else None,
                    "n_actions": len(a.filtered),
                }
            )
        return _respond(out)

    @app.get("/api/clips/{clip_id}")
    def clip_detail(clip_id: str):
        clip = corpus.clip(clip_id)
        a = corpus.analysis(clip_id)
        return _respond(
            {
                "clip_id": clip_id,
                "fps": clip.fps,
                "n_frames": clip.n_frames,
                "offense_team": clip.offense_team.value,
                "attack_direction": clip.attack_direction.value,
                "rosters": [
                    {"player_id": p.player_id, "full_name": p.full_name, "team": p.team.value}
                    for p in clip.rosters
                ],
                "tactic": a.tactic.to_json() if a.tactic else None,
                "actions": [e.to_json() for e in a.filtered],
                "all_actions": annotate_events(a.events, config.filter, clip.fps),
            }
        )

    @app.get("/api/clips/{clip_id}/frames")
    def clip_frames(clip_id: str, request: Request):
        clip = corpus.clip(clip_id)
        try:
            start = int(request.query_params.get("from", 0))
            stop = int(request.query_params.get("to", clip.n_frames - 1))
        except ValueError:
            raise HTTPException(status_code=422, detail="from/to must be integers") from None
        start = max(0, start)
        stop = min(clip.n_frames - 1, stop)
        frames = [
            {
                "i": fr.frame_index,
                "t": fr.timestamp,
                "ball": [fr.ball.x, fr.ball.y],
                "players": [
                    {"id": p.player_id, "pos": [p.pos.x, p.pos.y]} for p in fr.players
                ],
            }
            for fr in clip.frames[start : stop + 1]
        ]
        return _respond({"clip_id": clip_id, "from": start, "to": stop, "frames": frames})

    def _build_plan(clip_id: str, question: str, perspective: Perspective, use_chat: bool):
        clip = corpus.clip(clip_id)
        a = corpus.analysis(clip_id)
        label = a.tactic.label if a.tactic else TacticLabel.PD
        ctx = build_game_context(
            clip,
            label,
            corpus.description_for(a.tactic),
            a.filtered,
            question,
            join_window_s=config.filter.cut_receive_window,
        )
        if use_chat:
            try:
                plan = answer_tactic_question(
                    ctx,
                    perspective,
                    chat,
                    retries=config.chat.retries,
                    fallback_enabled=config.chat.fallback_enabled,
                    timeout=config.chat.timeout,
                )
            except (ChatError, ExplanationParseError) as e:
                raise HTTPException(status_code=502, detail=f"chat failure: {e}") from e
        else:
            summary, text = fallback_generate(ctx, perspective)
            segments = parse_explanation(text, perspective, ctx.groups, ctx.speakers())
            plan = ExplanationPlan(summary=summary, segments=tuple(segments), perspective=perspective)
        script = compile_script(list(ctx.groups), plan, clip, config.flashforward)
        return a, plan, script

    @app.get("/api/clips/{clip_id}/overlay")
    def clip_overlay(clip_id: str, perspective: str = "third"):
        p = _parse_perspective(perspective)
        _, _, script = _build_plan(
            clip_id, "What is the offensive tactic here?", p, use_chat=False
        )
        return _respond(script.to_json())

    @app.post("/api/clips/{clip_id}/ask")
    async def ask(clip_id: str, request: Request):
        body = await _json_body(request)
        question = (body.get("question") or "").strip()
        if not question:
            raise HTTPException(status_code=422, detail="question must be a non-empty string")
        p = _parse_perspective(str(body.get("perspective", "third")))
        a, plan, script = _build_plan(clip_id, question, p, use_chat=True)
        return _respond(
            {
                "summary": plan.summary,
                "perspective": p.value,
                "segments": [s.to_json() for s in plan.segments],
                "overlay": script.to_json(),
                "tactic": a.tactic.to_json() if a.tactic else None,
            }
        )

    @app.post("/api/stats/ask")
    async def stats_ask(request: Request):
        body = await _json_body(request)
        question = (body.get("question") or "").strip()
        if not question:
            raise HTTPException(status_code=422, detail="question must be a non-empty string")
        if len(tools) == 0:
            raise HTTPException(status_code=503, detail="no stats table configured")
        try:
            answer, trace = run_react(
                question, tools, chat, timeout=config.chat.timeout
            )
        except ReactError as e:
            return _respond(
                {"error": str(e), "trace": e.trace.to_json()}, status_code=502
            )
        except ChatError as e:
            raise HTTPException(status_code=502, detail=f"chat failure: {e}") from e
        return _respond({"answer": answer, "trace": trace.to_json()})

    if config.ui_dir and Path(config.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise HTTPException(status_code=422, detail="body must be JSON") from None
    if not isinstance(body, dict):
        raise HTTPException(status_code=422, detail="body must be a JSON object")
    return body
