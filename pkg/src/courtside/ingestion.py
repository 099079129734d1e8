"""
File ingestion and synthetic play generation.

Three document formats are owned here:

* clip JSON        ``{"schema": "courtside-clip/1", ...}``
* reference JSON   ``{"schema": "courtside-ref/1", ...}``
* stats CSV        RFC-4180 with a header row

plus a scripted-play generator that produces clips with known ground-truth
events, used by the test suite, the evaluation harness, and the demos.
"""

from __future__ import annotations

import csv
import io
import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .core import (
    DEFAULT_FPS,
    AttackDirection,
    BoundingBox,
    Clip,
    CourtSpec,
    PlayerPosition,
    PlayerRef,
    Point2,
    TacticLabel,
    TeamSide,
    TrackedFrame,
    Trajectory,
    validate_clip,
)
from .detection import ActionEvent

CLIP_SCHEMA = "courtside-clip/1"
REF_SCHEMA = "courtside-ref/1"
NORMALIZED_TOLERANCE = 0.01
HOLDER_BALL_OFFSET_FT = 1.0
#: After the final possession span the ball travels toward the hoop for this long.
SHOT_FLIGHT_SECONDS = 0.8


class ParseError(ValueError):
    """Document could not be parsed into a valid object; message names the
    offending JSON path / CSV row."""


@dataclass(frozen=True)
class ReferenceClip:
    """One annotated example: a tactic label plus the five offensive
    trajectories in normalized [0,1] x [0,1] coordinates."""

    label: TacticLabel
    trajectories: tuple[Trajectory, ...]

    def __post_init__(self):
        if len(self.trajectories) != 5:
            raise ValueError(f"expected 5 trajectories, got {len(self.trajectories)}")
        for t in self.trajectories:
            for _, p in t.samples:
                if not (-NORMALIZED_TOLERANCE <= p.x <= 1 + NORMALIZED_TOLERANCE):
                    raise ValueError(f"normalized x out of range: {p.x}")
                if not (-NORMALIZED_TOLERANCE <= p.y <= 1 + NORMALIZED_TOLERANCE):
                    raise ValueError(f"normalized y out of range: {p.y}")


@dataclass(frozen=True)
class ReferenceSet:
    clips: tuple[ReferenceClip, ...]

    def __post_init__(self):
        if not self.clips:
            raise ValueError("reference set must contain at least one clip")

    def labels(self) -> list[TacticLabel]:
        return sorted({c.label for c in self.clips}, key=lambda l: l.value)

    def __len__(self) -> int:
        return len(self.clips)


@dataclass(frozen=True)
class PossessionSpan:
    """Half-open hold interval: ``holder`` has the ball for t in [start, end]."""

    start: float
    end: float
    holder: str


@dataclass
class PlayScript:
    """Choreography for a synthetic play.

    ``waypoints`` maps player_id -> [(time_s, x, y), ...] with non-decreasing
    times; positions between waypoints are linearly interpolated, and held
    constant before the first / after the last waypoint. ``possession``
    lists who holds the ball and when; gaps between spans become ball flight.
    ``expected_events`` is the hand-derived ground truth for the detectors.
    """

    clip_id: str
    waypoints: dict[str, list[tuple[float, float, float]]]
    possession: list[PossessionSpan]
    rosters: list[PlayerRef]
    offense_team: TeamSide = TeamSide.HOME
    attack_direction: AttackDirection = AttackDirection.LEFT
    duration: float = 8.0
    expected_events: list[ActionEvent] = field(default_factory=list)
    tactic_label: Optional[TacticLabel] = None

    def validate(self) -> None:
        if not self.waypoints:
            raise ValueError("script has no players")
        rostered = {p.player_id for p in self.rosters}
        for pid, pts in self.waypoints.items():
            if pid not in rostered:
                raise ValueError(f"waypoints for unrostered player {pid!r}")
            times = [t for t, _, _ in pts]
            if any(b < a for a, b in zip(times, times[1:])):
                raise ValueError(f"waypoint times for {pid!r} must be non-decreasing")
        for span in self.possession:
            if span.holder not in rostered:
                raise ValueError(f"possession span names unrostered player {span.holder!r}")
        starts = [s.start for s in self.possession]
        if any(b < a for a, b in zip(starts, starts[1:])):
            raise ValueError("possession spans must be chronological")


def _interp_waypoints(pts: list[tuple[float, float, float]], t: float) -> tuple[float, float]:
    times = [p[0] for p in pts]
    if t <= times[0]:
        return pts[0][1], pts[0][2]
    if t >= times[-1]:
        return pts[-1][1], pts[-1][2]
    i = bisect_right(times, t) - 1
    t0, x0, y0 = pts[i]
    t1, x1, y1 = pts[i + 1]
    if t1 == t0:
        return x1, y1
    a = (t - t0) / (t1 - t0)
    return x0 + a * (x1 - x0), y0 + a * (y1 - y0)


def _holder_ball_pos(px: float, py: float, hoop: Point2) -> tuple[float, float]:
    dx, dy = hoop.x - px, hoop.y - py
    norm = math.hypot(dx, dy)
    if norm < 1e-9:
        return px, py
    return px + HOLDER_BALL_OFFSET_FT * dx / norm, py + HOLDER_BALL_OFFSET_FT * dy / norm


def generate_synthetic_play(
    script: PlayScript,
    fps: float = DEFAULT_FPS,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> tuple[Clip, list[ActionEvent]]:
    """Render a script into a Clip plus its ground-truth events.

    Player positions are piecewise-linear interpolations of the waypoints
    with optional iid Gaussian jitter (sigma in feet) from a seeded
    generator. The ball sits one foot in front of its holder (toward the
    attacking hoop), flies linearly between consecutive holders, and after
    the final span travels toward the hoop. Identical arguments produce an
    identical clip, bit for bit.
    """
    script.validate()
    court = CourtSpec()
    hoop = court.hoop_for(script.attack_direction)
    n_frames = int(round(script.duration * fps)) + 1
    rng = np.random.default_rng(seed)
    player_ids = [p.player_id for p in script.rosters]

    # jitter drawn in one block so the stream is stable under refactors
    if noise_sigma > 0:
        jitter = rng.normal(0.0, noise_sigma, size=(n_frames, len(player_ids) + 1, 2))
    else:
        jitter = np.zeros((n_frames, len(player_ids) + 1, 2))

    spans = script.possession
    frames = []
    for f in range(n_frames):
        t = f / fps
        positions: dict[str, tuple[float, float]] = {}
        for k, pid in enumerate(player_ids):
            pts = script.waypoints.get(pid)
            if pts:
                x, y = _interp_waypoints(pts, t)
            else:
                x, y = 40.0, 25.0
            x += jitter[f, k, 0]
            y += jitter[f, k, 1]
            positions[pid] = (_clamp(x, 0.0, court.length), _clamp(y, 0.0, court.width))

        bx, by = _ball_position(t, spans, script, positions, hoop, fps)
        bx += jitter[f, len(player_ids), 0]
        by += jitter[f, len(player_ids), 1]
        players = tuple(
            PlayerPosition(pid, Point2(*positions[pid])) for pid in player_ids
        )
        frames.append(
            TrackedFrame(
                frame_index=f,
                timestamp=t,
                ball=Point2(_clamp(bx, 0.0, court.length), _clamp(by, 0.0, court.width)),
                players=players,
            )
        )

    clip = Clip(
        clip_id=script.clip_id,
        fps=fps,
        frames=tuple(frames),
        rosters=tuple(script.rosters),
        offense_team=script.offense_team,
        attack_direction=script.attack_direction,
        court=court,
    )
    problems = validate_clip(clip)
    if problems:
        raise ValueError(f"generated clip is invalid: {problems[:3]}")
    return clip, list(script.expected_events)


def _clamp(v: float, lo: float, hi: float) -> float:
    return min(max(v, lo), hi)


def _ball_position(
    t: float,
    spans: list[PossessionSpan],
    script: PlayScript,
    positions: dict[str, tuple[float, float]],
    hoop: Point2,
    fps: float,
) -> tuple[float, float]:
    def holder_pos_at(span: PossessionSpan, when: float) -> tuple[float, float]:
        pts = script.waypoints.get(span.holder)
        px, py = _interp_waypoints(pts, when) if pts else (40.0, 25.0)
        return _holder_ball_pos(px, py, hoop)

    if not spans:
        return 40.0, 25.0
    if t <= spans[0].start:
        return holder_pos_at(spans[0], spans[0].start)
    for i, span in enumerate(spans):
        if span.start <= t <= span.end:
            px, py = positions[span.holder]
            return _holder_ball_pos(px, py, hoop)
        nxt = spans[i + 1] if i + 1 < len(spans) else None
        if nxt is None:
            # final release: fly toward the hoop, then rest there
            x0, y0 = holder_pos_at(span, span.end)
            a = _clamp((t - span.end) / SHOT_FLIGHT_SECONDS, 0.0, 1.0)
            return x0 + a * (hoop.x - x0), y0 + a * (hoop.y - y0)
        if span.end < t < nxt.start:
            x0, y0 = holder_pos_at(span, span.end)
            x1, y1 = holder_pos_at(nxt, nxt.start)
            a = (t - span.end) / (nxt.start - span.end)
            return x0 + a * (x1 - x0), y0 + a * (y1 - y0)
    return holder_pos_at(spans[-1], spans[-1].end)


SCRIPT_SCHEMA = "courtside-script/1"


def load_play_script(document: Union[bytes, str]) -> PlayScript:
    """Parse a play-script document (used by the synth command)."""
    data = _load_json(document)
    if data.get("schema") != SCRIPT_SCHEMA:
        raise ParseError(f"schema: expected {SCRIPT_SCHEMA!r}, got {data.get('schema')!r}")
    try:
        rosters = [
            PlayerRef(r["player_id"], r["full_name"], TeamSide(r["team"]))
            for r in _require(data, "rosters", list)
        ]
        waypoints = {
            pid: [(float(t), float(x), float(y)) for t, x, y in pts]
            for pid, pts in _require(data, "waypoints", dict).items()
        }
        possession = [
            PossessionSpan(float(s), float(e), holder)
            for s, e, holder in data.get("possession", [])
        ]
        label = data.get("tactic_label")
        script = PlayScript(
            clip_id=str(_require(data, "clip_id", str)),
            waypoints=waypoints,
            possession=possession,
            rosters=rosters,
            offense_team=TeamSide(data.get("offense_team", "home")),
            attack_direction=AttackDirection(data.get("attack_direction", "left")),
            duration=float(data.get("duration", 8.0)),
            tactic_label=TacticLabel(label) if label else None,
        )
        script.validate()
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad play script: {e}") from None
    return script


def save_play_script(script: PlayScript) -> bytes:
    doc = {
        "schema": SCRIPT_SCHEMA,
        "clip_id": script.clip_id,
        "duration": script.duration,
        "offense_team": script.offense_team.value,
        "attack_direction": script.attack_direction.value,
        "tactic_label": script.tactic_label.value if script.tactic_label else None,
        "rosters": [
            {"player_id": p.player_id, "full_name": p.full_name, "team": p.team.value}
            for p in script.rosters
        ],
        "waypoints": {pid: [list(p) for p in pts] for pid, pts in script.waypoints.items()},
        "possession": [[s.start, s.end, s.holder] for s in script.possession],
    }
    return json.dumps(doc, sort_keys=True, indent=2).encode()


# ---------------------------------------------------------------------------
# clip JSON


def load_clip(document: Union[bytes, str]) -> Clip:
    """Parse a clip document, raising ParseError on malformed input and
    validating every clip invariant."""
    data = _load_json(document)
    if data.get("schema") != CLIP_SCHEMA:
        raise ParseError(f"schema: expected {CLIP_SCHEMA!r}, got {data.get('schema')!r}")
    try:
        rosters = tuple(
            PlayerRef(r["player_id"], r["full_name"], TeamSide(r["team"]))
            for r in _require(data, "rosters", list)
        )
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(f"rosters: {e}") from None

    fps = float(data.get("fps") or DEFAULT_FPS)
    frames = []
    for k, fr in enumerate(_require(data, "frames", list)):
        path = f"frames[{k}]"
        try:
            ball = fr["ball"]
            players = tuple(
                PlayerPosition(
                    p["id"],
                    Point2(float(p["pos"][0]), float(p["pos"][1])),
                    _parse_bbox(p.get("bbox")),
                )
                for p in fr["players"]
            )
            frames.append(
                TrackedFrame(
                    frame_index=int(fr["i"]),
                    timestamp=float(fr.get("t", fr["i"] / fps)),
                    ball=Point2(float(ball[0]), float(ball[1])),
                    ball_bbox=_parse_bbox(fr.get("ball_bbox")),
                    players=players,
                )
            )
        except (KeyError, IndexError, TypeError, ValueError) as e:
            key = e.args[0] if isinstance(e, KeyError) else e
            raise ParseError(f"{path}: missing or invalid field {key!r}") from None

    try:
        clip = Clip(
            clip_id=str(_require(data, "clip_id", str)),
            fps=fps,
            frames=tuple(frames),
            rosters=rosters,
            offense_team=TeamSide(_require(data, "offense_team", str)),
            attack_direction=AttackDirection(_require(data, "attack_direction", str)),
            video_uri=data.get("video_uri"),
        )
    except ValueError as e:
        raise ParseError(str(e)) from None
    problems = validate_clip(clip)
    if problems:
        raise ParseError("; ".join(problems))
    return clip


def save_clip(clip: Clip) -> bytes:
    """Serialize a clip so that load_clip(save_clip(c)) == c."""
    doc = {
        "schema": CLIP_SCHEMA,
        "clip_id": clip.clip_id,
        "fps": clip.fps,
        "offense_team": clip.offense_team.value,
        "attack_direction": clip.attack_direction.value,
        "video_uri": clip.video_uri,
        "rosters": [
            {"player_id": p.player_id, "full_name": p.full_name, "team": p.team.value}
            for p in clip.rosters
        ],
        "frames": [
            {
                "i": fr.frame_index,
                "t": fr.timestamp,
                "ball": [fr.ball.x, fr.ball.y],
                "ball_bbox": _bbox_list(fr.ball_bbox),
                "players": [
                    {
                        "id": p.player_id,
                        "pos": [p.pos.x, p.pos.y],
                        "bbox": _bbox_list(p.bbox),
                    }
                    for p in fr.players
                ],
            }
            for fr in clip.frames
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def _parse_bbox(raw) -> Optional[BoundingBox]:
    if raw is None:
        return None
    return BoundingBox(float(raw[0]), float(raw[1]), float(raw[2]), float(raw[3]))


def _bbox_list(b: Optional[BoundingBox]):
    return None if b is None else [b.x, b.y, b.w, b.h]


def _load_json(document: Union[bytes, str]) -> dict:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("top-level document must be a JSON object")
    return data


def _require(data: dict, key: str, typ: type):
    if key not in data:
        raise ParseError(f"missing required field {key!r}")
    value = data[key]
    if not isinstance(value, typ):
        raise ParseError(f"field {key!r}: expected {typ.__name__}")
    return value


# ---------------------------------------------------------------------------
# reference JSON


def load_reference_set(document: Union[bytes, str]) -> ReferenceSet:
    data = _load_json(document)
    if data.get("schema") != REF_SCHEMA:
        raise ParseError(f"schema: expected {REF_SCHEMA!r}, got {data.get('schema')!r}")
    clips = []
    valid = ", ".join(l.value for l in TacticLabel)
    for k, entry in enumerate(_require(data, "clips", list)):
        path = f"clips[{k}]"
        try:
            label = TacticLabel(entry["label"])
        except KeyError:
            raise ParseError(f"{path}: missing 'label'") from None
        except ValueError:
            raise ParseError(
                f"{path}: unknown label {entry['label']!r}; valid codes: {valid}"
            ) from None
        trajs = entry.get("trajectories")
        if not isinstance(trajs, list) or len(trajs) != 5:
            got = len(trajs) if isinstance(trajs, list) else type(trajs).__name__
            raise ParseError(f"{path}: expected 5 trajectories, got {got}")
        try:
            trajectories = tuple(
                Trajectory(tuple((int(i), Point2(float(x), float(y))) for i, x, y in tr))
                for tr in trajs
            )
            clips.append(ReferenceClip(label=label, trajectories=trajectories))
        except (TypeError, ValueError) as e:
            raise ParseError(f"{path}: {e}") from None
    try:
        return ReferenceSet(clips=tuple(clips))
    except ValueError as e:
        raise ParseError(str(e)) from None


def save_reference_set(refset: ReferenceSet) -> bytes:
    doc = {
        "schema": REF_SCHEMA,
        "clips": [
            {
                "label": c.label.value,
                "trajectories": [
                    [[i, p.x, p.y] for i, p in t.samples] for t in c.trajectories
                ],
            }
            for c in refset.clips
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


# ---------------------------------------------------------------------------
# stats CSV


@dataclass(frozen=True)
class StatsTable:
    columns: tuple[tuple[str, str], ...]  # (name, type) with type in int/float/string
    rows: tuple[tuple, ...]

    def column_names(self) -> list[str]:
        return [name for name, _ in self.columns]

    def column_type(self, name: str) -> str:
        for n, t in self.columns:
            if n == name:
                return t
        raise KeyError(name)

    def column_values(self, name: str) -> list:
        idx = self.column_names().index(name)
        return [row[idx] for row in self.rows]


def load_stats_table(document: Union[bytes, str]) -> StatsTable:
    """Parse CSV with a header row; column types inferred int -> float -> string."""
    text = document.decode("utf-8") if isinstance(document, bytes) else document
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("stats file is empty; a header row is required") from None
    raw_rows = []
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(
                f"row {rownum}: expected {len(header)} cells, got {len(row)}"
            )
        raw_rows.append(row)

    types = [_infer_type([r[i] for r in raw_rows]) for i in range(len(header))]
    rows = tuple(
        tuple(_coerce(cell, types[i]) for i, cell in enumerate(row)) for row in raw_rows
    )
    return StatsTable(columns=tuple(zip(header, types)), rows=rows)


def _infer_type(values: Iterable[str]) -> str:
    values = list(values)
    if values and all(_is_int(v) for v in values):
        return "int"
    if values and all(_is_float(v) for v in values):
        return "float"
    return "string" if values else "string"


def _is_int(s: str) -> bool:
    try:
        int(s)
        return True
    except ValueError:
        return False


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _coerce(cell: str, typ: str):
    if typ == "int":
        return int(cell)
    if typ == "float":
        return float(cell)
    return cell
