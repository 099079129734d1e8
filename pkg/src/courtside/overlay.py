"""
Overlay compilation: turn actions plus an explanation plan into declarative,
frame-anchored drawing primitives that any renderer (the bundled web UI, or
a video compositor) can consume.

Per action kind the primitives are fixed:

* Pass:   2 rotating circle markers (sender, receiver) + 1 ground arrow
          + 2 flash-forward path previews + pause cue
* Cut:    1 ground arrow + target-region highlight + dashed "before" path
          + solid "after" preview + pause cue
* Screen: 1 ground arrow + screen wall glyph + pause cue
* Shoot:  1 circle marker on the shooter + pause cue

A joined cut-and-receive group contributes both members' primitives under a
single pause.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import ActionKind, Clip, Point2, TeamSide
from .detection import ActionEvent
from .narrative import ActionGroup, ExplanationPlan, Perspective, Segment

DEFAULT_PALETTE = {TeamSide.HOME: "#2f6fce", TeamSide.AWAY: "#d8443c"}


@dataclass(frozen=True)
class FlashForwardParams:
    horizon: float = 1.5  # seconds of future trajectory to preview

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")


@dataclass(frozen=True)
class Primitive:
    """One drawing instruction, active on frames [frame_start, frame_end]."""

    type: str
    frame_start: int
    frame_end: int
    data: dict

    def to_json(self) -> dict:
        return {"type": self.type, "frame_start": self.frame_start, "frame_end": self.frame_end, **self.data}


@dataclass(frozen=True)
class OverlayEntry:
    action_index: int
    pause_frame: int
    primitives: tuple[Primitive, ...]
    segment: Optional[Segment] = None

    def to_json(self) -> dict:
        return {
            "action": self.action_index,
            "pause": self.pause_frame,
            "primitives": [p.to_json() for p in self.primitives],
            "segment": self.segment.to_json() if self.segment else None,
        }


@dataclass(frozen=True)
class OverlayScript:
    clip_id: str
    perspective: Perspective
    entries: tuple[OverlayEntry, ...]

    def to_json(self) -> dict:
        return {
            "clip_id": self.clip_id,
            "perspective": self.perspective.value,
            "entries": [e.to_json() for e in self.entries],
        }


def _team_color(clip: Clip, player_id: str, palette: dict[TeamSide, str]) -> str:
    return palette[clip.team_of(player_id)]


def _frame_pos(clip: Clip, player_id: str, frame: int) -> Point2:
    return clip.frames[frame].position_of(player_id)


def _path_points(clip: Clip, player_id: str, start: int, end: int) -> list[list[float]]:
    start = max(0, start)
    end = min(clip.n_frames - 1, end)
    return [
        [clip.frames[f].position_of(player_id).x, clip.frames[f].position_of(player_id).y]
        for f in range(start, end + 1)
    ]


def overlay_for_action(
    event: ActionEvent,
    clip: Clip,
    params: FlashForwardParams | None = None,
    palette: dict[TeamSide, str] | None = None,
) -> list[Primitive]:
    """Drawing primitives for one event, pause cue included."""
    params = params or FlashForwardParams()
    palette = palette or DEFAULT_PALETTE
    if event.anchor_frame >= clip.n_frames:
        raise ValueError(
            f"event anchored at frame {event.anchor_frame} but clip has {clip.n_frames}"
        )
    horizon = int(round(params.horizon * clip.fps))
    anchor = event.anchor_frame
    until = min(clip.n_frames - 1, event.end_frame)
    future = min(clip.n_frames - 1, anchor + horizon)
    prims: list[Primitive] = []

    if event.kind is ActionKind.PASS:
        sender_pos = _frame_pos(clip, event.actor, anchor)
        receiver_pos = _frame_pos(clip, event.target, anchor)
        for pid, role in ((event.actor, "sender"), (event.target, "receiver")):
            prims.append(
                Primitive(
                    "circle_marker",
                    anchor,
                    until,
                    {
                        "player": pid,
                        "role": role,
                        "rotating": True,
                        "color": _team_color(clip, pid, palette),
                    },
                )
            )
        prims.append(
            Primitive(
                "ground_arrow",
                anchor,
                until,
                {
                    "from": [sender_pos.x, sender_pos.y],
                    "to": [receiver_pos.x, receiver_pos.y],
                    "color": _team_color(clip, event.actor, palette),
                },
            )
        )
        for pid in (event.actor, event.target):
            prims.append(
                Primitive(
                    "path_preview",
                    anchor,
                    future,
                    {
                        "player": pid,
                        "phase": "after",
                        "points": _path_points(clip, pid, anchor, future),
                    },
                )
            )
    elif event.kind is ActionKind.CUT:
        start_pos = _frame_pos(clip, event.actor, event.start_frame)
        end_pos = _frame_pos(clip, event.actor, until)
        prims.append(
            Primitive(
                "ground_arrow",
                anchor,
                until,
                {
                    "from": [start_pos.x, start_pos.y],
                    "to": [end_pos.x, end_pos.y],
                    "color": _team_color(clip, event.actor, palette),
                },
            )
        )
        prims.append(
            Primitive("area_highlight", anchor, until, {"region": event.to_region.value})
        )
        prims.append(
            Primitive(
                "path_preview",
                event.start_frame,
                anchor,
                {
                    "player": event.actor,
                    "phase": "before",
                    "points": _path_points(clip, event.actor, event.start_frame, anchor),
                },
            )
        )
        prims.append(
            Primitive(
                "path_preview",
                anchor,
                future,
                {
                    "player": event.actor,
                    "phase": "after",
                    "points": _path_points(clip, event.actor, anchor, future),
                },
            )
        )
    elif event.kind is ActionKind.SCREEN:
        s_pos = _frame_pos(clip, event.actor, anchor)
        d_pos = _frame_pos(clip, event.target, anchor)
        dx, dy = d_pos.x - s_pos.x, d_pos.y - s_pos.y
        norm = math.hypot(dx, dy) or 1.0
        prims.append(
            Primitive(
                "ground_arrow",
                anchor,
                until,
                {
                    "from": [s_pos.x, s_pos.y],
                    "to": [d_pos.x, d_pos.y],
                    "color": _team_color(clip, event.actor, palette),
                },
            )
        )
        prims.append(
            Primitive(
                "screen_wall",
                anchor,
                until,
                {"pos": [s_pos.x, s_pos.y], "normal": [dx / norm, dy / norm]},
            )
        )
    else:  # Shoot
        prims.append(
            Primitive(
                "circle_marker",
                anchor,
                until,
                {
                    "player": event.actor,
                    "role": "sender",
                    "rotating": True,
                    "color": _team_color(clip, event.actor, palette),
                },
            )
        )
    prims.append(Primitive("pause_cue", anchor, anchor, {"frame": anchor}))
    return prims


def _chat_placement(clip: Clip, player_id: str, frame: int, video_height: Optional[float]) -> str:
    """"above" when the player sits in the lower half of the video frame so
    the bubble stays on screen, else "below". Falls back to the court
    half when no bounding boxes exist."""
    fr = clip.frames[frame]
    for p in fr.players:
        if p.player_id == player_id and p.bbox is not None:
            height = video_height or _infer_video_height(clip)
            if height:
                _, cy = p.bbox.center
                return "above" if cy > height / 2.0 else "below"
    pos = fr.position_of(player_id)
    return "above" if pos.y < clip.court.width / 2.0 else "below"


def _infer_video_height(clip: Clip) -> Optional[float]:
    bottom = 0.0
    for fr in clip.frames:
        for p in fr.players:
            if p.bbox is not None:
                bottom = max(bottom, p.bbox.y + p.bbox.h)
        if fr.ball_bbox is not None:
            bottom = max(bottom, fr.ball_bbox.y + fr.ball_bbox.h)
    return bottom or None


def compile_script(
    groups: Sequence[ActionGroup],
    plan: ExplanationPlan,
    clip: Clip,
    params: FlashForwardParams | None = None,
    palette: dict[TeamSide, str] | None = None,
    video_height: Optional[float] = None,
) -> OverlayScript:
    """One overlay entry per action group, each pausing playback at the
    group's anchor and carrying its explanation segment. First-person plans
    add a chat anchor per dialogue line; third-person chat lives in the
    renderer's static panel."""
    params = params or FlashForwardParams()
    palette = palette or DEFAULT_PALETTE
    if len(plan.segments) != len(groups):
        raise ValueError(
            f"plan has {len(plan.segments)} segments for {len(groups)} actions"
        )
    name_to_id = {p.full_name: p.player_id for p in clip.rosters}
    entries = []
    for idx, (group, segment) in enumerate(zip(groups, plan.segments)):
        prims: list[Primitive] = []
        for k, event in enumerate(group.events):
            event_prims = overlay_for_action(event, clip, params, palette)
            if k > 0:  # one pause per entry
                event_prims = [p for p in event_prims if p.type != "pause_cue"]
            prims.extend(event_prims)
        if plan.perspective is Perspective.FIRST:
            for speaker, _ in segment.lines:
                pid = name_to_id.get(speaker)
                if pid is None:
                    continue
                prims.append(
                    Primitive(
                        "chat_anchor",
                        group.anchor_frame,
                        min(clip.n_frames - 1, group.events[-1].end_frame),
                        {
                            "player": pid,
                            "placement": _chat_placement(
                                clip, pid, group.anchor_frame, video_height
                            ),
                        },
                    )
                )
        entries.append(
            OverlayEntry(
                action_index=idx,
                pause_frame=group.anchor_frame,
                primitives=tuple(prims),
                segment=segment,
            )
        )
    entries.sort(key=lambda e: e.pause_frame)
    return OverlayScript(clip_id=clip.clip_id, perspective=plan.perspective, entries=tuple(entries))
