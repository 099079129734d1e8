"""
Action filtering: keep the events that matter to the tactic.

Pass and Shoot are primary actions and always survive. Cut and Screen are
secondary: a cut survives only when the cutter actually receives the next
pass soon after finishing the cut, and a screen only when it is set close to
where the surrounding passes leave or arrive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import ActionKind
from .detection import ActionEvent

PRIMARY_KINDS = (ActionKind.PASS, ActionKind.SHOOT)


@dataclass(frozen=True)
class FilterParams:
    cut_receive_window: float = 2.0       # s between cut end and the receiving pass
    screen_relevance_radius: float = 12.0  # ft from screen spot to a pass endpoint

    def __post_init__(self):
        if self.cut_receive_window <= 0 or self.screen_relevance_radius <= 0:
            raise ValueError("filter params must be positive")


@dataclass(frozen=True)
class Interval:
    index: int
    end_primary: Optional[ActionEvent]  # None for the trailing open interval
    secondaries: tuple[ActionEvent, ...]


@dataclass(frozen=True)
class ActionList:
    primaries: tuple[ActionEvent, ...]
    intervals: tuple[Interval, ...]

    def all_events(self) -> list[ActionEvent]:
        events = list(self.primaries)
        for iv in self.intervals:
            events.extend(iv.secondaries)
        events.sort(key=lambda e: e.anchor_frame)
        return events


def build_intervals(events: Sequence[ActionEvent]) -> ActionList:
    """Split chronological events into pass/shoot-delimited intervals.

    Interval i ends at primary i; each secondary goes into the interval of
    the first primary whose anchor is at or after its own. Secondaries after
    the last primary form a trailing open interval.
    """
    primaries = tuple(e for e in events if e.kind in PRIMARY_KINDS)
    buckets: list[list[ActionEvent]] = [[] for _ in range(len(primaries) + 1)]
    for e in events:
        if e.kind in PRIMARY_KINDS:
            continue
        slot = len(primaries)
        for k, p in enumerate(primaries):
            if p.anchor_frame >= e.anchor_frame:
                slot = k
                break
        buckets[slot].append(e)
    intervals = tuple(
        Interval(
            index=k,
            end_primary=primaries[k] if k < len(primaries) else None,
            secondaries=tuple(buckets[k]),
        )
        for k in range(len(primaries) + 1)
        if buckets[k] or k < len(primaries)
    )
    return ActionList(primaries=primaries, intervals=intervals)


def receiving_pass_for_cut(
    cut: ActionEvent,
    primaries: Sequence[ActionEvent],
    window_frames: int,
) -> Optional[ActionEvent]:
    """The pass that justifies a cut: the first primary at or after the cut's
    anchor, provided it is a Pass to the cutter released no later than
    ``window_frames`` after the cut ends."""
    for p in primaries:
        if p.anchor_frame >= cut.anchor_frame:
            if (
                p.kind is ActionKind.PASS
                and p.target == cut.actor
                and p.anchor_frame <= cut.end_frame + window_frames
            ):
                return p
            return None
    return None


def filter_actions(
    actions: ActionList,
    params: FilterParams | None = None,
    fps: float = 25.0,
) -> list[ActionEvent]:
    """Drop ineffective secondaries, keep all primaries, return chronological.

    * Cut: kept iff its actor receives the immediately following pass within
      ``cut_receive_window`` seconds of the cut's end.
    * Screen: kept iff its anchor position is within
      ``screen_relevance_radius`` of the preceding pass's sender position or
      the following pass's receiver position. At the edges only the existing
      side is consulted.
    """
    params = params or FilterParams()
    window_frames = int(round(params.cut_receive_window * fps))
    primaries = actions.primaries
    passes = [p for p in primaries if p.kind is ActionKind.PASS]

    kept: list[ActionEvent] = list(primaries)
    for iv in actions.intervals:
        for e in iv.secondaries:
            if e.kind is ActionKind.CUT:
                if receiving_pass_for_cut(e, primaries, window_frames) is not None:
                    kept.append(e)
            elif e.kind is ActionKind.SCREEN:
                if _screen_is_relevant(e, passes, params.screen_relevance_radius):
                    kept.append(e)
    kept.sort(key=lambda e: e.anchor_frame)
    return kept


def _screen_is_relevant(screen: ActionEvent, passes: list[ActionEvent], radius: float) -> bool:
    if screen.actor_pos is None:
        return False
    before = None
    after = None
    for p in passes:
        if p.anchor_frame <= screen.anchor_frame:
            before = p
        if p.anchor_frame >= screen.anchor_frame and after is None:
            after = p
    if before is not None and before.actor_pos is not None:
        if screen.actor_pos.distance_to(before.actor_pos) <= radius:
            return True
    if after is not None and after.target_pos is not None:
        if screen.actor_pos.distance_to(after.target_pos) <= radius:
            return True
    return False


def filter_events(
    events: Sequence[ActionEvent],
    params: FilterParams | None = None,
    fps: float = 25.0,
) -> list[ActionEvent]:
    """Convenience: build intervals and filter in one step."""
    return filter_actions(build_intervals(events), params, fps)


def annotate_events(
    events: Sequence[ActionEvent],
    params: FilterParams | None = None,
    fps: float = 25.0,
) -> list[dict]:
    """Diagnostics export: every event with ``"filtered": true`` when the
    filter removed it."""
    kept_ids = {id(e) for e in filter_events(events, params, fps)}
    out = []
    for e in events:
        d = e.to_json()
        d["filtered"] = id(e) not in kept_ids
        out.append(d)
    return out
