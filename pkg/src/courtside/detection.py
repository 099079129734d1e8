"""
Event detection over a tracked clip.

Possession is inferred from ball-player proximity with a hold requirement,
defender marking from a minimum-cost 5x5 assignment with hysteresis, and the
four action kinds (Pass, Cut, Screen, Shoot) from those timelines plus the
court region partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import ActionKind, Clip, Point2, RegionId, region_of

#: Sort rank for simultaneous events.
KIND_ORDER = {
    ActionKind.PASS: 0,
    ActionKind.SCREEN: 1,
    ActionKind.CUT: 2,
    ActionKind.SHOOT: 3,
}

#: Timeline markers for frames where no player controls the ball.
IN_FLIGHT = "__in_flight__"
DEAD = "__dead__"


@dataclass(frozen=True)
class DetectionParams:
    possession_radius: float = 2.5      # ft, ball-to-player acquisition range
    possession_hold: int = 3            # consecutive frames to claim the ball
    marking_hysteresis: int = 5         # frames before a marking switch sticks
    screen_proximity: float = 4.0       # ft, screener-to-defender contact range
    cut_speed: float = 6.0              # ft/s threshold for a cut
    cut_window: float = 0.5             # s, speed averaging window

    def __post_init__(self):
        for name in (
            "possession_radius",
            "possession_hold",
            "marking_hysteresis",
            "screen_proximity",
            "cut_speed",
            "cut_window",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ActionEvent:
    kind: ActionKind
    start_frame: int
    end_frame: int
    anchor_frame: int
    actor: str
    target: Optional[str] = None
    from_region: Optional[RegionId] = None
    to_region: Optional[RegionId] = None
    actor_pos: Optional[Point2] = None
    target_pos: Optional[Point2] = None

    def __post_init__(self):
        if not (self.start_frame <= self.anchor_frame <= self.end_frame):
            raise ValueError(
                f"anchor {self.anchor_frame} outside [{self.start_frame}, {self.end_frame}]"
            )
        if self.kind in (ActionKind.PASS, ActionKind.SCREEN) and self.target is None:
            raise ValueError(f"{self.kind.value} requires a target")
        if self.kind is ActionKind.CUT:
            if self.from_region is None or self.to_region is None:
                raise ValueError("Cut requires from_region and to_region")
            if self.from_region == self.to_region:
                raise ValueError("Cut must change region")

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "start": self.start_frame,
            "end": self.end_frame,
            "anchor": self.anchor_frame,
            "actor": self.actor,
            "target": self.target,
            "from_region": self.from_region.value if self.from_region else None,
            "to_region": self.to_region.value if self.to_region else None,
            "actor_pos": [self.actor_pos.x, self.actor_pos.y] if self.actor_pos else None,
            "target_pos": [self.target_pos.x, self.target_pos.y] if self.target_pos else None,
        }


@dataclass(frozen=True)
class PossessionTimeline:
    """Per-frame owner: a player_id, IN_FLIGHT, or DEAD."""

    owners: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.owners)

    def __getitem__(self, f: int) -> str:
        return self.owners[f]

    def runs(self) -> list[tuple[str, int, int]]:
        """Maximal (owner, first_frame, last_frame) runs."""
        out = []
        start = 0
        for f in range(1, len(self.owners) + 1):
            if f == len(self.owners) or self.owners[f] != self.owners[start]:
                out.append((self.owners[start], start, f - 1))
                start = f
        return out


@dataclass(frozen=True)
class MarkingMap:
    """Per-frame defender -> offensive player assignment (a 5x5 bijection)."""

    assignments: tuple[dict, ...]

    def __len__(self) -> int:
        return len(self.assignments)

    def __getitem__(self, f: int) -> dict:
        return self.assignments[f]


def compute_possession(clip: Clip, params: DetectionParams | None = None) -> PossessionTimeline:
    """Ball owner per frame.

    A player claims the ball after being its nearest player within
    ``possession_radius`` for ``possession_hold`` consecutive frames
    (distance ties go to the lexicographically smaller player_id). The claim
    persists until someone else qualifies; frames where the ball is away
    from the claimant report IN_FLIGHT, and frames before any claim DEAD.
    """
    params = params or DetectionParams()
    owners = []
    holder: Optional[str] = None
    streak_id: Optional[str] = None
    streak = 0
    for frame in clip.frames:
        nearest, dist = None, math.inf
        for p in frame.players:
            d = p.pos.distance_to(frame.ball)
            if d < dist - 1e-12 or (abs(d - dist) <= 1e-12 and (nearest is None or p.player_id < nearest)):
                nearest, dist = p.player_id, d
        if nearest is not None and dist <= params.possession_radius:
            if nearest == streak_id:
                streak += 1
            else:
                streak_id, streak = nearest, 1
        else:
            streak_id, streak = None, 0
        if streak >= params.possession_hold:
            holder = streak_id
        if holder is None:
            owners.append(DEAD)
        elif _dist_to_player(frame, holder) <= params.possession_radius:
            owners.append(holder)
        else:
            owners.append(IN_FLIGHT)
    return PossessionTimeline(owners=tuple(owners))


def _dist_to_player(frame, player_id: str) -> float:
    for p in frame.players:
        if p.player_id == player_id:
            return p.pos.distance_to(frame.ball)
    return math.inf


def compute_marking(clip: Clip, frame: int) -> dict:
    """Instantaneous minimum-total-distance pairing of the 5 defenders to the
    5 offensive players at one frame. Among equal-cost optima the
    lexicographically smallest assignment (by defender_id, then offense_id)
    is returned."""
    defenders = sorted(clip.defense_ids())
    attackers = sorted(clip.offense_ids())
    cost = _marking_cost(clip.frames[frame], defenders, attackers)
    cols = _lexicographic_min_assignment(cost)
    return {defenders[i]: attackers[cols[i]] for i in range(len(defenders))}


def _marking_cost(frame, defenders: list[str], attackers: list[str]) -> np.ndarray:
    pos = {p.player_id: p.pos for p in frame.players}
    cost = np.empty((len(defenders), len(attackers)))
    for i, d in enumerate(defenders):
        for j, a in enumerate(attackers):
            cost[i, j] = pos[d].distance_to(pos[a])
    return cost


def assignment_cost(cost: np.ndarray) -> float:
    """Minimum total cost of a one-to-one assignment."""
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


def _lexicographic_min_assignment(cost: np.ndarray) -> list[int]:
    """Column choice per row of a minimum-cost assignment; among ties, the
    lexicographically smallest column sequence.

    Fixes rows greedily: a column is kept for row i when the fixed prefix
    plus the optimum of the remaining subproblem still meets the global
    optimum (within a tolerance that only ties can satisfy).
    """
    n = cost.shape[0]
    best = assignment_cost(cost)
    tol = 1e-9 * max(1.0, abs(best))
    chosen: list[int] = []
    free_cols = list(range(n))
    prefix = 0.0
    for i in range(n):
        remaining_rows = list(range(i + 1, n))
        for j in sorted(free_cols):
            rest_cols = [c for c in free_cols if c != j]
            sub = cost[np.ix_(remaining_rows, rest_cols)] if remaining_rows else np.zeros((0, 0))
            sub_cost = assignment_cost(sub) if remaining_rows else 0.0
            if prefix + cost[i, j] + sub_cost <= best + tol:
                chosen.append(j)
                free_cols = rest_cols
                prefix += cost[i, j]
                break
        else:  # numerical fallback; should not happen
            j = free_cols.pop(0)
            chosen.append(j)
            prefix += cost[i, j]
    return chosen


def compute_marking_timeline(clip: Clip, params: DetectionParams | None = None) -> MarkingMap:
    """Marking per frame with hysteresis: the current assignment is replaced
    only after the instantaneous optimum has been strictly cheaper for
    ``marking_hysteresis`` consecutive frames."""
    params = params or DetectionParams()
    defenders = sorted(clip.defense_ids())
    attackers = sorted(clip.offense_ids())
    att_index = {a: j for j, a in enumerate(attackers)}

    current: Optional[list[int]] = None
    streak = 0
    assignments = []
    for f in range(clip.n_frames):
        cost = _marking_cost(clip.frames[f], defenders, attackers)
        if current is None:
            current = _lexicographic_min_assignment(cost)
        else:
            opt_cost = assignment_cost(cost)
            cur_cost = float(sum(cost[i, current[i]] for i in range(len(defenders))))
            if opt_cost < cur_cost - 1e-12:
                streak += 1
            else:
                streak = 0
            if streak >= params.marking_hysteresis:
                current = _lexicographic_min_assignment(cost)
                streak = 0
        assignments.append({defenders[i]: attackers[current[i]] for i in range(len(defenders))})
    return MarkingMap(assignments=tuple(assignments))


def detect_pass(clip: Clip, possession: PossessionTimeline) -> list[ActionEvent]:
    """One Pass per maximal same-team ownership transition A -> (flight)* -> B."""
    events = []
    for prev, nxt in _ownership_transitions(possession):
        a, a_last = prev
        b, b_first = nxt
        if a == b or clip.team_of(a) != clip.team_of(b):
            continue
        frame = clip.frames[a_last]
        events.append(
            ActionEvent(
                kind=ActionKind.PASS,
                start_frame=a_last,
                end_frame=b_first,
                anchor_frame=a_last,
                actor=a,
                target=b,
                actor_pos=frame.position_of(a),
                target_pos=frame.position_of(b),
            )
        )
    return events


def detect_shoot(clip: Clip, possession: PossessionTimeline) -> list[ActionEvent]:
    """One Shoot per offense-to-defense ownership change, or for a clip
    ending with the ball in flight from an offensive owner."""
    events = []
    offense = set(clip.offense_ids())
    for prev, nxt in _ownership_transitions(possession):
        a, a_last = prev
        b, b_first = nxt
        if a in offense and b not in offense:
            frame = clip.frames[a_last]
            events.append(
                ActionEvent(
                    kind=ActionKind.SHOOT,
                    start_frame=a_last,
                    end_frame=b_first,
                    anchor_frame=a_last,
                    actor=a,
                    actor_pos=frame.position_of(a),
                )
            )
    runs = possession.runs()
    if len(runs) >= 2 and runs[-1][0] == IN_FLIGHT:
        owner, _, last = runs[-2][0], runs[-2][1], runs[-2][2]
        if owner in offense:
            frame = clip.frames[last]
            events.append(
                ActionEvent(
                    kind=ActionKind.SHOOT,
                    start_frame=last,
                    end_frame=clip.n_frames - 1,
                    anchor_frame=last,
                    actor=owner,
                    actor_pos=frame.position_of(owner),
                )
            )
    return events


def _ownership_transitions(possession: PossessionTimeline):
    """Pairs ((owner_a, last_frame_a), (owner_b, first_frame_b)) for maximal
    player-to-player ownership changes, skipping IN_FLIGHT gaps."""
    runs = [r for r in possession.runs() if r[0] != DEAD]
    player_runs = []
    for owner, first, last in runs:
        if owner == IN_FLIGHT:
            continue
        # merge consecutive runs of the same player split by flight
        if player_runs and player_runs[-1][0] == owner:
            player_runs[-1] = (owner, player_runs[-1][1], last)
        else:
            player_runs.append((owner, first, last))
    for k in range(len(player_runs) - 1):
        a, _, a_last = player_runs[k]
        b, b_first, _ = player_runs[k + 1]
        yield (a, a_last), (b, b_first)


def detect_cut(
    clip: Clip,
    possession: PossessionTimeline,
    params: DetectionParams | None = None,
) -> list[ActionEvent]:
    """Cuts: an offensive non-owner whose mean speed over ``cut_window``
    meets ``cut_speed`` while ending up in a different court sub-region.

    Mean speed is displacement over the window, which tolerates tracking
    jitter better than a summed path length. One event per maximal run of
    qualifying window starts; dips shorter than half a window do not split
    a run (jitter briefly knocks real cuts under the threshold). The anchor
    is the run's first window start.
    """
    params = params or DetectionParams()
    w = max(1, int(round(params.cut_window * clip.fps)))
    n = clip.n_frames
    if n <= w:
        return []
    events = []
    direction = clip.attack_direction
    court = clip.court
    gap = max(1, w // 2)
    for pid in clip.offense_ids():
        pos = [fr.position_of(pid) for fr in clip.frames]
        qualifying = []
        for i in range(n - w):
            if possession[i] == pid:
                qualifying.append(False)
                continue
            disp = pos[i].distance_to(pos[i + w])
            speed = disp / (w / clip.fps)
            qualifying.append(speed >= params.cut_speed)
        for start, last in _runs_with_gaps(qualifying, gap):
            end = last + w
            from_region = region_of(pos[start], direction, court)
            to_region = region_of(pos[end], direction, court)
            if from_region != to_region:
                events.append(
                    ActionEvent(
                        kind=ActionKind.CUT,
                        start_frame=start,
                        end_frame=end,
                        anchor_frame=start,
                        actor=pid,
                        from_region=from_region,
                        to_region=to_region,
                        actor_pos=pos[start],
                    )
                )
    events.sort(key=lambda e: (e.anchor_frame, e.actor))
    return events


def _runs_with_gaps(flags: list[bool], gap: int) -> list[tuple[int, int]]:
    """Maximal (first, last) index runs of true flags, ignoring false gaps
    shorter than ``gap`` entries."""
    runs: list[tuple[int, int]] = []
    start = last = None
    for i, flag in enumerate(flags):
        if flag:
            if start is None:
                start = i
            last = i
        elif start is not None and i - last >= gap:
            runs.append((start, last))
            start = last = None
    if start is not None:
        runs.append((start, last))
    return runs


def detect_screen(
    clip: Clip,
    possession: PossessionTimeline,
    marking: MarkingMap,
    params: DetectionParams | None = None,
) -> list[ActionEvent]:
    """Screens: offensive non-owner S standing within ``screen_proximity`` of
    a defender D who is marking someone else, where D's marking assignment
    changes within ``marking_hysteresis`` frames of that contact."""
    params = params or DetectionParams()
    n = clip.n_frames
    events = []
    for s in clip.offense_ids():
        s_pos = [fr.position_of(s) for fr in clip.frames]
        for d in clip.defense_ids():
            d_pos = [fr.position_of(d) for fr in clip.frames]
            f = 0
            while f < n:
                close = (
                    s_pos[f].distance_to(d_pos[f]) <= params.screen_proximity
                    and possession[f] != s
                    and marking[f][d] != s
                )
                if not close:
                    f += 1
                    continue
                p0 = f
                while f < n and s_pos[f].distance_to(d_pos[f]) <= params.screen_proximity and possession[f] != s:
                    f += 1
                p1 = f - 1
                mark_at_start = marking[p0][d]
                horizon = min(n - 1, p1 + params.marking_hysteresis)
                flipped = any(marking[g][d] != mark_at_start for g in range(p0, horizon + 1))
                if flipped:
                    events.append(
                        ActionEvent(
                            kind=ActionKind.SCREEN,
                            start_frame=p0,
                            end_frame=p1,
                            anchor_frame=p0,
                            actor=s,
                            target=d,
                            actor_pos=s_pos[p0],
                            target_pos=d_pos[p0],
                        )
                    )
    events.sort(key=lambda e: (e.anchor_frame, e.actor, e.target))
    return events


def detect_all(clip: Clip, params: DetectionParams | None = None) -> list[ActionEvent]:
    """All four detectors, chronological by anchor; simultaneous events order
    Pass < Screen < Cut < Shoot."""
    params = params or DetectionParams()
    possession = compute_possession(clip, params)
    marking = compute_marking_timeline(clip, params)
    events = (
        detect_pass(clip, possession)
        + detect_screen(clip, possession, marking, params)
        + detect_cut(clip, possession, params)
        + detect_shoot(clip, possession)
    )
    events.sort(key=lambda e: (e.anchor_frame, KIND_ORDER[e.kind], e.actor))
    return events
