"""
Domain model: court geometry, tracked frames, clips, and the shared enums.

Coordinates are in feet on a 94 x 50 court with the origin at the left
baseline-sideline corner. All half-court region geometry is expressed for a
team attacking the LEFT hoop; points for right-attacking teams are mirrored
into that canonical frame before region lookup.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

COURT_LENGTH_FT = 94.0
COURT_WIDTH_FT = 50.0
HOOP_FROM_BASELINE_FT = 5.25
BOUNDS_TOLERANCE_FT = 2.0
DEFAULT_FPS = 25.0


class TeamSide(str, enum.Enum):
    HOME = "home"
    AWAY = "away"

    def other(self) -> "TeamSide":
        return TeamSide.AWAY if self is TeamSide.HOME else TeamSide.HOME


class AttackDirection(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class ActionKind(str, enum.Enum):
    PASS = "Pass"
    CUT = "Cut"
    SCREEN = "Screen"
    SHOOT = "Shoot"


class RegionId(str, enum.Enum):
    KEY = "Key"
    LEFT_LOW_POST = "LeftLowPost"
    RIGHT_LOW_POST = "RightLowPost"
    HIGH_POST = "HighPost"
    LEFT_WING = "LeftWing"
    RIGHT_WING = "RightWing"
    LEFT_CORNER = "LeftCorner"
    RIGHT_CORNER = "RightCorner"
    TOP_OF_KEY = "TopOfKey"
    BACKCOURT = "Backcourt"


#: Short display names used when rendering actions as text.
REGION_DISPLAY_NAMES = {
    RegionId.KEY: "Key",
    RegionId.LEFT_LOW_POST: "Left Post",
    RegionId.RIGHT_LOW_POST: "Right Post",
    RegionId.HIGH_POST: "High Post",
    RegionId.LEFT_WING: "Left Wing",
    RegionId.RIGHT_WING: "Right Wing",
    RegionId.LEFT_CORNER: "Left Corner",
    RegionId.RIGHT_CORNER: "Right Corner",
    RegionId.TOP_OF_KEY: "Top",
    RegionId.BACKCOURT: "Backcourt",
}


class TacticLabel(str, enum.Enum):
    F23 = "F23"
    EV = "EV"
    HK = "HK"
    PD = "PD"
    PT = "PT"
    RB = "RB"
    SP = "SP"
    WS = "WS"
    WV = "WV"
    WW = "WW"

    @property
    def display_name(self) -> str:
        return _TACTIC_DISPLAY[self]


_TACTIC_DISPLAY = {
    TacticLabel.F23: "2-3 Flex",
    TacticLabel.EV: "Elevator",
    TacticLabel.HK: "Hawk",
    TacticLabel.PD: "Pin-Down",
    TacticLabel.PT: "Princeton",
    TacticLabel.RB: "Back-Side Pick and Roll",
    TacticLabel.SP: "Side-Pick Slip and Pop",
    TacticLabel.WS: "Warrior Single",
    TacticLabel.WV: "Weave",
    TacticLabel.WW: "Wing-Wheel",
}


class OutOfBoundsError(ValueError):
    """Point lies outside the court plus the allowed tolerance."""


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box in video pixel space."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"bounding box needs positive size, got {self.w}x{self.h}")

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)


@dataclass(frozen=True)
class PlayerRef:
    player_id: str
    full_name: str
    team: TeamSide


@dataclass(frozen=True)
class PlayerPosition:
    player_id: str
    pos: Point2
    bbox: Optional[BoundingBox] = None


@dataclass(frozen=True)
class TrackedFrame:
    frame_index: int
    timestamp: float
    ball: Point2
    players: tuple[PlayerPosition, ...]
    ball_bbox: Optional[BoundingBox] = None

    def position_of(self, player_id: str) -> Point2:
        for p in self.players:
            if p.player_id == player_id:
                return p.pos
        raise KeyError(f"player {player_id!r} not in frame {self.frame_index}")


@dataclass(frozen=True)
class Trajectory:
    """Ordered (frame_index, position) samples for one tracked entity."""

    samples: tuple[tuple[int, Point2], ...]

    def __post_init__(self):
        if not self.samples:
            raise ValueError("trajectory must be non-empty")
        idx = [f for f, _ in self.samples]
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("trajectory frame indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.samples)

    def points(self) -> list[tuple[float, float]]:
        return [(p.x, p.y) for _, p in self.samples]


@dataclass(frozen=True)
class CourtSpec:
    """Court dimensions plus the ordered half-court region partition.

    ``regions`` holds (RegionId, polygon) entries for the canonical
    left-attacking half. A region may contribute several polygons; all ten
    RegionId values must appear. Boundary points resolve to the entry that
    appears first in the list.
    """

    length: float = COURT_LENGTH_FT
    width: float = COURT_WIDTH_FT
    hoop_left: Point2 = field(default_factory=lambda: Point2(HOOP_FROM_BASELINE_FT, 25.0))
    hoop_right: Point2 = field(
        default_factory=lambda: Point2(COURT_LENGTH_FT - HOOP_FROM_BASELINE_FT, 25.0)
    )
    regions: tuple[tuple[RegionId, tuple[tuple[float, float], ...]], ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.regions is None:
            object.__setattr__(self, "regions", default_region_table())
        present = {rid for rid, _ in self.regions}
        if present != set(RegionId):
            missing = sorted(r.value for r in set(RegionId) - present)
            raise ValueError(f"region table must cover all 10 regions, missing {missing}")

    def hoop_for(self, direction: AttackDirection) -> Point2:
        return self.hoop_left if direction is AttackDirection.LEFT else self.hoop_right


def _rect(x0: float, y0: float, x1: float, y1: float) -> tuple[tuple[float, float], ...]:
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def default_region_table() -> tuple[tuple[RegionId, tuple[tuple[float, float], ...]], ...]:
    """Ten-region partition of the attacking half, x in [0, 47], y in [0, 50].

    Axis-aligned rectangles; HighPost flanks the key on both sides so it
    appears twice. The wings are L-shaped to tile around HighPost and the
    corners. The list order doubles as the boundary tie-break order.
    """
    left_wing = ((19.0, 33.0), (31.0, 33.0), (31.0, 50.0), (14.0, 50.0), (14.0, 42.0), (19.0, 42.0))
    right_wing = ((14.0, 0.0), (31.0, 0.0), (31.0, 17.0), (19.0, 17.0), (19.0, 8.0), (14.0, 8.0))
    return (
        (RegionId.KEY, _rect(0.0, 17.0, 19.0, 33.0)),
        (RegionId.LEFT_LOW_POST, _rect(0.0, 33.0, 13.0, 42.0)),
        (RegionId.RIGHT_LOW_POST, _rect(0.0, 8.0, 13.0, 17.0)),
        (RegionId.HIGH_POST, _rect(13.0, 33.0, 19.0, 42.0)),
        (RegionId.HIGH_POST, _rect(13.0, 8.0, 19.0, 17.0)),
        (RegionId.LEFT_CORNER, _rect(0.0, 42.0, 14.0, 50.0)),
        (RegionId.RIGHT_CORNER, _rect(0.0, 0.0, 14.0, 8.0)),
        (RegionId.LEFT_WING, left_wing),
        (RegionId.RIGHT_WING, right_wing),
        (RegionId.TOP_OF_KEY, _rect(19.0, 17.0, 31.0, 33.0)),
        (RegionId.BACKCOURT, _rect(31.0, 0.0, 47.0, 50.0)),
    )


@dataclass(frozen=True)
class Clip:
    clip_id: str
    fps: float
    frames: tuple[TrackedFrame, ...]
    rosters: tuple[PlayerRef, ...]
    offense_team: TeamSide
    attack_direction: AttackDirection
    court: CourtSpec = field(default_factory=CourtSpec)
    video_uri: Optional[str] = None

    def roster_by_id(self) -> dict[str, PlayerRef]:
        return {p.player_id: p for p in self.rosters}

    def team_of(self, player_id: str) -> TeamSide:
        return self.roster_by_id()[player_id].team

    def offense_ids(self) -> list[str]:
        return [p.player_id for p in self.rosters if p.team == self.offense_team]

    def defense_ids(self) -> list[str]:
        return [p.player_id for p in self.rosters if p.team != self.offense_team]

    def name_of(self, player_id: str) -> str:
        return self.roster_by_id()[player_id].full_name

    @property
    def n_frames(self) -> int:
        return len(self.frames)

    @property
    def first_frame_index(self) -> int:
        return self.frames[0].frame_index

    @property
    def last_frame_index(self) -> int:
        return self.frames[-1].frame_index


def _point_on_segment(px, py, ax, ay, bx, by, eps=1e-9) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if abs(cross) > eps * max(1.0, abs(bx - ax) + abs(by - ay)):
        return False
    return min(ax, bx) - eps <= px <= max(ax, bx) + eps and min(ay, by) - eps <= py <= max(ay, by) + eps


def point_in_polygon(x: float, y: float, polygon: Sequence[tuple[float, float]]) -> bool:
    """Boundary-inclusive even-odd containment test."""
    n = len(polygon)
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        if _point_on_segment(x, y, ax, ay, bx, by):
            return True
    inside = False
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        if (ay > y) != (by > y):
            x_cross = ax + (y - ay) * (bx - ax) / (by - ay)
            if x < x_cross:
                inside = not inside
    return inside


def mirror_point(point: Point2, court: CourtSpec | None = None) -> Point2:
    """Reflect across the midcourt line (right-attacking -> canonical left)."""
    length = court.length if court else COURT_LENGTH_FT
    return Point2(length - point.x, point.y)


def region_of(
    point: Point2,
    attack_direction: AttackDirection | str,
    court: CourtSpec | None = None,
) -> RegionId:
    """Region containing ``point`` for a team attacking in ``attack_direction``.

    The point is mirrored into the canonical left half when the attack goes
    right; anything on the far side of midcourt is Backcourt. Points outside
    court bounds by more than the tolerance raise OutOfBoundsError; points
    within the tolerance are clamped onto the court first.
    """
    court = court or CourtSpec()
    direction = AttackDirection(attack_direction)
    x, y = point.x, point.y
    if (
        x < -BOUNDS_TOLERANCE_FT
        or x > court.length + BOUNDS_TOLERANCE_FT
        or y < -BOUNDS_TOLERANCE_FT
        or y > court.width + BOUNDS_TOLERANCE_FT
    ):
        raise OutOfBoundsError(f"point ({x}, {y}) outside court bounds + {BOUNDS_TOLERANCE_FT} ft")
    x = min(max(x, 0.0), court.length)
    y = min(max(y, 0.0), court.width)
    if direction is AttackDirection.RIGHT:
        x = court.length - x
    if x > court.length / 2.0:
        return RegionId.BACKCOURT
    for rid, polygon in court.regions:
        if point_in_polygon(x, y, polygon):
            return rid
    raise OutOfBoundsError(
        f"point ({x}, {y}) not covered by the region table; table has a gap"
    )


def validate_clip(clip: Clip) -> list[str]:
    """Check every Clip/TrackedFrame invariant, returning human-readable
    violations (empty list means the clip is well-formed)."""
    violations: list[str] = []
    if not clip.frames:
        return ["clip has no frames"]
    if clip.fps <= 0:
        violations.append(f"fps must be positive, got {clip.fps}")

    ids = [p.player_id for p in clip.rosters]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        violations.append(f"duplicate roster player_id(s): {dupes}")
    by_team = {TeamSide.HOME: 0, TeamSide.AWAY: 0}
    for p in clip.rosters:
        by_team[p.team] += 1
    for team, count in by_team.items():
        if count != 5:
            violations.append(f"roster: expected 5 {team.value} players, got {count}")

    rostered = set(ids)
    prev_index = None
    for frame in clip.frames:
        tag = f"frame {frame.frame_index}"
        if prev_index is not None and frame.frame_index != prev_index + 1:
            violations.append(
                f"{tag}: frame_index not contiguous (previous was {prev_index})"
            )
        prev_index = frame.frame_index
        if len(frame.players) != 10:
            violations.append(f"{tag}: expected 10 players, got {len(frame.players)}")
        teams = {TeamSide.HOME: 0, TeamSide.AWAY: 0}
        for entry in frame.players:
            if entry.player_id not in rostered:
                violations.append(f"{tag}: unrostered player {entry.player_id!r}")
                continue
            teams[clip.team_of(entry.player_id)] += 1
            if not _within_bounds(entry.pos, clip.court):
                violations.append(
                    f"{tag}: player {entry.player_id} at ({entry.pos.x}, {entry.pos.y}) out of bounds"
                )
        if len(frame.players) == 10 and (teams[TeamSide.HOME] != 5 or teams[TeamSide.AWAY] != 5):
            violations.append(
                f"{tag}: expected 5 players per team, got "
                f"{teams[TeamSide.HOME]} home / {teams[TeamSide.AWAY]} away"
            )
        if not _within_bounds(frame.ball, clip.court):
            violations.append(f"{tag}: ball at ({frame.ball.x}, {frame.ball.y}) out of bounds")

    offense = clip.offense_ids()
    if len(offense) != 5:
        violations.append(f"offense team must have exactly 5 roster entries, got {len(offense)}")
    return violations


def _within_bounds(p: Point2, court: CourtSpec) -> bool:
    return (
        -BOUNDS_TOLERANCE_FT <= p.x <= court.length + BOUNDS_TOLERANCE_FT
        and -BOUNDS_TOLERANCE_FT <= p.y <= court.width + BOUNDS_TOLERANCE_FT
    )
