"""
Scripted plays with known ground truth.

Two families live here:

* detector scenarios: small choreographies (passes, cuts at threshold
  speeds, screens with and without a switch) whose expected events are
  derived by ``derive_expected_events`` - an independent frame-by-frame
  application of the detection rules working directly on the script's
  continuous-time waypoints (brute-force permutation matching for the
  defender assignment). It shares no code with the detectors.

* tactic plays: ten distinct five-player choreographies, one per tactic
  label, used to build synthetic reference sets for the classifier.
"""

from __future__ import annotations

import itertools
import math

from .core import (
    ActionKind,
    CourtSpec,
    PlayerRef,
    Point2,
    TacticLabel,
    TeamSide,
    region_of,
)
from .detection import ActionEvent, DetectionParams, KIND_ORDER
from .ingestion import (
    PlayScript,
    PossessionSpan,
    ReferenceClip,
    ReferenceSet,
    _ball_position,
    _interp_waypoints,
    generate_synthetic_play,
)

OFFENSE = [
    PlayerRef("o1", "Alan Price", TeamSide.HOME),
    PlayerRef("o2", "Ben Okafor", TeamSide.HOME),
    PlayerRef("o3", "Carl Jennings", TeamSide.HOME),
    PlayerRef("o4", "Dev Patel", TeamSide.HOME),
    PlayerRef("o5", "Eli Mercer", TeamSide.HOME),
]
DEFENSE = [
    PlayerRef("d1", "Felix Grant", TeamSide.AWAY),
    PlayerRef("d2", "Gus Harmon", TeamSide.AWAY),
    PlayerRef("d3", "Ivan Sorokin", TeamSide.AWAY),
    PlayerRef("d4", "Jack Lowe", TeamSide.AWAY),
    PlayerRef("d5", "Kade Willis", TeamSide.AWAY),
]
ROSTER = OFFENSE + DEFENSE

#: Parking spots that keep idle players out of every detector's way. Idle
#: attacker/defender pairs sit tight (2.5 ft) along the baseline strip so
#: the matching locks them; the loose defenders d1/d2 park in deep corners
#: where swapping marks across pairs never pays off.
_BENCH = {
    "o1": (30.0, 25.0),
    "o2": (24.0, 44.0),
    "o3": (12.0, 4.0),
    "o4": (20.0, 4.0),
    "o5": (28.0, 4.0),
    "d1": (40.0, 10.0),
    "d2": (40.0, 40.0),
    "d3": (14.5, 4.0),
    "d4": (22.5, 4.0),
    "d5": (30.5, 4.0),
}


def _static(pos: tuple[float, float]) -> list[tuple[float, float, float]]:
    return [(0.0, pos[0], pos[1])]


def _move(
    start: tuple[float, float],
    end: tuple[float, float],
    t0: float,
    t1: float,
) -> list[tuple[float, float, float]]:
    return [(t0, start[0], start[1]), (t1, end[0], end[1])]


def _fill_waypoints(
    overrides: dict[str, list[tuple[float, float, float]]],
) -> dict[str, list[tuple[float, float, float]]]:
    """Every rostered player gets waypoints; unspecified ones sit on their
    bench spot for the whole clip."""
    wps = dict(overrides)
    for ref in ROSTER:
        if ref.player_id not in wps:
            wps[ref.player_id] = _static(_BENCH[ref.player_id])
    return wps


# ---------------------------------------------------------------------------
# independent ground-truth derivation (frame-by-frame rule application)


def _positions_at(script: PlayScript, t: float) -> dict[str, tuple[float, float]]:
    court = CourtSpec()
    out = {}
    for ref in script.rosters:
        pts = script.waypoints.get(ref.player_id)
        x, y = _interp_waypoints(pts, t) if pts else (40.0, 25.0)
        out[ref.player_id] = (
            min(max(x, 0.0), court.length),
            min(max(y, 0.0), court.width),
        )
    return out


def derive_expected_events(
    script: PlayScript,
    fps: float,
    params: DetectionParams | None = None,
) -> list[ActionEvent]:
    """Ground truth for a noise-free rendering of the script.

    Re-applies the documented detection rules directly to the script's
    analytic positions: a possession state machine, displacement-window cut
    speeds, and exhaustive-permutation defender matching with hysteresis for
    screens. Deliberately independent of the detection module.
    """
    params = params or DetectionParams()
    court = CourtSpec()
    hoop = court.hoop_for(script.attack_direction)
    n = int(round(script.duration * fps)) + 1
    offense = [p.player_id for p in script.rosters if p.team == script.offense_team]
    defense = [p.player_id for p in script.rosters if p.team != script.offense_team]
    team = {p.player_id: p.team for p in script.rosters}

    pos = [_positions_at(script, f / fps) for f in range(n)]
    ball = [
        _ball_position(f / fps, script.possession, script, pos[f], hoop, fps)
        for f in range(n)
    ]

    # possession state machine
    owners: list[str | None] = []  # player id, or None for dead/flight
    latent = None
    streak_id, streak = None, 0
    for f in range(n):
        best, best_d = None, math.inf
        for pid in sorted(team):
            d = math.hypot(pos[f][pid][0] - ball[f][0], pos[f][pid][1] - ball[f][1])
            if d < best_d - 1e-12:
                best, best_d = pid, d
        if best is not None and best_d <= params.possession_radius:
            streak = streak + 1 if best == streak_id else 1
            streak_id = best
        else:
            streak_id, streak = None, 0
        if streak >= params.possession_hold:
            latent = streak_id
        if latent is not None:
            d_latent = math.hypot(
                pos[f][latent][0] - ball[f][0], pos[f][latent][1] - ball[f][1]
            )
            owners.append(latent if d_latent <= params.possession_radius else None)
        else:
            owners.append(None)

    events: list[ActionEvent] = []

    # ownership transitions -> passes and shoots
    holds: list[tuple[str, int, int]] = []
    for f in range(n):
        if owners[f] is None:
            continue
        if holds and holds[-1][0] == owners[f]:
            holds[-1] = (owners[f], holds[-1][1], f)
        else:
            holds.append((owners[f], f, f))
    for (a, _, a_last), (b, b_first, _) in zip(holds, holds[1:]):
        if a == b:
            continue
        if team[a] == team[b]:
            events.append(
                ActionEvent(
                    kind=ActionKind.PASS,
                    start_frame=a_last,
                    end_frame=b_first,
                    anchor_frame=a_last,
                    actor=a,
                    target=b,
                    actor_pos=Point2(*pos[a_last][a]),
                    target_pos=Point2(*pos[a_last][b]),
                )
            )
        elif team[a] == script.offense_team:
            events.append(
                ActionEvent(
                    kind=ActionKind.SHOOT,
                    start_frame=a_last,
                    end_frame=b_first,
                    anchor_frame=a_last,
                    actor=a,
                    actor_pos=Point2(*pos[a_last][a]),
                )
            )
    if holds and team[holds[-1][0]] == script.offense_team:
        a, _, a_last = holds[-1]
        if a_last < n - 1 and all(owners[f] is None for f in range(a_last + 1, n)):
            events.append(
                ActionEvent(
                    kind=ActionKind.SHOOT,
                    start_frame=a_last,
                    end_frame=n - 1,
                    anchor_frame=a_last,
                    actor=a,
                    actor_pos=Point2(*pos[a_last][a]),
                )
            )

    # cuts: displacement over the speed window, gap-tolerant runs
    w = max(1, int(round(params.cut_window * fps)))
    gap = max(1, w // 2)
    for pid in offense:
        flags = []
        for i in range(n - w):
            if owners[i] == pid:
                flags.append(False)
                continue
            dx = pos[i + w][pid][0] - pos[i][pid][0]
            dy = pos[i + w][pid][1] - pos[i][pid][1]
            speed = math.hypot(dx, dy) / (w / fps)
            flags.append(speed >= params.cut_speed)
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
        for start, last in runs:
            end = last + w
            fr = region_of(Point2(*pos[start][pid]), script.attack_direction, court)
            to = region_of(Point2(*pos[end][pid]), script.attack_direction, court)
            if fr != to:
                events.append(
                    ActionEvent(
                        kind=ActionKind.CUT,
                        start_frame=start,
                        end_frame=end,
                        anchor_frame=start,
                        actor=pid,
                        from_region=fr,
                        to_region=to,
                        actor_pos=Point2(*pos[start][pid]),
                    )
                )

    # marking with hysteresis via exhaustive permutation matching
    defense_sorted = sorted(defense)
    offense_sorted = sorted(offense)
    perms = list(itertools.permutations(range(5)))

    def frame_cost(f: int, perm) -> float:
        total = 0.0
        for i, d in enumerate(defense_sorted):
            o = offense_sorted[perm[i]]
            total += math.hypot(
                pos[f][d][0] - pos[f][o][0], pos[f][d][1] - pos[f][o][1]
            )
        return total

    def best_perm(f: int):
        best, best_cost = None, math.inf
        for perm in perms:  # lexicographic order; strict < keeps the first tie
            c = frame_cost(f, perm)
            if c < best_cost:
                best, best_cost = perm, c
        return best, best_cost

    marking: list[dict[str, str]] = []
    current, _ = best_perm(0)
    hstreak = 0
    for f in range(n):
        if f > 0:
            opt, opt_cost = best_perm(f)
            cur_cost = frame_cost(f, current)
            if opt_cost < cur_cost - 1e-12:
                hstreak += 1
            else:
                hstreak = 0
            if hstreak >= params.marking_hysteresis:
                current = opt
                hstreak = 0
        marking.append(
            {d: offense_sorted[current[i]] for i, d in enumerate(defense_sorted)}
        )

    # screens: proximity windows with a marking change nearby
    for s in offense:
        for d in defense:
            f = 0
            while f < n:
                dist = math.hypot(
                    pos[f][s][0] - pos[f][d][0], pos[f][s][1] - pos[f][d][1]
                )
                if not (
                    dist <= params.screen_proximity
                    and owners[f] != s
                    and marking[f][d] != s
                ):
                    f += 1
                    continue
                p0 = f
                while f < n and owners[f] != s and math.hypot(
                    pos[f][s][0] - pos[f][d][0], pos[f][s][1] - pos[f][d][1]
                ) <= params.screen_proximity:
                    f += 1
                p1 = f - 1
                base = marking[p0][d]
                horizon = min(n - 1, p1 + params.marking_hysteresis)
                if any(marking[g][d] != base for g in range(p0, horizon + 1)):
                    events.append(
                        ActionEvent(
                            kind=ActionKind.SCREEN,
                            start_frame=p0,
                            end_frame=p1,
                            anchor_frame=p0,
                            actor=s,
                            target=d,
                            actor_pos=Point2(*pos[p0][s]),
                            target_pos=Point2(*pos[p0][d]),
                        )
                    )

    events.sort(key=lambda e: (e.anchor_frame, KIND_ORDER[e.kind], e.actor))
    return events


def _finish(script: PlayScript, fps: float) -> PlayScript:
    script.expected_events = derive_expected_events(script, fps)
    return script


# ---------------------------------------------------------------------------
# detector scenarios


def pass_simple(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((30.0, 25.0)),
            "o2": _static((12.0, 33.0)),
        }
    )
    spans = [PossessionSpan(0.0, 2.0, "o1"), PossessionSpan(2.24, 5.0, "o2")]
    return _finish(
        PlayScript("pass-simple", wps, spans, list(ROSTER), duration=5.0),
        fps,
    )


def pass_chain(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((30.0, 25.0)),
            "o2": _static((14.0, 38.0)),
            "o3": _static((10.0, 12.0)),
        }
    )
    spans = [
        PossessionSpan(0.0, 1.6, "o1"),
        PossessionSpan(1.84, 3.6, "o2"),
        PossessionSpan(3.88, 6.0, "o3"),
    ]
    return _finish(
        PlayScript("pass-chain", wps, spans, list(ROSTER), duration=6.0),
        fps,
    )


def pass_return(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((28.0, 25.0)),
            "o2": _static((12.0, 36.0)),
        }
    )
    spans = [
        PossessionSpan(0.0, 1.6, "o1"),
        PossessionSpan(1.84, 3.6, "o2"),
        PossessionSpan(3.84, 6.0, "o1"),
    ]
    return _finish(
        PlayScript("pass-return", wps, spans, list(ROSTER), duration=6.0),
        fps,
    )


def shoot_end(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints({"o1": _static((25.0, 25.0))})
    spans = [PossessionSpan(0.0, 2.0, "o1")]
    return _finish(
        PlayScript("shoot-end", wps, spans, list(ROSTER), duration=4.0),
        fps,
    )


def pass_then_shoot(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((28.0, 25.0)),
            "o2": _static((12.0, 34.0)),
        }
    )
    spans = [PossessionSpan(0.0, 1.6, "o1"), PossessionSpan(1.84, 3.4, "o2")]
    return _finish(
        PlayScript("pass-then-shoot", wps, spans, list(ROSTER), duration=5.5),
        fps,
    )


def steal_transition(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints({"o1": _static((26.0, 25.0))})
    spans = [PossessionSpan(0.0, 2.0, "o1"), PossessionSpan(2.4, 5.0, "d2")]
    return _finish(
        PlayScript("steal-transition", wps, spans, list(ROSTER), duration=5.0),
        fps,
    )


def cut_at_speed(speed: float, fps: float = 25.0, clip_id: str | None = None) -> PlayScript:
    """Cutter moves 14 ft from the left wing straight into the top of the
    key at the requested speed; the handler just holds the ball."""
    duration = 14.0 / speed
    t0, t1 = 1.0, 1.0 + duration
    wps = _fill_waypoints(
        {
            "o1": _static((30.0, 25.0)),
            "o2": _move((22.0, 40.0), (22.0, 26.0), t0, t1),
        }
    )
    spans = [PossessionSpan(0.0, t1 + 1.5, "o1")]
    return _finish(
        PlayScript(
            clip_id or f"cut-{speed:g}fps",
            wps,
            spans,
            list(ROSTER),
            duration=t1 + 1.5,
        ),
        fps,
    )


def cut_same_region(fps: float = 25.0) -> PlayScript:
    """Fast square loop entirely inside the key: quick, but no region change."""
    wps = _fill_waypoints(
        {
            "o1": _static((30.0, 25.0)),
            "o2": [
                (0.5, 10.0, 21.0),
                (1.25, 16.0, 21.0),
                (2.25, 16.0, 29.0),
                (3.0, 10.0, 29.0),
                (4.0, 10.0, 21.0),
            ],
        }
    )
    spans = [PossessionSpan(0.0, 5.0, "o1")]
    return _finish(
        PlayScript("cut-same-region", wps, spans, list(ROSTER), duration=5.0),
        fps,
    )


def cut_and_receive(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((30.0, 25.0)),
            "o2": _move((22.0, 40.0), (22.0, 26.0), 0.6, 2.6),
        }
    )
    spans = [PossessionSpan(0.0, 3.0, "o1"), PossessionSpan(3.24, 5.5, "o2")]
    return _finish(
        PlayScript("cut-and-receive", wps, spans, list(ROSTER), duration=5.5),
        fps,
    )


def screen_switch(fps: float = 25.0) -> PlayScript:
    """Pick on the ball handler's defender; the screener's defender hedges
    toward the handler and the assignment switches. The whole action stays
    inside the key so the screener's jog never reads as a cut."""
    wps = _fill_waypoints(
        {
            "o1": _static((17.5, 25.0)),
            "o2": _move((8.0, 28.0), (17.5, 27.8), 0.4, 2.4),
            "d1": _static((18.9, 27.5)),
            "d2": _move((7.5, 30.3), (15.0, 20.0), 1.2, 3.2),
        }
    )
    spans = [PossessionSpan(0.0, 5.5, "o1")]
    return _finish(
        PlayScript("screen-switch", wps, spans, list(ROSTER), duration=5.5),
        fps,
    )


def screen_no_switch(fps: float = 25.0) -> PlayScript:
    """The would-be screener drifts past the on-ball defender but their own
    defender stays glued, so nobody switches."""
    wps = _fill_waypoints(
        {
            "o1": _static((17.5, 25.0)),
            "o2": _move((8.0, 28.0), (17.5, 27.8), 0.4, 2.4),
            "d1": _static((18.9, 27.5)),
            "d2": _move((7.5, 30.4), (17.0, 30.2), 0.4, 2.4),
        }
    )
    spans = [PossessionSpan(0.0, 5.0, "o1")]
    return _finish(
        PlayScript("screen-no-switch", wps, spans, list(ROSTER), duration=5.0),
        fps,
    )


def give_and_go(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _move((26.0, 25.0), (12.0, 25.0), 1.4, 3.4),
            "o2": _static((14.0, 38.0)),
        }
    )
    spans = [
        PossessionSpan(0.0, 1.0, "o1"),
        PossessionSpan(1.24, 3.6, "o2"),
        PossessionSpan(3.84, 5.2, "o1"),
    ]
    return _finish(
        PlayScript("give-and-go", wps, spans, list(ROSTER), duration=6.5),
        fps,
    )


def pick_then_pass(fps: float = 25.0) -> PlayScript:
    wps = _fill_waypoints(
        {
            "o1": _static((17.5, 25.0)),
            "o2": _move((8.0, 28.0), (17.5, 27.8), 0.4, 2.4),
            "o3": _static((7.0, 14.0)),
            "d1": _static((18.9, 27.5)),
            "d2": _move((7.5, 30.3), (15.0, 20.0), 1.2, 3.2),
        }
    )
    spans = [PossessionSpan(0.0, 4.2, "o1"), PossessionSpan(4.48, 5.6, "o3")]
    return _finish(
        PlayScript("pick-then-pass", wps, spans, list(ROSTER), duration=7.0),
        fps,
    )


def detector_scenarios(fps: float = 25.0) -> list[PlayScript]:
    return [
        pass_simple(fps),
        pass_chain(fps),
        pass_return(fps),
        shoot_end(fps),
        pass_then_shoot(fps),
        steal_transition(fps),
        cut_at_speed(7.0, fps, "cut-accept-7"),
        cut_at_speed(5.0, fps, "cut-reject-5"),
        cut_same_region(fps),
        cut_and_receive(fps),
        screen_switch(fps),
        screen_no_switch(fps),
        give_and_go(fps),
        pick_then_pass(fps),
    ]


# ---------------------------------------------------------------------------
# tactic plays


def _tactic_waypoints(label: TacticLabel) -> dict[str, list[tuple[float, float, float]]]:
    base: dict[TacticLabel, dict[str, list[tuple[float, float, float]]]] = {
        TacticLabel.F23: {
            "o1": _move((26, 25), (24, 18), 1.0, 4.0),
            "o2": _move((20, 40), (12, 25), 1.5, 4.5),
            "o3": _static((20, 10)),
            "o4": _move((9, 36), (9, 14), 0.5, 4.5),
            "o5": _move((9, 14), (9, 36), 0.5, 4.5),
        },
        TacticLabel.EV: {
            "o1": _move((26, 25), (10, 25), 2.0, 5.0),
            "o2": _move((20, 40), (14, 29), 0.5, 3.0),
            "o3": _move((20, 10), (14, 21), 0.5, 3.0),
            "o4": _move((9, 36), (6, 30), 1.0, 3.0),
            "o5": _move((9, 14), (6, 20), 1.0, 3.0),
        },
        TacticLabel.HK: {
            "o1": [(0.5, 26, 25), (2.5, 30, 12), (5.0, 16, 8)],
            "o2": _static((20, 40)),
            "o3": _move((20, 10), (7, 22), 1.5, 4.0),
            "o4": _static((9, 36)),
            "o5": _move((9, 14), (16, 20), 2.0, 4.5),
        },
        TacticLabel.PD: {
            "o1": _move((26, 25), (28, 33), 1.0, 3.5),
            "o2": [(1.0, 20, 40), (3.0, 16, 36), (5.0, 24, 28)],
            "o3": _move((20, 10), (26, 6), 1.0, 3.5),
            "o4": _move((9, 36), (15, 38), 0.5, 2.5),
            "o5": _static((9, 14)),
        },
        TacticLabel.PT: {
            "o1": _move((26, 25), (22, 36), 1.0, 4.0),
            "o2": _move((20, 40), (27, 28), 1.0, 4.0),
            "o3": [(0.5, 20, 10), (2.0, 24, 16), (4.5, 8, 18)],
            "o4": _move((9, 36), (17, 30), 1.5, 4.0),
            "o5": _static((9, 14)),
        },
        TacticLabel.RB: {
            "o1": [(0.5, 26, 25), (2.5, 20, 14), (4.5, 12, 12)],
            "o2": _move((20, 40), (28, 42), 1.0, 3.0),
            "o3": _static((20, 10)),
            "o4": _static((9, 36)),
            "o5": [(0.5, 9, 14), (2.0, 19, 17), (4.5, 8, 20)],
        },
        TacticLabel.SP: {
            "o1": _move((26, 25), (29, 18), 1.5, 4.0),
            "o2": [(0.5, 20, 40), (2.5, 14, 30), (4.5, 10, 26)],
            "o3": _static((20, 10)),
            "o4": [(0.5, 9, 36), (2.0, 19, 38), (4.5, 27, 40)],
            "o5": _static((9, 14)),
        },
        TacticLabel.WS: {
            "o1": _static((26, 25)),
            "o2": [(0.5, 20, 40), (2.0, 8, 32), (3.5, 6, 20), (5.0, 14, 12)],
            "o3": _static((20, 10)),
            "o4": _move((9, 36), (10, 33), 0.5, 1.5),
            "o5": _move((9, 14), (8, 8), 1.0, 3.0),
        },
        TacticLabel.WV: {
            "o1": [(0.5, 26, 25), (2.0, 22, 35), (4.0, 28, 40)],
            "o2": [(0.5, 20, 40), (2.0, 25, 30), (4.5, 20, 18)],
            "o3": [(0.5, 20, 10), (2.5, 26, 20), (4.5, 22, 30)],
            "o4": _static((9, 36)),
            "o5": _static((9, 14)),
        },
        TacticLabel.WW: {
            "o1": _move((26, 25), (28, 14), 1.5, 4.0),
            "o2": _static((20, 40)),
            "o3": [(0.5, 20, 10), (1.8, 10, 8), (3.2, 6, 18), (4.4, 10, 30), (5.5, 18, 36)],
            "o4": _static((9, 36)),
            "o5": _move((9, 14), (8, 8), 1.0, 2.5),
        },
    }
    return {k: [(t, float(x), float(y)) for t, x, y in v] for k, v in base[label].items()}


def tactic_script(
    label: TacticLabel,
    variant: int = 0,
    clip_id: str | None = None,
) -> PlayScript:
    """One scripted execution of a tactic. ``variant`` stretches the tempo a
    little and nudges the spots so reference clips are not byte-identical
    even before jitter."""
    wps = _tactic_waypoints(label)
    tempo = 1.0 + 0.08 * (variant % 3 - 1)  # 0.92 / 1.00 / 1.08
    nudge = 0.4 * ((variant % 5) - 2) / 2.0
    duration = 6.0 * tempo
    adjusted: dict[str, list[tuple[float, float, float]]] = {}
    for pid, pts in wps.items():
        adjusted[pid] = [
            (t * tempo, x + nudge, y + nudge * 0.5) for t, x, y in pts
        ]
    for ref in DEFENSE:
        mark = "o" + ref.player_id[1]
        adjusted[ref.player_id] = [
            (min(t + 0.2, duration), x + 2.5, y) for t, x, y in adjusted[mark]
        ]
    spans = [PossessionSpan(0.0, 0.75 * duration, "o1")]
    return PlayScript(
        clip_id or f"{label.value.lower()}-v{variant}",
        adjusted,
        spans,
        list(ROSTER),
        duration=duration,
        tactic_label=label,
    )


def build_reference_set(
    per_label: int = 15,
    fps: float = 8.0,
    noise_sigma: float = 1.5,
    seed: int = 0,
) -> ReferenceSet:
    """Synthetic annotated reference set: ``per_label`` jittered renderings
    of each tactic play, reduced to normalized offensive trajectories."""
    from .tactics import normalize_trajectories

    clips = []
    for li, label in enumerate(TacticLabel):
        for variant in range(per_label):
            script = tactic_script(label, variant)
            clip, _ = generate_synthetic_play(
                script,
                fps=fps,
                noise_sigma=noise_sigma,
                seed=seed * 100003 + li * 1009 + variant,
            )
            clips.append(
                ReferenceClip(
                    label=label,
                    trajectories=tuple(normalize_trajectories(clip)),
                )
            )
    return ReferenceSet(clips=tuple(clips))
