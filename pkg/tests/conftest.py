import numpy as np
import pytest

from courtside.core import (
    AttackDirection,
    Clip,
    PlayerPosition,
    Point2,
    TeamSide,
    TrackedFrame,
)
from courtside.ingestion import generate_synthetic_play
from courtside.playbook import ROSTER, pass_simple


def make_frame(index, ball, positions, fps=25.0):
    players = tuple(PlayerPosition(pid, Point2(x, y)) for pid, (x, y) in positions.items())
    return TrackedFrame(
        frame_index=index, timestamp=index / fps, ball=Point2(*ball), players=players
    )


def spread_positions(offense_xy=None, defense_xy=None):
    """Ten well-separated spots, with optional overrides."""
    spots = {
        "o1": (30.0, 25.0), "o2": (24.0, 44.0), "o3": (12.0, 4.0),
        "o4": (20.0, 4.0), "o5": (28.0, 4.0),
        "d1": (40.0, 10.0), "d2": (40.0, 40.0), "d3": (14.5, 4.0),
        "d4": (22.5, 4.0), "d5": (30.5, 4.0),
    }
    spots.update(offense_xy or {})
    spots.update(defense_xy or {})
    return spots


def make_clip(frames, clip_id="test", fps=25.0):
    return Clip(
        clip_id=clip_id,
        fps=fps,
        frames=tuple(frames),
        rosters=tuple(ROSTER),
        offense_team=TeamSide.HOME,
        attack_direction=AttackDirection.LEFT,
    )


def static_clip(n_frames=30, ball=(29.0, 25.0), overrides=None, fps=25.0):
    positions = spread_positions(overrides)
    return make_clip(
        [make_frame(i, ball, positions, fps) for i in range(n_frames)], fps=fps
    )


@pytest.fixture
def simple_pass_clip():
    clip, events = generate_synthetic_play(pass_simple(), fps=25.0, noise_sigma=0.0, seed=1)
    return clip, events


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
