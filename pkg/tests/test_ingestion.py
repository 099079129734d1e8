import json

import pytest

from courtside.core import TacticLabel
from courtside.ingestion import (
    ParseError,
    PlayScript,
    PossessionSpan,
    load_clip,
    load_play_script,
    load_reference_set,
    load_stats_table,
    save_clip,
    save_play_script,
    save_reference_set,
)
from courtside.playbook import ROSTER, build_reference_set, pass_simple, tactic_script
from courtside.ingestion import generate_synthetic_play


def minimal_clip_doc(fps=25.0, drop_ball_in_frame=None):
    rosters = [
        {"player_id": p.player_id, "full_name": p.full_name, "team": p.team.value}
        for p in ROSTER
    ]
    spots = {
        "o1": [30, 25], "o2": [24, 44], "o3": [12, 4], "o4": [20, 4], "o5": [28, 4],
        "d1": [40, 10], "d2": [40, 40], "d3": [14.5, 4], "d4": [22.5, 4], "d5": [30.5, 4],
    }
    frames = []
    for i in range(2):
        frame = {
            "i": i,
            "t": i / 25.0,
            "ball": [29.0, 25.0],
            "ball_bbox": None,
            "players": [{"id": pid, "pos": xy, "bbox": None} for pid, xy in spots.items()],
        }
        if drop_ball_in_frame == i:
            del frame["ball"]
        frames.append(frame)
    doc = {
        "schema": "courtside-clip/1",
        "clip_id": "mini",
        "offense_team": "home",
        "attack_direction": "left",
        "rosters": rosters,
        "frames": frames,
    }
    if fps is not None:
        doc["fps"] = fps
    return doc


class TestClipIO:
    def test_minimal_document_loads(self):
        clip = load_clip(json.dumps(minimal_clip_doc()))
        assert clip.n_frames == 2
        assert clip.clip_id == "mini"

    def test_missing_ball_names_the_frame(self):
        with pytest.raises(ParseError, match=r"frames\[1\]"):
            load_clip(json.dumps(minimal_clip_doc(drop_ball_in_frame=1)))

    def test_absent_fps_defaults_to_25(self):
        clip = load_clip(json.dumps(minimal_clip_doc(fps=None)))
        assert clip.fps == 25.0

    def test_schema_mismatch(self):
        doc = minimal_clip_doc()
        doc["schema"] = "courtside-clip/2"
        with pytest.raises(ParseError, match="schema"):
            load_clip(json.dumps(doc))

    def test_invalid_json_reports_line(self):
        with pytest.raises(ParseError, match="line"):
            load_clip(b'{"schema": "courtside-clip/1",\n  "clip_id": }')

    def test_round_trip_is_identity(self):
        clip, _ = generate_synthetic_play(pass_simple(), fps=25.0, noise_sigma=0.4, seed=9)
        again = load_clip(save_clip(clip))
        assert again == clip

    def test_save_is_deterministic(self):
        script = pass_simple()
        a, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.5, seed=3)
        b, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.5, seed=3)
        assert save_clip(a) == save_clip(b)


class TestReferenceIO:
    def test_round_trip(self):
        refset = build_reference_set(per_label=1, fps=8.0, noise_sigma=0.5, seed=1)
        again = load_reference_set(save_reference_set(refset))
        assert len(again) == len(refset)
        assert again.clips[0].label == refset.clips[0].label

    def test_four_trajectories_rejected(self):
        refset = build_reference_set(per_label=1, fps=8.0, noise_sigma=0.0, seed=0)
        doc = json.loads(save_reference_set(refset))
        doc["clips"][0]["trajectories"] = doc["clips"][0]["trajectories"][:4]
        with pytest.raises(ParseError, match="expected 5 trajectories"):
            load_reference_set(json.dumps(doc))

    def test_unknown_label_lists_valid_codes(self):
        refset = build_reference_set(per_label=1, fps=8.0, noise_sigma=0.0, seed=0)
        doc = json.loads(save_reference_set(refset))
        doc["clips"][0]["label"] = "XX"
        with pytest.raises(ParseError) as err:
            load_reference_set(json.dumps(doc))
        for code in ("F23", "EV", "HK", "PD", "PT", "RB", "SP", "WS", "WV", "WW"):
            assert code in str(err.value)

    def test_one_clip_per_label(self):
        refset = build_reference_set(per_label=1, fps=8.0, noise_sigma=0.0, seed=0)
        assert len(refset) == 10
        assert len(refset.labels()) == 10


class TestStatsIO:
    def test_typed_columns(self):
        table = load_stats_table(b"player,fouls\nA,2\nB,3")
        assert table.columns == (("player", "string"), ("fouls", "int"))
        assert table.rows == (("A", 2), ("B", 3))

    def test_ragged_row_reports_number(self):
        with pytest.raises(ParseError, match="row 3"):
            load_stats_table(b"a,b\n1,2\n3")

    def test_empty_body_keeps_columns(self):
        table = load_stats_table(b"a,b\n")
        assert table.column_names() == ["a", "b"]
        assert table.rows == ()

    def test_float_fallback(self):
        table = load_stats_table(b"v\n1\n2.5")
        assert table.column_type("v") == "float"


class TestSyntheticGenerator:
    def test_stationary_lineup_no_events(self):
        script = PlayScript(
            clip_id="still",
            waypoints={p.player_id: [(0.0, 30.0 - 3 * i, 5.0 + 4 * i)] for i, p in enumerate(ROSTER)},
            possession=[],
            rosters=list(ROSTER),
            duration=2.0,
        )
        clip, events = generate_synthetic_play(script, fps=25.0, noise_sigma=0.0, seed=0)
        assert events == []
        first, last = clip.frames[0], clip.frames[-1]
        for a, b in zip(first.players, last.players):
            assert a.pos == b.pos

    def test_waypoints_hit_exactly_at_zero_noise(self):
        script = pass_simple()
        clip, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.0, seed=0)
        for pid, pts in script.waypoints.items():
            for t, x, y in pts:
                frame = clip.frames[int(round(t * 25.0))]
                pos = frame.position_of(pid)
                assert abs(pos.x - x) < 1e-9 and abs(pos.y - y) < 1e-9

    def test_handoff_produces_pass(self, simple_pass_clip):
        clip, events = simple_pass_clip
        assert [e.kind.value for e in events] == ["Pass"]
        assert events[0].actor == "o1" and events[0].target == "o2"

    def test_ball_tracks_holder_with_offset(self, simple_pass_clip):
        clip, _ = simple_pass_clip
        frame = clip.frames[10]
        holder = frame.position_of("o1")
        assert abs(frame.ball.distance_to(holder) - 1.0) < 1e-9

    def test_determinism_is_bitwise(self):
        script = pass_simple()
        a, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.5, seed=11)
        b, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.5, seed=11)
        assert save_clip(a) == save_clip(b)

    def test_empty_script_rejected(self):
        with pytest.raises(ValueError):
            PlayScript(
                clip_id="none",
                waypoints={},
                possession=[],
                rosters=list(ROSTER),
            ).validate()


class TestPlayScriptIO:
    def test_round_trip(self):
        script = tactic_script(TacticLabel.PD, variant=2)
        again = load_play_script(save_play_script(script))
        assert again.clip_id == script.clip_id
        assert again.waypoints == script.waypoints
        assert again.possession == script.possession
        assert again.tactic_label == TacticLabel.PD

    def test_unrostered_holder_rejected(self):
        script = tactic_script(TacticLabel.PD)
        script.possession = [PossessionSpan(0.0, 1.0, "nobody")]
        with pytest.raises(ValueError, match="nobody"):
            script.validate()
