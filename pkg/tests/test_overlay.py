import pytest

from courtside.core import ActionKind, BoundingBox, TacticLabel
from courtside.detection import detect_all
from courtside.filtering import filter_events
from courtside.ingestion import generate_synthetic_play
from courtside.narrative import (
    ExplanationPlan,
    Perspective,
    build_game_context,
    fallback_generate,
    parse_explanation,
)
from courtside.overlay import compile_script, overlay_for_action
from courtside.playbook import cut_and_receive, give_and_go, pick_then_pass


def counts_by_type(prims):
    out = {}
    for p in prims:
        out[p.type] = out.get(p.type, 0) + 1
    return out


@pytest.fixture(scope="module")
def analyzed_give_and_go():
    clip, _ = generate_synthetic_play(give_and_go(), fps=25.0, noise_sigma=0.0, seed=0)
    events = filter_events(detect_all(clip), fps=clip.fps)
    return clip, events


def plan_for(clip, events, perspective):
    ctx = build_game_context(clip, TacticLabel.WV, "A weave look.", events, "What happened?")
    summary, text = fallback_generate(ctx, perspective)
    segments = parse_explanation(text, perspective, ctx.groups, ctx.speakers())
    return ctx, ExplanationPlan(summary=summary, segments=tuple(segments), perspective=perspective)


class TestOverlayForAction:
    def test_pass_primitives(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        event = next(e for e in events if e.kind is ActionKind.PASS)
        counts = counts_by_type(overlay_for_action(event, clip))
        assert counts["circle_marker"] == 2
        assert counts["ground_arrow"] == 1
        assert counts["path_preview"] == 2
        assert counts["pause_cue"] == 1

    def test_cut_primitives_with_area_and_phases(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        event = next(e for e in events if e.kind is ActionKind.CUT)
        prims = overlay_for_action(event, clip)
        counts = counts_by_type(prims)
        assert counts["ground_arrow"] == 1
        assert counts["area_highlight"] == 1
        assert counts["path_preview"] == 2
        phases = {p.data["phase"] for p in prims if p.type == "path_preview"}
        assert phases == {"before", "after"}
        area = next(p for p in prims if p.type == "area_highlight")
        assert area.data["region"] == event.to_region.value

    def test_screen_primitives_with_oriented_wall(self):
        clip, _ = generate_synthetic_play(pick_then_pass(), fps=25.0, noise_sigma=0.0, seed=0)
        events = detect_all(clip)
        event = next(e for e in events if e.kind is ActionKind.SCREEN)
        prims = overlay_for_action(event, clip)
        counts = counts_by_type(prims)
        assert counts["ground_arrow"] == 1 and counts["screen_wall"] == 1
        wall = next(p for p in prims if p.type == "screen_wall")
        s_pos = clip.frames[event.anchor_frame].position_of(event.actor)
        d_pos = clip.frames[event.anchor_frame].position_of(event.target)
        nx, ny = wall.data["normal"]
        assert abs(nx**2 + ny**2 - 1.0) < 1e-9
        # normal points from screener toward the screened defender
        assert nx * (d_pos.x - s_pos.x) + ny * (d_pos.y - s_pos.y) > 0

    def test_shoot_is_a_single_marker(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        event = next(e for e in events if e.kind is ActionKind.SHOOT)
        counts = counts_by_type(overlay_for_action(event, clip))
        assert counts == {"circle_marker": 1, "pause_cue": 1}

    def test_every_action_has_pause_at_anchor(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        for event in events:
            pause = [p for p in overlay_for_action(event, clip) if p.type == "pause_cue"]
            assert len(pause) == 1
            assert pause[0].data["frame"] == event.anchor_frame

    def test_event_outside_clip_rejected(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        from dataclasses import replace

        bad = replace(events[0], start_frame=9000, end_frame=9010, anchor_frame=9005)
        with pytest.raises(ValueError):
            overlay_for_action(bad, clip)


class TestCompileScript:
    def test_third_person_has_no_chat_anchors(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.THIRD)
        script = compile_script(list(ctx.groups), plan, clip)
        assert len(script.entries) == len(ctx.groups)
        for entry in script.entries:
            assert all(p.type != "chat_anchor" for p in entry.primitives)

    def test_first_person_anchors_one_per_line(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.FIRST)
        script = compile_script(list(ctx.groups), plan, clip)
        for entry, segment in zip(script.entries, plan.segments):
            anchors = [p for p in entry.primitives if p.type == "chat_anchor"]
            assert len(anchors) == len(segment.lines)

    def test_pause_frames_equal_group_anchors(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.THIRD)
        script = compile_script(list(ctx.groups), plan, clip)
        for entry, group in zip(script.entries, ctx.groups):
            assert entry.pause_frame == group.anchor_frame
            pauses = [p for p in entry.primitives if p.type == "pause_cue"]
            assert len(pauses) == 1 and pauses[0].data["frame"] == group.anchor_frame

    def test_segment_mismatch_rejected(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.THIRD)
        with pytest.raises(ValueError, match="segments"):
            compile_script(list(ctx.groups)[:-1], plan, clip)

    def test_coordinates_and_frames_in_bounds(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.FIRST)
        script = compile_script(list(ctx.groups), plan, clip)
        for entry in script.entries:
            for p in entry.primitives:
                assert 0 <= p.frame_start <= p.frame_end <= clip.n_frames - 1
                for key in ("from", "to", "pos"):
                    if key in p.data:
                        x, y = p.data[key]
                        assert -2.0 <= x <= 96.0 and -2.0 <= y <= 52.0
                if "points" in p.data:
                    for x, y in p.data["points"]:
                        assert -2.0 <= x <= 96.0 and -2.0 <= y <= 52.0

    def test_joined_group_keeps_single_pause(self):
        clip, _ = generate_synthetic_play(cut_and_receive(), fps=25.0, noise_sigma=0.0, seed=0)
        events = filter_events(detect_all(clip), fps=clip.fps)
        ctx, plan = plan_for(clip, events, Perspective.THIRD)
        joined = [g for g in ctx.groups if g.is_cut_and_pass]
        assert joined, "expected the cut to join its receiving pass"
        script = compile_script(list(ctx.groups), plan, clip)
        for entry in script.entries:
            assert sum(1 for p in entry.primitives if p.type == "pause_cue") == 1

    def test_json_sha_stable_shape(self, analyzed_give_and_go):
        clip, events = analyzed_give_and_go
        ctx, plan = plan_for(clip, events, Perspective.THIRD)
        payload = compile_script(list(ctx.groups), plan, clip).to_json()
        assert set(payload) == {"clip_id", "perspective", "entries"}
        for entry in payload["entries"]:
            assert set(entry) == {"action", "pause", "primitives", "segment"}


class TestChatPlacement:
    def test_bbox_lower_half_puts_chat_above(self):
        from courtside.overlay import _chat_placement
        from conftest import make_clip, make_frame, spread_positions
        import dataclasses

        positions = spread_positions()
        frame = make_frame(0, (29.0, 25.0), positions)
        players = tuple(
            dataclasses.replace(p, bbox=BoundingBox(100, 600 if p.player_id == "o1" else 100, 40, 80))
            for p in frame.players
        )
        frame = dataclasses.replace(frame, players=players)
        clip = make_clip([frame])
        assert _chat_placement(clip, "o1", 0, video_height=800.0) == "above"
        assert _chat_placement(clip, "o2", 0, video_height=800.0) == "below"

    def test_court_fallback_without_bboxes(self, analyzed_give_and_go):
        from courtside.overlay import _chat_placement

        clip, _ = analyzed_give_and_go
        placement = _chat_placement(clip, "o1", 0, video_height=None)
        assert placement in ("above", "below")
