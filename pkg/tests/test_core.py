import math

import pytest

from courtside.core import (
    AttackDirection,
    BoundingBox,
    CourtSpec,
    OutOfBoundsError,
    Point2,
    RegionId,
    TacticLabel,
    Trajectory,
    mirror_point,
    point_in_polygon,
    region_of,
    validate_clip,
)

from conftest import make_clip, make_frame, spread_positions, static_clip


class TestRegionOf:
    def test_hoop_center_is_in_the_key(self):
        assert region_of(Point2(5.25, 25.0), "left") == RegionId.KEY

    def test_mirrored_hoop_for_right_attack(self):
        assert region_of(Point2(88.75, 25.0), "right") == RegionId.KEY

    def test_beyond_midcourt_is_backcourt(self):
        assert region_of(Point2(60.0, 25.0), "left") == RegionId.BACKCOURT

    def test_out_of_bounds_raises(self):
        with pytest.raises(OutOfBoundsError):
            region_of(Point2(-5.0, 25.0), "left")
        with pytest.raises(OutOfBoundsError):
            region_of(Point2(50.0, 55.0), "left")

    def test_within_tolerance_is_clamped(self):
        assert region_of(Point2(-1.5, 25.0), "left") == RegionId.KEY

    @pytest.mark.parametrize(
        "point,expected",
        [
            ((22.0, 40.0), RegionId.LEFT_WING),
            ((22.0, 26.0), RegionId.TOP_OF_KEY),
            ((10.0, 36.0), RegionId.LEFT_LOW_POST),
            ((10.0, 12.0), RegionId.RIGHT_LOW_POST),
            ((15.0, 38.0), RegionId.HIGH_POST),
            ((15.0, 12.0), RegionId.HIGH_POST),
            ((5.0, 46.0), RegionId.LEFT_CORNER),
            ((5.0, 3.0), RegionId.RIGHT_CORNER),
            ((25.0, 5.0), RegionId.RIGHT_WING),
            ((40.0, 25.0), RegionId.BACKCOURT),
        ],
    )
    def test_region_table(self, point, expected):
        assert region_of(Point2(*point), AttackDirection.LEFT) == expected

    def test_boundary_resolves_to_earliest_region(self):
        # (19, 25) sits on the Key / TopOfKey border; Key comes first
        assert region_of(Point2(19.0, 25.0), "left") == RegionId.KEY

    def test_partition_covers_the_half_exactly_once(self):
        court = CourtSpec()
        # interior sample points, off the rectangle boundaries
        for xi in range(94):
            for yi in range(100):
                x, y = xi * 0.5 + 0.25, yi * 0.5 + 0.25
                if x > 47.0:
                    continue
                containing = [
                    rid for rid, poly in court.regions if point_in_polygon(x, y, poly)
                ]
                assert len(containing) == 1, f"({x}, {y}) in {containing}"

    def test_grid_mirror_symmetry(self):
        court = CourtSpec()
        for xi in range(47):
            for yi in range(50):
                p = Point2(xi + 0.5, yi + 0.5)
                assert region_of(p, "left", court) == region_of(
                    mirror_point(p), "right", court
                )

    def test_every_region_id_appears(self):
        court = CourtSpec()
        assert {rid for rid, _ in court.regions} == set(RegionId)


class TestTypes:
    def test_point_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Point2(math.nan, 0.0)
        with pytest.raises(ValueError):
            Point2(0.0, math.inf)

    def test_bbox_requires_positive_size(self):
        with pytest.raises(ValueError):
            BoundingBox(0, 0, 0, 10)
        assert BoundingBox(1, 2, 3, 4).center == (2.5, 4.0)

    def test_trajectory_frames_strictly_increasing(self):
        with pytest.raises(ValueError):
            Trajectory(samples=((1, Point2(0, 0)), (1, Point2(1, 1))))
        with pytest.raises(ValueError):
            Trajectory(samples=())

    def test_ten_tactic_labels_with_display_names(self):
        assert len(TacticLabel) == 10
        assert TacticLabel.PD.display_name == "Pin-Down"
        assert TacticLabel.F23.display_name == "2-3 Flex"

    def test_court_spec_rejects_missing_region(self):
        court = CourtSpec()
        partial = tuple(e for e in court.regions if e[0] != RegionId.KEY)
        with pytest.raises(ValueError, match="Key"):
            CourtSpec(regions=partial)


class TestValidateClip:
    def test_well_formed_clip_has_no_violations(self):
        assert validate_clip(static_clip(100)) == []

    def test_nine_players_named_with_frame(self):
        positions = spread_positions()
        frames = [make_frame(i, (29, 25), positions) for i in range(20)]
        short = dict(positions)
        short.pop("d5")
        frames[12] = make_frame(12, (29, 25), short)
        violations = validate_clip(make_clip(frames))
        assert any("frame 12" in v and "expected 10 players, got 9" in v for v in violations)

    def test_non_contiguous_frame_index(self):
        positions = spread_positions()
        frames = [make_frame(i, (29, 25), positions) for i in (0, 1, 3)]
        violations = validate_clip(make_clip(frames))
        assert any("not contiguous" in v for v in violations)

    def test_out_of_bounds_player_flagged(self):
        positions = spread_positions({"o3": (99.0, 25.0)})
        violations = validate_clip(make_clip([make_frame(0, (29, 25), positions)]))
        assert any("o3" in v and "out of bounds" in v for v in violations)

    def test_generated_clips_validate(self, simple_pass_clip):
        clip, _ = simple_pass_clip
        assert validate_clip(clip) == []
