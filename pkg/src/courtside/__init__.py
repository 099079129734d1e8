"""
courtside: turn basketball tracking clips into detected actions, a
classified offensive tactic, narrated explanations, and frame-anchored
overlay scripts, behind a library API, a CLI, and an HTTP service.
"""

from .core import (
    ActionKind,
    AttackDirection,
    BoundingBox,
    Clip,
    CourtSpec,
    OutOfBoundsError,
    PlayerPosition,
    PlayerRef,
    Point2,
    RegionId,
    TacticLabel,
    TeamSide,
    TrackedFrame,
    Trajectory,
    region_of,
    validate_clip,
)
from .detection import (
    ActionEvent,
    DetectionParams,
    MarkingMap,
    PossessionTimeline,
    compute_marking,
    compute_marking_timeline,
    compute_possession,
    detect_all,
    detect_cut,
    detect_pass,
    detect_screen,
    detect_shoot,
)
from .filtering import ActionList, FilterParams, build_intervals, filter_actions, filter_events
from .ingestion import (
    ParseError,
    PlayScript,
    PossessionSpan,
    ReferenceClip,
    ReferenceSet,
    StatsTable,
    generate_synthetic_play,
    load_clip,
    load_play_script,
    load_reference_set,
    load_stats_table,
    save_clip,
    save_reference_set,
)
from .narrative import (
    ActionGroup,
    ChatClient,
    ChatError,
    ExplanationParseError,
    ExplanationPlan,
    GameContext,
    MockChatClient,
    Perspective,
    PromptBundle,
    ReasonCatalog,
    Segment,
    answer_tactic_question,
    build_game_context,
    build_prompts,
    fallback_generate,
    group_actions,
    parse_explanation,
    render_actions_text,
)
from .overlay import FlashForwardParams, OverlayScript, Primitive, compile_script, overlay_for_action
from .statsqa import (
    BudgetExhausted,
    QueryError,
    ReactTrace,
    StatsTableTool,
    TableQuery,
    ToolRegistry,
    UnknownToolError,
    query_stats,
    run_react,
)
from .tactics import (
    ConfusionMatrix,
    DistanceParams,
    TacticPrediction,
    clip_distance,
    cross_validate,
    dtw_exact,
    fastdtw,
    knn_classify,
    normalize_trajectories,
)

__version__ = "0.1.0"
