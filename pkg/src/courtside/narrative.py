"""
Narrative generation: prompt assembly, two-step question answering, answer
parsing, and a deterministic no-model fallback.

Answers come back in one of two surface grammars. Third person: one block
per action separated by blank lines, each optionally prefixed "Action i.".
First person: one block per action, each block one or more "Full Name: text"
lines; a Shoot block has exactly one line. The fallback generator emits the
same grammars, so its output always survives the parser.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from .core import ActionKind, Clip, RegionId, REGION_DISPLAY_NAMES, TacticLabel
from .detection import ActionEvent
from .filtering import receiving_pass_for_cut


class Perspective(str, enum.Enum):
    FIRST = "first"
    THIRD = "third"


NARRATOR = "Narrator"

CUT_REASONS = (
    "create scoring opportunities",
    "disturb the defense",
    "enhance ball movement",
    "space the floor",
    "implement offensive strategy",
)
PASS_REASONS = (
    "Create Better Scoring Opportunities",
    "Control the Pace of the Game",
    "Enhance Team Play",
    "Overcome Tight Defense",
    "Improve Court Vision and Awareness",
)
SCREEN_REASONS = (
    "Disrupt Defensive Schemes",
    "Force Defensive Adjustments",
    "Diversify Offensive Strategies",
    "Creating space for other players",
)


@dataclass(frozen=True)
class ReasonCatalog:
    cut_reasons: tuple[str, ...] = CUT_REASONS
    pass_reasons: tuple[str, ...] = PASS_REASONS
    screen_reasons: tuple[str, ...] = SCREEN_REASONS

    def for_kind(self, kind: ActionKind) -> tuple[str, ...]:
        if kind is ActionKind.CUT:
            return self.cut_reasons
        if kind is ActionKind.PASS:
            return self.pass_reasons
        if kind is ActionKind.SCREEN:
            return self.screen_reasons
        return ()


OVERVIEW_TEMPLATE_THIRD = """You are the basketball coach who knows basketball tactics.
The tactic description and actions are provided.
Please briefly explain the question from casual fans.
When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players.

[PLAYER INFORMATION]
Offense Players: {offense_players}
Defense Players: {defense_players}

[CONSTRAINT]
Note that you have to answer integrating tactic description and actions within 2 sentences.

[TACTIC]
{tactic_description}

[ACTION]
{actions}

Please explain {question}."""

OVERVIEW_TEMPLATE_FIRST = """You are the basketball coach who knows basketball tactics.
The response should be in the format of a role-play dialogue between players, and no other text should be added besides the players' conversation.
I would like it to consist of only 2 to 4 conversations between players.
When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players.

[ANSWER FORMAT]
The Answer Format is as follows:
Stephen Curry: Alright, let's now use the pick and roll tactic. Draymond Green, set a screen for me. Then, I'll make my move. \\n\\n
Draymond Green: Let's confuse the opponent with our tactic and score. \\n\\n

[PLAYER INFORMATION]
Offense Players: {offense_players}
Defense Players: {defense_players}

[CONSTRAINT]
Note that you have to answer integrating tactic description and actions within 2 sentences.

[TACTIC]
{tactic_description}

[ACTION]
{actions}

Please explain {question}."""

ACTION_TEMPLATE_THIRD = """The actions represent player's movements such as Cut, Pass, Screen, and Shoot.

[CONSTRAINT]
1. The format of the answer must be the same as the explanation and must be described in third person within 1 sentence.
2. The names of all players must be accurately written.
3. When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players. Answer only one offensive or defensive tactic for me.
4. All conversations should include the reason why that player is taking such action.
The reasons for cut: create scoring opportunities, disturb the defense, enhance ball movement, space the floor, or implement offensive strategy.
The reasons for pass: Create Better Scoring Opportunities, Control the Pace of the Game, Enhance Team Play, Overcome Tight Defense, or Improve Court Vision and Awareness.
The reasons for screen: Disrupt Defensive Schemes, Force Defensive Adjustments, Diversify Offensive Strategies, or Creating space for other players.

[PLAYER INFORMATION]
Offense Players: {offense_players}
Defense Players: {defense_players}

[ANSWER FORMAT]
1. Generate the answer using only conversational responses, without including any action titles or additional explanations.
2. Each conversation will be divided by \\n\\n and ensure that the Answer Format is as follows:

Action 1. Explanation 1 \\n\\n Action 2. Explanation 2 \\n\\n Action 3. Explanation 3 \\n\\n

[ACTION]
{actions}

Please explain question "{question}" based on each individual action with reasoning"""

ACTION_TEMPLATE_FIRST = """The actions represent player's movements such as Cut, Pass, Screen, and Shoot.

[CONSTRAINT]
1. The answer format should be conversation between two players if the action is the interaction between two players with first person perspective.
2. In the "Screen", the two players are on different teams, and one player is setting a screen on another. It's important not to inform or alert the other player about the screen being set; instead, dialogue should be created that disrupts or expresses confusion.
3. Please ensure that the player name is the full name, and the "Shoot" action results in only one answer from the Shooter.
4. The response should be in the format of a role-play dialogue between players, and no other text should be added besides the players' conversation.
5. When explaining offensive tactics, describe using the attacking players, and when explaining defensive tactics, describe using the defending players. Please explain only one of these in response to the question.
6. All conversations SHOULD include the detailed and complex reason why that player is taking such action within one or two sentences for one conversation by referring to below reasons for each action.
The reasons for cut: create scoring opportunities, disturb the defense, enhance ball movement, space the floor, or implement offensive strategy.
The reasons for pass: Create Better Scoring Opportunities, Control the Pace of the Game, Enhance Team Play, Overcome Tight Defense, or Improve Court Vision and Awareness.
The reasons for screen: Disrupt Defensive Schemes, Force Defensive Adjustments, Diversify Offensive Strategies, or Creating space for other players.

[PLAYER INFORMATION]
Offense Players: {offense_players}
Defense Players: {defense_players}

[ANSWER FORMAT]
1. Generate the answer using only conversational responses with reasons, without including any action titles or additional explanations.
2. "Pass" and "Screen" should consist of two conversations, while "Shoot" should consist of one conversation.
This example is an answer format of "Pass" and "Screen" actions.
Example 1) Action: Pass Player 1 -> Player 2 Answer: Player 1: Conversation 1 \\n Player 2: Conversation 2 \\n\\n
Example 2) Action: Screen Player 3 -> Player 4 Answer: Player 3: Conversation 3 \\n Player 4: Conversation 4 \\n\\n
This example is an answer format of "Shoot" action. Example) Action: Shoot Player 2 Answer: Player 2: Conversation 5 \\n
3. Each conversation will be divided by \\n\\n and ensure that the Answer Format is as follows:
Player 1: Conversation 1 \\n Player 2: Conversation 2 \\n\\n Player 2: Conversation 3 \\n Player 3: Conversation 4 \\n\\n Player 2: Conversation 5 \\n
Make sure these \\n and \\n\\n delimiter.

[ACTION]
{actions}


PLEASE FOLLOW and MAKE SURE [Answer Format]!!!.
Please explain question "{question}" based on each individual action with reasoning"""

SECTION_HEADERS = ("[PLAYER INFORMATION]", "[CONSTRAINT]", "[TACTIC]", "[ACTION]", "[ANSWER FORMAT]")


class ChatError(RuntimeError):
    """The chat backend failed to produce a usable response."""


class ChatTimeout(ChatError):
    pass


class ChatClient(Protocol):
    def complete(self, prompt: str, timeout: float = 30.0) -> str: ...


class MockChatClient:
    """Deterministic stand-in for a model API.

    Holds (pattern, response) rules; the first rule whose regex matches the
    prompt wins. Useful both for tests and for running the service offline.
    """

    def __init__(self, rules: Sequence[tuple[str, str]]):
        self._rules = [(re.compile(p, re.DOTALL), r) for p, r in rules]

    @classmethod
    def from_file(cls, path) -> "MockChatClient":
        with open(path, "r", encoding="utf-8") as fh:
            entries = json.load(fh)
        return cls([(e["pattern"], e["response"]) for e in entries])

    def complete(self, prompt: str, timeout: float = 30.0) -> str:
        for pattern, response in self._rules:
            if pattern.search(prompt):
                return response
        raise ChatError("no mock rule matches the prompt")


class ScriptedChatClient:
    """Replays a fixed sequence of responses (or exceptions). Test helper."""

    def __init__(self, responses: Sequence):
        self._responses = list(responses)
        self.calls: list[str] = []

    def complete(self, prompt: str, timeout: float = 30.0) -> str:
        self.calls.append(prompt)
        if not self._responses:
            raise ChatError("scripted client exhausted")
        item = self._responses.pop(0)
        if isinstance(item, Exception):
            raise item
        return item


class RemoteChatClient:
    """Minimal chat-completion API adapter (OpenAI-style JSON shape).

    ``http`` accepts any httpx.Client, so tests can plug in a mock
    transport; by default a fresh client is created per call.
    """

    def __init__(
        self,
        endpoint: str,
        api_key: str,
        model: str = "",
        timeout: float = 30.0,
        http=None,
    ):
        self.endpoint = endpoint
        self.api_key = api_key
        self.model = model
        self.timeout = timeout
        self._http = http

    def complete(self, prompt: str, timeout: float | None = None) -> str:
        import httpx

        payload = {"messages": [{"role": "user", "content": prompt}]}
        if self.model:
            payload["model"] = self.model
        client = self._http or httpx.Client()
        try:
            resp = client.post(
                self.endpoint,
                json=payload,
                headers={"Authorization": f"Bearer {self.api_key}"},
                timeout=timeout or self.timeout,
            )
            resp.raise_for_status()
            data = resp.json()
        except httpx.TimeoutException as e:
            raise ChatTimeout(str(e)) from e
        except Exception as e:
            raise ChatError(str(e)) from e
        finally:
            if self._http is None:
                client.close()
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError) as e:
            raise ChatError(f"unexpected response shape: {e}") from e


# ---------------------------------------------------------------------------
# action grouping and text rendering


@dataclass(frozen=True)
class ActionGroup:
    """One narrative unit: a single event, or a cut joined with the pass
    that the cutter receives."""

    events: tuple[ActionEvent, ...]

    @property
    def anchor_frame(self) -> int:
        return self.events[0].anchor_frame

    @property
    def lead_kind(self) -> ActionKind:
        return self.events[0].kind

    @property
    def is_cut_and_pass(self) -> bool:
        return len(self.events) == 2


def group_actions(
    events: Sequence[ActionEvent],
    fps: float,
    join_window_s: float = 2.0,
) -> list[ActionGroup]:
    """Pair each cut with the pass its actor receives (the rule that kept the
    cut through filtering); everything else is its own group."""
    window = int(round(join_window_s * fps))
    primaries = [e for e in events if e.kind in (ActionKind.PASS, ActionKind.SHOOT)]
    consumed = set()
    groups = []
    for e in events:
        if id(e) in consumed:
            continue
        if e.kind is ActionKind.CUT:
            p = receiving_pass_for_cut(e, primaries, window)
            if p is not None and id(p) not in consumed:
                consumed.add(id(p))
                groups.append(ActionGroup(events=(e, p)))
                continue
        groups.append(ActionGroup(events=(e,)))
    groups.sort(key=lambda g: g.anchor_frame)
    return groups


def _event_phrase(e: ActionEvent, names: dict[str, str], regions: dict[RegionId, str]) -> str:
    if e.kind is ActionKind.CUT:
        return f"Cut {names[e.actor]} {regions[e.from_region]} -> {regions[e.to_region]}"
    if e.kind is ActionKind.PASS:
        return f"Pass {names[e.actor]} -> {names[e.target]}"
    if e.kind is ActionKind.SCREEN:
        return f"Screen {names[e.actor]} -> {names[e.target]}"
    return f"Shoot {names[e.actor]}"


def render_actions_text(
    groups: Sequence[ActionGroup],
    names: dict[str, str],
    regions: dict[RegionId, str] | None = None,
) -> str:
    """Numbered one-line-per-group rendering, joined cut-and-receive pairs
    on a single line."""
    regions = regions or REGION_DISPLAY_NAMES
    lines = []
    for i, g in enumerate(groups, start=1):
        body = " and ".join(_event_phrase(e, names, regions) for e in g.events)
        lines.append(f"{i}.  {body}")
    return "\n".join(lines)


@dataclass(frozen=True)
class GameContext:
    offense_players: tuple[str, ...]
    defense_players: tuple[str, ...]
    tactic: TacticLabel
    tactic_description: str
    groups: tuple[ActionGroup, ...]
    actions_text: str
    question: str
    names: dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n_lines = len(self.actions_text.splitlines()) if self.actions_text else 0
        if n_lines != len(self.groups):
            raise ValueError(
                f"actions_text has {n_lines} lines for {len(self.groups)} actions"
            )

    def speakers(self) -> set[str]:
        return set(self.offense_players) | set(self.defense_players)


def build_game_context(
    clip: Clip,
    tactic: TacticLabel,
    tactic_description: str,
    filtered_events: Sequence[ActionEvent],
    question: str,
    join_window_s: float = 2.0,
) -> GameContext:
    names = {p.player_id: p.full_name for p in clip.rosters}
    groups = tuple(group_actions(filtered_events, clip.fps, join_window_s))
    return GameContext(
        offense_players=tuple(names[pid] for pid in clip.offense_ids()),
        defense_players=tuple(names[pid] for pid in clip.defense_ids()),
        tactic=tactic,
        tactic_description=tactic_description,
        groups=groups,
        actions_text=render_actions_text(groups, names),
        question=question,
        names=names,
    )


# ---------------------------------------------------------------------------
# prompts


@dataclass(frozen=True)
class PromptBundle:
    overview_prompt: str
    action_prompt: str
    perspective: Perspective


def build_prompts(ctx: GameContext, perspective: Perspective) -> PromptBundle:
    if not ctx.tactic_description:
        raise ValueError("game context is missing the tactic description")
    slots = {
        "offense_players": ", ".join(ctx.offense_players),
        "defense_players": ", ".join(ctx.defense_players),
        "tactic_description": ctx.tactic_description,
        "actions": ctx.actions_text,
        "question": ctx.question,
    }
    if perspective is Perspective.THIRD:
        overview = OVERVIEW_TEMPLATE_THIRD.format(**slots)
        action = ACTION_TEMPLATE_THIRD.format(**slots)
    else:
        overview = OVERVIEW_TEMPLATE_FIRST.format(**slots)
        action = ACTION_TEMPLATE_FIRST.format(**slots)
    return PromptBundle(overview_prompt=overview, action_prompt=action, perspective=perspective)


# ---------------------------------------------------------------------------
# parsing


class ExplanationParseError(ValueError):
    pass


class SegmentCountMismatch(ExplanationParseError):
    pass


class UnknownSpeaker(ExplanationParseError):
    pass


class EmptyExplanation(ExplanationParseError):
    pass


class MalformedDialogueLine(ExplanationParseError):
    pass


@dataclass(frozen=True)
class Segment:
    action_index: int
    lines: tuple[tuple[str, str], ...]  # (speaker, text)
    anchor_frame: int

    def to_json(self) -> dict:
        return {
            "action_index": self.action_index,
            "anchor_frame": self.anchor_frame,
            "lines": [{"speaker": s, "text": t} for s, t in self.lines],
        }


@dataclass(frozen=True)
class ExplanationPlan:
    summary: str
    segments: tuple[Segment, ...]
    perspective: Perspective

    def to_json(self) -> dict:
        return {
            "summary": self.summary,
            "perspective": self.perspective.value,
            "segments": [s.to_json() for s in self.segments],
        }


_ACTION_PREFIX = re.compile(r"^\s*Action\s+\d+\s*[.:]\s*", re.IGNORECASE)


def parse_explanation(
    text: str,
    perspective: Perspective,
    groups: Sequence[ActionGroup],
    speakers: set[str] | None = None,
) -> list[Segment]:
    """Parse a model answer into per-action segments.

    Raises an ExplanationParseError subclass when the block count does not
    match the action count, a dialogue line is malformed, a speaker is not a
    rostered full name, or the text is empty.
    """
    if not text or not text.strip():
        raise EmptyExplanation("empty explanation text")
    blocks = [b.strip() for b in re.split(r"\n\s*\n", text.strip()) if b.strip()]
    if len(blocks) != len(groups):
        raise SegmentCountMismatch(
            f"expected {len(groups)} blocks, got {len(blocks)}"
        )
    segments = []
    for idx, (block, group) in enumerate(zip(blocks, groups)):
        if perspective is Perspective.THIRD:
            body = _ACTION_PREFIX.sub("", block).strip()
            if not body:
                raise EmptyExplanation(f"block {idx + 1} is empty")
            lines = ((NARRATOR, body),)
        else:
            raw_lines = [ln.strip() for ln in block.split("\n") if ln.strip()]
            parsed = []
            for ln in raw_lines:
                if ":" not in ln:
                    raise MalformedDialogueLine(f"block {idx + 1}: no speaker in {ln!r}")
                name, _, speech = ln.partition(":")
                name = name.strip()
                speech = speech.strip()
                if speakers is not None and name not in speakers:
                    raise UnknownSpeaker(f"block {idx + 1}: unknown speaker {name!r}")
                if not speech:
                    raise EmptyExplanation(f"block {idx + 1}: empty line for {name}")
                parsed.append((name, speech))
            if not parsed:
                raise EmptyExplanation(f"block {idx + 1} has no dialogue")
            if group.lead_kind is ActionKind.SHOOT and len(parsed) != 1:
                raise SegmentCountMismatch(
                    f"block {idx + 1}: a Shoot needs exactly one line, got {len(parsed)}"
                )
            lines = tuple(parsed)
        segments.append(
            Segment(action_index=idx, lines=lines, anchor_frame=group.anchor_frame)
        )
    return segments


# ---------------------------------------------------------------------------
# deterministic fallback


def _reason(catalog: ReasonCatalog, kind: ActionKind, index: int) -> str:
    reasons = catalog.for_kind(kind)
    return reasons[index % len(reasons)] if reasons else ""


def fallback_generate(
    ctx: GameContext,
    perspective: Perspective,
    catalog: ReasonCatalog | None = None,
) -> tuple[str, str]:
    """Template-filled (summary, action text) in the exact answer grammar;
    deterministic and always parseable."""
    catalog = catalog or ReasonCatalog()
    tactic = ctx.tactic.display_name
    summary = (
        f"The offense runs the {tactic} set, working through {len(ctx.groups)} "
        f"linked actions to create a clean look at the basket. "
        f"{ctx.offense_players[0]} initiates while the defense scrambles to keep up."
    )
    blocks = []
    for i, g in enumerate(ctx.groups):
        if perspective is Perspective.THIRD:
            blocks.append(f"Action {i + 1}. {_third_sentence(g, ctx, catalog, i)}")
        else:
            blocks.append("\n".join(_first_lines(g, ctx, catalog, i)))
    return summary, "\n\n".join(blocks)


def _third_sentence(g: ActionGroup, ctx: GameContext, catalog: ReasonCatalog, i: int) -> str:
    names = ctx.names
    e = g.events[0]
    if g.is_cut_and_pass:
        p = g.events[1]
        return (
            f"{names[e.actor]} cuts from the {REGION_DISPLAY_NAMES[e.from_region]} to the "
            f"{REGION_DISPLAY_NAMES[e.to_region]} and takes the pass from {names[p.actor]} "
            f"to {_reason(catalog, ActionKind.CUT, i)}."
        )
    if e.kind is ActionKind.CUT:
        return (
            f"{names[e.actor]} cuts from the {REGION_DISPLAY_NAMES[e.from_region]} to the "
            f"{REGION_DISPLAY_NAMES[e.to_region]} to {_reason(catalog, ActionKind.CUT, i)}."
        )
    if e.kind is ActionKind.PASS:
        return (
            f"{names[e.actor]} passes to {names[e.target]} to "
            f"{_reason(catalog, ActionKind.PASS, i)}."
        )
    if e.kind is ActionKind.SCREEN:
        return (
            f"{names[e.actor]} sets a screen on {names[e.target]} to "
            f"{_reason(catalog, ActionKind.SCREEN, i)}."
        )
    return f"{names[e.actor]} rises and takes the shot to close out the possession."


def _first_lines(g: ActionGroup, ctx: GameContext, catalog: ReasonCatalog, i: int) -> list[str]:
    names = ctx.names
    e = g.events[0]
    if g.is_cut_and_pass:
        p = g.events[1]
        return [
            f"{names[p.actor]}: On the move, {names[e.actor]}, the ball is coming your way so we can "
            f"{_reason(catalog, ActionKind.PASS, i)}.",
            f"{names[e.actor]}: I cut from the {REGION_DISPLAY_NAMES[e.from_region]} to the "
            f"{REGION_DISPLAY_NAMES[e.to_region]} to {_reason(catalog, ActionKind.CUT, i)}.",
        ]
    if e.kind is ActionKind.CUT:
        return [
            f"{names[e.actor]}: I am cutting from the {REGION_DISPLAY_NAMES[e.from_region]} to the "
            f"{REGION_DISPLAY_NAMES[e.to_region]} to {_reason(catalog, ActionKind.CUT, i)}."
        ]
    if e.kind is ActionKind.PASS:
        return [
            f"{names[e.actor]}: Take it, {names[e.target]}, this is how we "
            f"{_reason(catalog, ActionKind.PASS, i)}.",
            f"{names[e.target]}: Got it, {names[e.actor]}, let us make this count.",
        ]
    if e.kind is ActionKind.SCREEN:
        return [
            f"{names[e.actor]}: Planting the wall right here to "
            f"{_reason(catalog, ActionKind.SCREEN, i)}.",
            f"{names[e.target]}: Where did that screen come from?",
        ]
    return [f"{names[e.actor]}: This one is mine, rising up for the shot."]


# ---------------------------------------------------------------------------
# two-step answering


def answer_tactic_question(
    ctx: GameContext,
    perspective: Perspective,
    client: ChatClient,
    retries: int = 2,
    fallback_enabled: bool = True,
    timeout: float = 30.0,
) -> ExplanationPlan:
    """Two-step explanation: a tactic overview, then parsed per-action
    segments. Bad or late model output is re-asked up to ``retries`` times,
    then replaced by the deterministic fallback (unless disabled, in which
    case the last error surfaces)."""
    bundle = build_prompts(ctx, perspective)

    summary: Optional[str] = None
    last_error: Optional[Exception] = None
    for _ in range(retries + 1):
        try:
            summary = client.complete(bundle.overview_prompt, timeout).strip()
            break
        except ChatError as e:
            last_error = e
    if summary is None:
        if not fallback_enabled:
            raise last_error  # type: ignore[misc]
        summary = fallback_generate(ctx, perspective)[0]

    segments: Optional[list[Segment]] = None
    for _ in range(retries + 1):
        try:
            text = client.complete(bundle.action_prompt, timeout)
            segments = parse_explanation(text, perspective, ctx.groups, ctx.speakers())
            break
        except (ChatError, ExplanationParseError) as e:
            last_error = e
    if segments is None:
        if not fallback_enabled:
            raise last_error  # type: ignore[misc]
        _, text = fallback_generate(ctx, perspective)
        segments = parse_explanation(text, perspective, ctx.groups, ctx.speakers())

    return ExplanationPlan(summary=summary, segments=tuple(segments), perspective=perspective)
