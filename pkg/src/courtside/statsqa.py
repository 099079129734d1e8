"""
Stats question answering: a typed table query engine plus a ReAct loop that
lets a chat model drive registered tools.

The loop's surface grammar is fixed: the model replies either

    Action: <tool name>[<input>]

or

    Final Answer: <text>

Tool observations are appended to the transcript and the model is asked
again, up to a step budget.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence, Union

from .ingestion import StatsTable
from .narrative import ChatClient


class QueryError(ValueError):
    """Table query does not fit the table (unknown column, bad types, or an
    aggregate over an empty selection)."""


_OPS = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class TableQuery:
    filters: tuple[tuple[str, str, object], ...] = ()
    aggregate: str = "count"  # count | sum(col) | mean(col) | list(col)

    @classmethod
    def from_json(cls, raw: Union[str, dict]) -> "TableQuery":
        data = json.loads(raw) if isinstance(raw, str) else raw
        filters = tuple(
            (f[0], f[1], f[2]) for f in data.get("filter", data.get("filters", []))
        )
        return cls(filters=filters, aggregate=data.get("aggregate", "count"))


_AGG_RE = re.compile(r"^(count|sum|mean|list)(?:\((\w+)\))?$")


def query_stats(table: StatsTable, q: TableQuery):
    """Filter rows conjunctively, then aggregate.

    count of an empty selection is 0; mean of an empty selection is an
    error; sum of an empty selection is 0; list of an empty selection is [].
    """
    m = _AGG_RE.match(q.aggregate.strip())
    if not m:
        raise QueryError(f"bad aggregate {q.aggregate!r}; use count, sum(col), mean(col), list(col)")
    agg, agg_col = m.group(1), m.group(2)
    if agg != "count" and not agg_col:
        raise QueryError(f"aggregate {agg} needs a column, like {agg}(points)")

    names = table.column_names()
    for col, op, _ in q.filters:
        if col not in names:
            raise QueryError(f"unknown column {col!r}; columns: {', '.join(names)}")
        if op not in _OPS:
            raise QueryError(f"unknown operator {op!r}; use =, !=, <, >")
    if agg_col is not None:
        if agg_col not in names:
            raise QueryError(f"unknown column {agg_col!r}; columns: {', '.join(names)}")
        if agg in ("sum", "mean") and table.column_type(agg_col) == "string":
            raise QueryError(f"cannot {agg} string column {agg_col!r}")

    coerced = [
        (col, op, _coerce_filter_value(value, table.column_type(col), col))
        for col, op, value in q.filters
    ]
    col_index = {n: i for i, n in enumerate(names)}
    selected = [
        row
        for row in table.rows
        if all(_OPS[op](row[col_index[col]], value) for col, op, value in coerced)
    ]
    if agg == "count":
        return len(selected)
    values = [row[col_index[agg_col]] for row in selected]
    if agg == "list":
        return values
    if agg == "sum":
        return sum(values) if values else 0
    if not values:
        raise QueryError(f"mean({agg_col}) over an empty selection")
    return sum(values) / len(values)


def _coerce_filter_value(value, col_type: str, col: str):
    try:
        if col_type == "int":
            if isinstance(value, str):
                return int(value)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(value)
            return int(value) if float(value).is_integer() else float(value)
        if col_type == "float":
            return float(value)
        if not isinstance(value, str):
            raise ValueError(value)
        return value
    except (TypeError, ValueError):
        raise QueryError(
            f"value {value!r} does not match {col_type} column {col!r}"
        ) from None


# ---------------------------------------------------------------------------
# tools


class Tool(Protocol):
    name: str
    description: str

    def invoke(self, tool_input: str) -> str: ...


@dataclass
class StatsTableTool:
    """In-game stats tool: the input is a JSON table query."""

    table: StatsTable
    name: str = "game_stats"
    description: str = (
        'Query the current game stats table. Input is JSON like '
        '{"filter": [["player", "=", "A"]], "aggregate": "sum(fouls)"}; '
        "aggregates: count, sum(col), mean(col), list(col)."
    )

    def invoke(self, tool_input: str) -> str:
        try:
            result = query_stats(self.table, TableQuery.from_json(tool_input))
        except (QueryError, json.JSONDecodeError) as e:
            return f"error: {e}"
        return json.dumps(result)


@dataclass
class FixtureTool:
    """Canned lookup tool: answers from (input -> observation) pairs loaded
    from a fixture file. Stands in for live web search APIs in tests."""

    name: str
    description: str
    responses: dict[str, str]
    default: str = "no results found"

    def invoke(self, tool_input: str) -> str:
        return self.responses.get(tool_input.strip(), self.default)


def load_tool_fixtures(path) -> list[FixtureTool]:
    """Fixture file: JSON list of {"tool", "input", "observation"} triples."""
    with open(path, "r", encoding="utf-8") as fh:
        triples = json.load(fh)
    by_tool: dict[str, dict[str, str]] = {}
    for t in triples:
        by_tool.setdefault(t["tool"], {})[t["input"]] = t["observation"]
    return [
        FixtureTool(name=name, description=f"canned {name} lookup", responses=responses)
        for name, responses in sorted(by_tool.items())
    ]


@dataclass
class HttpJsonTool:
    """Adapter for a live JSON search endpoint; requires explicit
    configuration and is never used by the test suite."""

    name: str
    description: str
    url_template: str  # e.g. "https://host/search?q={query}"
    api_key: str = ""
    timeout: float = 10.0

    def invoke(self, tool_input: str) -> str:
        import httpx

        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        resp = httpx.get(
            self.url_template.format(query=tool_input),
            headers=headers,
            timeout=self.timeout,
        )
        resp.raise_for_status()
        return resp.text


class ToolRegistry:
    def __init__(self, tools: Sequence[Tool] = ()):
        self._tools: dict[str, Tool] = {}
        for t in tools:
            self.register(t)

    def register(self, tool: Tool) -> None:
        if tool.name in self._tools:
            raise ValueError(f"duplicate tool name {tool.name!r}")
        self._tools[tool.name] = tool

    def get(self, name: str) -> Optional[Tool]:
        return self._tools.get(name)

    def __len__(self) -> int:
        return len(self._tools)

    def names(self) -> list[str]:
        return sorted(self._tools)

    def describe(self) -> str:
        return "\n".join(
            f"- {t.name}: {t.description}" for t in self._tools.values()
        )


# ---------------------------------------------------------------------------
# the ReAct loop


@dataclass(frozen=True)
class ReactStep:
    thought: str
    tool: str
    tool_input: str
    observation: str
    invoked: bool = True  # False when the named tool was not registered

    def to_json(self) -> dict:
        return {
            "thought": self.thought,
            "tool": self.tool,
            "input": self.tool_input,
            "observation": self.observation,
            "invoked": self.invoked,
        }


@dataclass
class ReactTrace:
    steps: list[ReactStep] = field(default_factory=list)
    final_answer: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "final_answer": self.final_answer,
        }


class ReactError(RuntimeError):
    def __init__(self, message: str, trace: ReactTrace):
        super().__init__(message)
        self.trace = trace


class UnknownToolError(ReactError):
    pass


class BudgetExhausted(ReactError):
    pass


_ACTION_RE = re.compile(r"Action:\s*([\w.-]+)\s*\[(.*)\]", re.DOTALL)
_FINAL_RE = re.compile(r"Final Answer:\s*(.*)", re.DOTALL)

REACT_PROMPT = """Answer the question using the tools below. Reply with either

Action: <tool>[<input>]

to call a tool, or

Final Answer: <text>

when you know the answer. One action per reply. You may think out loud
before the Action or Final Answer line.

Tools:
{tools}

Question: {question}
{transcript}"""


def run_react(
    question: str,
    tools: ToolRegistry,
    client: ChatClient,
    max_steps: int = 8,
    timeout: float = 30.0,
) -> tuple[str, ReactTrace]:
    """Drive the thought -> action -> observation loop to a final answer.

    An unknown tool name is recorded and re-prompted once; a second unknown
    tool raises UnknownToolError. Hitting ``max_steps`` without a final
    answer raises BudgetExhausted. Both errors carry the partial trace.
    """
    if len(tools) == 0:
        raise ValueError("tool registry is empty")
    if not question.strip():
        raise ValueError("question is empty")
    trace = ReactTrace()
    unknown_strikes = 0
    transcript = ""
    for _ in range(max_steps):
        prompt = REACT_PROMPT.format(
            tools=tools.describe(), question=question, transcript=transcript
        )
        reply = client.complete(prompt, timeout)
        final = _FINAL_RE.search(reply)
        action = _ACTION_RE.search(reply)
        if final and (not action or final.start() < action.start()):
            trace.final_answer = final.group(1).strip()
            return trace.final_answer, trace
        if not action:
            raise ReactError(f"reply has neither Action nor Final Answer: {reply!r}", trace)
        thought = reply[: action.start()].strip()
        name, tool_input = action.group(1), action.group(2).strip()
        tool = tools.get(name)
        if tool is None:
            unknown_strikes += 1
            observation = (
                f"error: unknown tool {name!r}; available: " + ", ".join(tools.names())
            )
            trace.steps.append(
                ReactStep(thought, name, tool_input, observation, invoked=False)
            )
            if unknown_strikes > 1:
                raise UnknownToolError(f"unknown tool {name!r} named twice", trace)
        else:
            observation = tool.invoke(tool_input)
            trace.steps.append(ReactStep(thought, name, tool_input, observation))
        transcript += f"\nAction: {name}[{tool_input}]\nObservation: {observation}\n"
    raise BudgetExhausted(f"no final answer within {max_steps} steps", trace)
