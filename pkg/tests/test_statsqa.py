import json

import pytest

from courtside.ingestion import load_stats_table
from courtside.narrative import ChatError, ScriptedChatClient
from courtside.statsqa import (
    BudgetExhausted,
    QueryError,
    ReactError,
    StatsTableTool,
    TableQuery,
    ToolRegistry,
    UnknownToolError,
    load_tool_fixtures,
    query_stats,
    run_react,
)


@pytest.fixture
def fouls_table():
    return load_stats_table(b"player,team,fouls,points\nA,home,2,11\nB,home,3,7\nC,away,1,22\n")


class TestQueryStats:
    def test_sum_over_all_rows(self, fouls_table):
        q = TableQuery(aggregate="sum(fouls)")
        assert query_stats(fouls_table, q) == 6

    def test_filter_then_count(self, fouls_table):
        q = TableQuery(filters=(("player", "=", "A"),), aggregate="count")
        assert query_stats(fouls_table, q) == 1

    def test_mean_of_empty_selection_errors(self, fouls_table):
        q = TableQuery(filters=(("player", "=", "Z"),), aggregate="mean(fouls)")
        with pytest.raises(QueryError, match="empty selection"):
            query_stats(fouls_table, q)

    def test_count_of_empty_selection_is_zero(self, fouls_table):
        q = TableQuery(filters=(("player", "=", "Z"),), aggregate="count")
        assert query_stats(fouls_table, q) == 0

    def test_unknown_column(self, fouls_table):
        with pytest.raises(QueryError, match="unknown column"):
            query_stats(fouls_table, TableQuery(aggregate="sum(assists)"))
        with pytest.raises(QueryError, match="unknown column"):
            query_stats(fouls_table, TableQuery(filters=(("era", "=", "x"),)))

    def test_type_mismatched_comparison(self, fouls_table):
        q = TableQuery(filters=(("fouls", "<", "many"),), aggregate="count")
        with pytest.raises(QueryError, match="does not match"):
            query_stats(fouls_table, q)

    def test_numeric_comparisons(self, fouls_table):
        q = TableQuery(filters=(("fouls", ">", 1),), aggregate="list(player)")
        assert query_stats(fouls_table, q) == ["A", "B"]
        q = TableQuery(filters=(("team", "!=", "home"),), aggregate="mean(points)")
        assert query_stats(fouls_table, q) == 22

    def test_count_equals_list_length(self, fouls_table):
        for filt in ((), (("team", "=", "home"),), (("fouls", "<", 3),)):
            count = query_stats(fouls_table, TableQuery(filters=filt, aggregate="count"))
            listed = query_stats(fouls_table, TableQuery(filters=filt, aggregate="list(player)"))
            assert count == len(listed)

    def test_string_sum_rejected(self, fouls_table):
        with pytest.raises(QueryError, match="string column"):
            query_stats(fouls_table, TableQuery(aggregate="sum(player)"))


class TestTools:
    def test_stats_tool_round_trip(self, fouls_table):
        tool = StatsTableTool(table=fouls_table)
        out = tool.invoke('{"filter": [["team", "=", "home"]], "aggregate": "sum(fouls)"}')
        assert json.loads(out) == 5

    def test_stats_tool_reports_errors_as_observations(self, fouls_table):
        tool = StatsTableTool(table=fouls_table)
        assert tool.invoke("not json").startswith("error:")
        assert tool.invoke('{"aggregate": "mean(nope)"}').startswith("error:")

    def test_fixture_tools_from_file(self, tmp_path):
        path = tmp_path / "fixtures.json"
        path.write_text(
            json.dumps(
                [
                    {"tool": "wiki", "input": "tallest player", "observation": "about 7ft6"},
                    {"tool": "wiki", "input": "other", "observation": "other answer"},
                ]
            )
        )
        (tool,) = load_tool_fixtures(path)
        assert tool.name == "wiki"
        assert tool.invoke("tallest player") == "about 7ft6"
        assert tool.invoke("unknown") == "no results found"

    def test_registry_rejects_duplicates(self, fouls_table):
        reg = ToolRegistry([StatsTableTool(table=fouls_table)])
        with pytest.raises(ValueError, match="duplicate"):
            reg.register(StatsTableTool(table=fouls_table))


class TestRunReact:
    def registry(self, fouls_table):
        return ToolRegistry([StatsTableTool(table=fouls_table)])

    def test_tool_then_final_answer(self, fouls_table):
        client = ScriptedChatClient(
            [
                'I should check the table.\nAction: game_stats[{"aggregate": "sum(fouls)"}]',
                "Final Answer: There were 6 fouls in this game.",
            ]
        )
        answer, trace = run_react("how many fouls in this game?", self.registry(fouls_table), client)
        assert answer == "There were 6 fouls in this game."
        assert len(trace.steps) == 1
        step = trace.steps[0]
        assert step.tool == "game_stats" and json.loads(step.observation) == 6
        assert step.thought == "I should check the table."

    def test_observations_replay(self, fouls_table):
        registry = self.registry(fouls_table)
        client = ScriptedChatClient(
            [
                'Action: game_stats[{"aggregate": "count"}]',
                'Action: game_stats[{"filter": [["team", "=", "away"]], "aggregate": "list(player)"}]',
                "Final Answer: done",
            ]
        )
        _, trace = run_react("counts?", registry, client)
        for step in trace.steps:
            if step.invoked:
                assert registry.get(step.tool).invoke(step.tool_input) == step.observation

    def test_unknown_tool_reprompts_once_then_fails(self, fouls_table):
        client = ScriptedChatClient(
            ["Action: telepathy[who wins]", "Action: telepathy[who wins]"]
        )
        with pytest.raises(UnknownToolError) as err:
            run_react("q", self.registry(fouls_table), client)
        trace = err.value.trace
        assert len(trace.steps) == 2
        assert all(not s.invoked for s in trace.steps)
        assert "unknown tool" in trace.steps[0].observation

    def test_unknown_tool_then_recovery(self, fouls_table):
        client = ScriptedChatClient(
            [
                "Action: telepathy[who]",
                'Action: game_stats[{"aggregate": "count"}]',
                "Final Answer: 3 rows",
            ]
        )
        answer, trace = run_react("q", self.registry(fouls_table), client)
        assert answer == "3 rows"
        assert [s.invoked for s in trace.steps] == [False, True]

    def test_budget_exhausted(self, fouls_table):
        client = ScriptedChatClient(
            ['Action: game_stats[{"aggregate": "count"}]'] * 10
        )
        with pytest.raises(BudgetExhausted) as err:
            run_react("q", self.registry(fouls_table), client, max_steps=8)
        assert len(err.value.trace.steps) == 8

    def test_empty_registry_rejected(self):
        with pytest.raises(ValueError):
            run_react("q", ToolRegistry(), ScriptedChatClient([]))

    def test_client_timeout_propagates(self, fouls_table):
        client = ScriptedChatClient([ChatError("down")])
        with pytest.raises(ChatError):
            run_react("q", self.registry(fouls_table), client)

    def test_malformed_reply_is_an_error(self, fouls_table):
        client = ScriptedChatClient(["I have no idea what to do"])
        with pytest.raises(ReactError):
            run_react("q", self.registry(fouls_table), client)
