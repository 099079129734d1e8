import json

import pytest
from fastapi.testclient import TestClient

from courtside.config import AppConfig, ChatConfig, parse_config_text
from courtside.ingestion import generate_synthetic_play, save_clip, save_reference_set
from courtside.playbook import build_reference_set, give_and_go
from courtside.service import MEDIA_TYPE, create_app


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    clips = root / "clips"
    clips.mkdir()
    for script in (give_and_go(),):
        clip, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.0, seed=1)
        (clips / f"{clip.clip_id}.json").write_bytes(save_clip(clip))
    refset = build_reference_set(per_label=2, fps=8.0, noise_sigma=1.0, seed=3)
    (root / "reference.json").write_bytes(save_reference_set(refset))
    (root / "stats.csv").write_text("player,fouls\nAlan Price,2\nBen Okafor,3\n")
    (root / "mock_chat.json").write_text(
        json.dumps(
            [
                {"pattern": "within 2 sentences", "response": "A crisp give and go."},
                {"pattern": "Observation", "response": "Final Answer: 5 fouls."},
                {
                    "pattern": "how many fouls",
                    "response": 'Action: game_stats[{"aggregate": "sum(fouls)"}]',
                },
            ]
        )
    )
    return root


def make_config(corpus_dir, fallback=True):
    return AppConfig(
        data_dir=str(corpus_dir / "clips"),
        reference_path=str(corpus_dir / "reference.json"),
        stats_path=str(corpus_dir / "stats.csv"),
        chat=ChatConfig(mode="mock", script_path=str(corpus_dir / "mock_chat.json"),
                        fallback_enabled=fallback),
    )


@pytest.fixture(scope="module")
def client(corpus_dir):
    app = create_app(make_config(corpus_dir))
    return TestClient(app)


class TestEndpoints:
    def test_health(self, client):
        r = client.get("/api/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "clips": 1}
        assert r.headers["content-type"].startswith(MEDIA_TYPE)

    def test_list_clips(self, client):
        r = client.get("/api/clips")
        assert r.status_code == 200
        (entry,) = r.json()
        assert entry["clip_id"] == "give-and-go"
        assert entry["tactic"]["label"] in {
            "F23", "EV", "HK", "PD", "PT", "RB", "SP", "WS", "WV", "WW"
        }

    def test_clip_detail(self, client):
        r = client.get("/api/clips/give-and-go")
        body = r.json()
        assert body["n_frames"] > 100
        assert len(body["rosters"]) == 10
        kinds = [a["kind"] for a in body["actions"]]
        assert kinds == ["Pass", "Cut", "Pass", "Shoot"]
        assert any(a["filtered"] is False for a in body["all_actions"])

    def test_unknown_clip_404(self, client):
        assert client.get("/api/clips/nope").status_code == 404
        assert client.get("/api/clips/nope/frames").status_code == 404

    def test_frames_slice(self, client):
        r = client.get("/api/clips/give-and-go/frames?from=10&to=12")
        body = r.json()
        assert [f["i"] for f in body["frames"]] == [10, 11, 12]
        assert len(body["frames"][0]["players"]) == 10

    def test_overlay_entries_match_actions(self, client):
        r = client.get("/api/clips/give-and-go/overlay?perspective=first")
        body = r.json()
        assert body["perspective"] == "first"
        assert len(body["entries"]) >= 1
        for entry in body["entries"]:
            assert entry["segment"] is not None
            assert any(p["type"] == "pause_cue" for p in entry["primitives"])

    def test_overlay_bad_perspective_422(self, client):
        r = client.get("/api/clips/give-and-go/overlay?perspective=second")
        assert r.status_code == 422
        assert "first" in r.json()["detail"] and "third" in r.json()["detail"]

    def test_ask_happy_path(self, client):
        r = client.post(
            "/api/clips/give-and-go/ask",
            json={"question": "What happened?", "perspective": "third"},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["summary"] == "A crisp give and go."
        assert len(body["segments"]) == len(body["overlay"]["entries"])
        assert body["tactic"] is not None

    def test_ask_is_deterministic(self, client):
        payload = {"question": "What happened?", "perspective": "first"}
        a = client.post("/api/clips/give-and-go/ask", json=payload)
        b = client.post("/api/clips/give-and-go/ask", json=payload)
        assert a.content == b.content

    def test_ask_bad_perspective_422(self, client):
        r = client.post(
            "/api/clips/give-and-go/ask",
            json={"question": "hmm", "perspective": "second"},
        )
        assert r.status_code == 422

    def test_ask_empty_question_422(self, client):
        r = client.post("/api/clips/give-and-go/ask", json={"question": "  "})
        assert r.status_code == 422

    def test_ask_unknown_clip_404(self, client):
        r = client.post("/api/clips/ghost/ask", json={"question": "?"})
        assert r.status_code == 404

    def test_stats_ask_uses_react(self, client):
        r = client.post("/api/stats/ask", json={"question": "how many fouls in this game?"})
        assert r.status_code == 200
        body = r.json()
        assert body["answer"] == "5 fouls."
        steps = body["trace"]["steps"]
        assert steps and steps[0]["tool"] == "game_stats"
        assert json.loads(steps[0]["observation"]) == 5

    def test_stats_ask_empty_question_422(self, client):
        assert client.post("/api/stats/ask", json={"question": ""}).status_code == 422


class TestFailureModes:
    def test_chat_failure_with_fallback_disabled_is_502(self, corpus_dir):
        config = make_config(corpus_dir, fallback=False)
        config.chat.script_path = str(corpus_dir / "no_such_script.json")
        app = create_app(config)
        with TestClient(app) as c:
            r = c.post(
                "/api/clips/give-and-go/ask",
                json={"question": "What happened?", "perspective": "third"},
            )
            assert r.status_code == 502

    def test_chat_failure_with_fallback_enabled_still_answers(self, corpus_dir):
        config = make_config(corpus_dir, fallback=True)
        config.chat.script_path = str(corpus_dir / "no_such_script.json")
        app = create_app(config)
        with TestClient(app) as c:
            r = c.post(
                "/api/clips/give-and-go/ask",
                json={"question": "What happened?", "perspective": "third"},
            )
            assert r.status_code == 200
            assert len(r.json()["segments"]) >= 1

    def test_fixture_tools_registered_from_config(self, corpus_dir):
        config = make_config(corpus_dir)
        (corpus_dir / "tool_fixtures.json").write_text(
            json.dumps(
                [{"tool": "wiki", "input": "mvp 2015", "observation": "it was a guard"}]
            )
        )
        (corpus_dir / "wiki_chat.json").write_text(
            json.dumps(
                [
                    {"pattern": "Observation", "response": "Final Answer: a guard won it."},
                    {"pattern": "mvp", "response": "Action: wiki[mvp 2015]"},
                ]
            )
        )
        config.tool_fixtures_path = str(corpus_dir / "tool_fixtures.json")
        config.chat.script_path = str(corpus_dir / "wiki_chat.json")
        app = create_app(config)
        with TestClient(app) as c:
            r = c.post("/api/stats/ask", json={"question": "who was mvp 2015?"})
            assert r.status_code == 200
            body = r.json()
            assert body["answer"] == "a guard won it."
            assert body["trace"]["steps"][0]["tool"] == "wiki"
            assert body["trace"]["steps"][0]["observation"] == "it was a guard"

    def test_never_finalizing_react_502_with_trace(self, corpus_dir):
        config = make_config(corpus_dir)
        (corpus_dir / "loop_chat.json").write_text(
            json.dumps(
                [{"pattern": ".", "response": 'Action: game_stats[{"aggregate": "count"}]'}]
            )
        )
        config.chat.script_path = str(corpus_dir / "loop_chat.json")
        app = create_app(config)
        with TestClient(app) as c:
            r = c.post("/api/stats/ask", json={"question": "loop forever"})
            assert r.status_code == 502
            body = r.json()
            assert len(body["trace"]["steps"]) == 8


class TestConfigParsing:
    def test_round_trip_keys(self, corpus_dir):
        text = f"""
        # demo config
        data_dir = {corpus_dir / 'clips'}
        reference_path = {corpus_dir / 'reference.json'}
        chat.mode = mock
        chat.script_path = {corpus_dir / 'mock_chat.json'}
        listen.port = 9123
        detection.cut_speed = 7.5
        filter.screen_relevance_radius = 10
        distance.radius = 4
        knn.k = 5
        """
        cfg = parse_config_text(text)
        assert cfg.port == 9123
        assert cfg.detection.cut_speed == 7.5
        assert cfg.filter.screen_relevance_radius == 10.0
        assert cfg.distance.radius == 4
        assert cfg.knn_k == 5

    def test_mock_mode_requires_script(self):
        with pytest.raises(Exception, match="script_path"):
            parse_config_text("chat.mode = mock")

    def test_remote_mode_requires_endpoint_and_key(self):
        with pytest.raises(Exception, match="endpoint"):
            parse_config_text("chat.mode = remote")

    def test_unknown_key_rejected(self):
        with pytest.raises(Exception, match="unknown key"):
            parse_config_text("nonsense = 1")
