"""Assemble a ready-to-serve data directory.

Writes demo clips, a reference set, a stats table, a mock chat script, and
a config file under ./demo_data, then prints the serve command.
Run: python demos/04_build_service_corpus.py
"""

import json
from pathlib import Path

from courtside import TacticLabel, generate_synthetic_play, save_clip, save_reference_set
from courtside.playbook import build_reference_set, detector_scenarios, tactic_script

root = Path("demo_data")
clips_dir = root / "clips"
clips_dir.mkdir(parents=True, exist_ok=True)

count = 0
for script in detector_scenarios():
    if script.clip_id in ("cut-reject-5", "screen-no-switch"):
        continue  # negative controls make dull viewing
    clip, _ = generate_synthetic_play(script, fps=25.0, noise_sigma=0.0, seed=2)
    (clips_dir / f"{clip.clip_id}.json").write_bytes(save_clip(clip))
    count += 1
for label in (TacticLabel.PD, TacticLabel.EV, TacticLabel.WV):
    clip, _ = generate_synthetic_play(tactic_script(label, 1), fps=25.0, noise_sigma=0.6, seed=5)
    (clips_dir / f"{clip.clip_id}.json").write_bytes(save_clip(clip))
    count += 1

(root / "reference.json").write_bytes(
    save_reference_set(build_reference_set(per_label=5, fps=8.0, noise_sigma=1.0, seed=1))
)
(root / "stats.csv").write_text(
    "player,team,fouls,points,assists\n"
    "Alan Price,home,2,14,7\nBen Okafor,home,3,9,2\nCarl Jennings,home,1,21,4\n"
    "Dev Patel,home,4,6,1\nEli Mercer,home,2,11,3\n"
    "Felix Grant,away,3,8,5\nGus Harmon,away,2,17,2\nIvan Sorokin,away,1,4,6\n"
    "Jack Lowe,away,5,12,1\nKade Willis,away,2,15,3\n"
)
(root / "mock_chat.json").write_text(
    json.dumps(
        [
            {
                "pattern": "within 2 sentences",
                "response": "The offense strings quick actions together to shake a defender "
                "loose. Watch the off-ball movement right before the finish.",
            },
            {"pattern": "Observation: (\\d+)", "response": "Final Answer: the table says it."},
        ],
        indent=2,
    )
)
(root / "courtside.conf").write_text(
    f"""# demo service configuration
data_dir = {clips_dir}
reference_path = {root / 'reference.json'}
stats_path = {root / 'stats.csv'}
chat.mode = mock
chat.script_path = {root / 'mock_chat.json'}
ui_dir = frontend/dist
listen.host = 127.0.0.1
listen.port = 8800
"""
)
print(f"wrote {count} clips plus reference/stats/chat fixtures under {root}/")
print("serve with:  courtside serve --config demo_data/courtside.conf")
