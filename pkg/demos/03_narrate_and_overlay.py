"""From detected actions to a narrated, frame-anchored overlay.

Assembles the prompt bundle a model would see, generates the deterministic
fallback narrative in both perspectives, and compiles the overlay script the
web UI plays back.
Run: python demos/03_narrate_and_overlay.py
"""

import json

from courtside import (
    ExplanationPlan,
    Perspective,
    TacticLabel,
    build_game_context,
    build_prompts,
    compile_script,
    detect_all,
    fallback_generate,
    filter_events,
    generate_synthetic_play,
    parse_explanation,
)
from courtside.playbook import give_and_go
from courtside.service import load_tactic_descriptions

clip, _ = generate_synthetic_play(give_and_go(), fps=25.0, noise_sigma=0.0, seed=1)
events = filter_events(detect_all(clip), fps=clip.fps)
descriptions = load_tactic_descriptions()

ctx = build_game_context(
    clip, TacticLabel.WV, descriptions[TacticLabel.WV], events,
    question="Why does the point guard give the ball up?",
)
print("actions as the narrative layer numbers them:")
print(ctx.actions_text)

bundle = build_prompts(ctx, Perspective.FIRST)
print(f"\nfirst-person action prompt is {len(bundle.action_prompt)} chars; tail:")
print("  ..." + bundle.action_prompt[-90:].replace("\n", " "))

for perspective in (Perspective.THIRD, Perspective.FIRST):
    summary, text = fallback_generate(ctx, perspective)
    segments = parse_explanation(text, perspective, ctx.groups, ctx.speakers())
    print(f"\n--- {perspective.value} person ---")
    print(summary)
    for seg in segments:
        for speaker, line in seg.lines:
            print(f"  [{seg.anchor_frame:4d}] {speaker}: {line}")

plan = ExplanationPlan(
    summary=summary, segments=tuple(segments), perspective=Perspective.FIRST
)
overlay = compile_script(list(ctx.groups), plan, clip)
print(f"\noverlay script: {len(overlay.entries)} entries")
for entry in overlay.entries:
    kinds = {}
    for p in entry.primitives:
        kinds[p.type] = kinds.get(p.type, 0) + 1
    print(f"  pause at frame {entry.pause_frame:4d}: {json.dumps(kinds)}")
