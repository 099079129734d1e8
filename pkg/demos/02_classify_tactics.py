"""Tactic classification with warped-time trajectory matching.

Builds a jittered reference set from the ten scripted tactics, classifies a
fresh noisy rendering of one of them, and cross-validates the whole set.
Run: python demos/02_classify_tactics.py
"""

import numpy as np

from courtside import (
    DistanceParams,
    TacticLabel,
    cross_validate,
    dtw_exact,
    fastdtw,
    generate_synthetic_play,
    knn_classify,
    normalize_trajectories,
)
from courtside.playbook import build_reference_set, tactic_script

# the cost of a warped alignment vs its fast approximation
rng = np.random.default_rng(3)
a = np.cumsum(rng.normal(0, 0.03, (60, 2)), axis=0)
b = np.cumsum(rng.normal(0, 0.03, (48, 2)), axis=0)
print("alignment cost between two random walks of different lengths:")
print(f"  exact grid: {dtw_exact(a, b):8.4f}")
for radius in (1, 5, 10):
    print(f"  radius {radius:2d}:  {fastdtw(a, b, radius):8.4f}")

refset = build_reference_set(per_label=15, fps=8.0, noise_sigma=1.5, seed=0)
print(f"\nreference set: {len(refset)} clips, {len(refset.labels())} tactics")

query_script = tactic_script(TacticLabel.EV, variant=7)
clip, _ = generate_synthetic_play(query_script, fps=8.0, noise_sigma=1.5, seed=999)
pred = knn_classify(normalize_trajectories(clip), refset, k=3, params=DistanceParams())
print(f"\nfresh Elevator rendering classified as: {pred.label.value} "
      f"({pred.label.display_name})")
print("nearest neighbors:")
for label, dist in pred.neighbors[:3]:
    print(f"  {label.value}  distance {dist:.4f}")

cm = cross_validate(refset, folds=5, k=3, seed=7)
print(f"\n5-fold cross-validation accuracy: {cm.accuracy:.3f}")
print("per-fold:", " ".join(f"{a:.3f}" for a in cm.fold_accuracies))
