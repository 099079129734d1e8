"""
Tactic classification: trajectory alignment costs, multi-player clip
distance, nearest-neighbor labeling, and k-fold evaluation.

Alignment uses dynamic time warping. ``dtw_exact`` runs the full quadratic
program; ``fastdtw`` is the multi-resolution approximation: coarsen the pair
by halving, solve recursively, project the warp path up, and refine inside a
corridor of half-width ``radius`` around it.

The corridor here is built around a radius-independent spine (the projected
path is always computed with a unit-width refinement), so corridors nest as
the radius grows. That makes the approximation cost provably non-increasing
in the radius and always an upper bound on the exact cost; applying the
radius at every pyramid level instead breaks that monotonicity on real data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from numba import njit
from scipy.optimize import linear_sum_assignment

from .core import AttackDirection, Clip, Point2, TacticLabel, Trajectory

#: Pyramid floor: stop halving once either sequence is this short.
_SPINE_MIN_LEN = 3


@dataclass(frozen=True)
class DistanceParams:
    radius: int = 10
    correspondence: Literal["fixed_slot", "optimal_assignment"] = "optimal_assignment"

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        if self.correspondence not in ("fixed_slot", "optimal_assignment"):
            raise ValueError(f"unknown correspondence {self.correspondence!r}")


@dataclass(frozen=True)
class TacticPrediction:
    label: TacticLabel
    neighbors: tuple[tuple[TacticLabel, float], ...]  # ascending by distance
    k: int

    def to_json(self) -> dict:
        return {
            "label": self.label.value,
            "display_name": self.label.display_name,
            "k": self.k,
            "neighbors": [
                {"label": l.value, "distance": d} for l, d in self.neighbors[: self.k]
            ],
        }


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple[TacticLabel, ...]
    rows: np.ndarray          # row-normalized, rows[i, j] = P(pred j | true i)
    counts: np.ndarray        # raw counts
    accuracy: float
    fold_accuracies: tuple[float, ...] = ()

    def to_json(self) -> dict:
        return {
            "labels": [l.value for l in self.labels],
            "matrix": self.rows.tolist(),
            "accuracy": self.accuracy,
            "fold_accuracies": list(self.fold_accuracies),
        }


def _as_array(t: Trajectory | np.ndarray) -> np.ndarray:
    if isinstance(t, Trajectory):
        return np.asarray(t.points(), dtype=np.float64)
    arr = np.asarray(t, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise ValueError("trajectory array must have shape (n, 2) with n >= 1")
    return arr


@njit(cache=True)
def _dtw_full(a, b):  # pragma: no cover - exercised via dtw_exact
    n, m = a.shape[0], b.shape[0]
    D = np.empty((n, m))
    for i in range(n):
        for j in range(m):
            dx = a[i, 0] - b[j, 0]
            dy = a[i, 1] - b[j, 1]
            c = (dx * dx + dy * dy) ** 0.5
            if i == 0 and j == 0:
                D[i, j] = c
            elif i == 0:
                D[i, j] = c + D[i, j - 1]
            elif j == 0:
                D[i, j] = c + D[i - 1, j]
            else:
                best = D[i - 1, j - 1]
                if D[i - 1, j] < best:
                    best = D[i - 1, j]
                if D[i, j - 1] < best:
                    best = D[i, j - 1]
                D[i, j] = c + best
    return D[n - 1, m - 1]


@njit(cache=True)
def _dtw_banded(a, b, lo, hi):  # pragma: no cover - exercised via fastdtw
    """DP restricted to columns [lo[i], hi[i]] per row.

    The corridor must be monotone, connected, and include both corners.
    Returns (cost, pmin, pmax) where pmin/pmax bound the optimal warp path's
    columns per row (used to seed the next refinement level).
    """
    n, m = a.shape[0], b.shape[0]
    INF = np.inf
    width = 0
    for i in range(n):
        w = hi[i] - lo[i] + 1
        if w > width:
            width = w
    D = np.full((n, width), INF)
    for i in range(n):
        for j in range(lo[i], hi[i] + 1):
            dx = a[i, 0] - b[j, 0]
            dy = a[i, 1] - b[j, 1]
            c = (dx * dx + dy * dy) ** 0.5
            col = j - lo[i]
            if i == 0 and j == 0:
                D[0, col] = c
                continue
            best = INF
            if j - 1 >= lo[i]:
                v = D[i, col - 1]
                if v < best:
                    best = v
            if i > 0 and lo[i - 1] <= j <= hi[i - 1]:
                v = D[i - 1, j - lo[i - 1]]
                if v < best:
                    best = v
            if i > 0 and lo[i - 1] <= j - 1 <= hi[i - 1]:
                v = D[i - 1, j - 1 - lo[i - 1]]
                if v < best:
                    best = v
            if best < INF:
                D[i, col] = c + best
    cost = D[n - 1, m - 1 - lo[n - 1]]
    # backtrack, recording the path's column range per row
    pmin = np.full(n, m, dtype=np.int64)
    pmax = np.full(n, -1, dtype=np.int64)
    i, j = n - 1, m - 1
    while True:
        if j < pmin[i]:
            pmin[i] = j
        if j > pmax[i]:
            pmax[i] = j
        if i == 0 and j == 0:
            break
        best = INF
        bi, bj = i, j
        if i > 0 and j > 0 and lo[i - 1] <= j - 1 <= hi[i - 1]:
            v = D[i - 1, j - 1 - lo[i - 1]]
            if v < best:
                best, bi, bj = v, i - 1, j - 1
        if i > 0 and lo[i - 1] <= j <= hi[i - 1]:
            v = D[i - 1, j - lo[i - 1]]
            if v < best:
                best, bi, bj = v, i - 1, j
        if j - 1 >= lo[i]:
            v = D[i, j - 1 - lo[i]]
            if v < best:
                best, bi, bj = v, i, j - 1
        i, j = bi, bj
    return cost, pmin, pmax


@njit(cache=True)
def _corridor(pmin, pmax, m, radius):  # pragma: no cover - exercised via fastdtw
    """Expand per-row path column ranges by a Chebyshev ``radius`` and
    sanitize into a connected monotone corridor containing both corners."""
    n = pmin.shape[0]
    lo = np.empty(n, dtype=np.int64)
    hi = np.empty(n, dtype=np.int64)
    for i in range(n):
        i0 = i - radius if i - radius > 0 else 0
        i1 = i + radius if i + radius < n - 1 else n - 1
        jmin = pmin[i0]
        jmax = pmax[i0]
        for r in range(i0 + 1, i1 + 1):
            if pmin[r] < jmin:
                jmin = pmin[r]
            if pmax[r] > jmax:
                jmax = pmax[r]
        lo[i] = jmin - radius if jmin - radius > 0 else 0
        hi[i] = jmax + radius if jmax + radius < m - 1 else m - 1
    lo[0] = 0
    hi[n - 1] = m - 1
    for i in range(1, n):
        if lo[i] < lo[i - 1]:
            lo[i] = lo[i - 1]
        if hi[i] < hi[i - 1]:
            hi[i] = hi[i - 1]
        if lo[i] > hi[i - 1] + 1:
            lo[i] = hi[i - 1] + 1
    return lo, hi


def dtw_exact(a: Trajectory | np.ndarray, b: Trajectory | np.ndarray) -> float:
    """Classical full-grid dynamic time warping cost; cell cost is the
    Euclidean distance between points, steps are right/down/diagonal."""
    return float(_dtw_full(_as_array(a), _as_array(b)))


@njit(cache=True)
def _fastdtw_kernel(a, b, radius, spine_min_len):  # pragma: no cover
    """Full multi-resolution solve in one pass.

    Builds the halving pyramid for both sequences into flat buffers, solves
    the coarsest pair exactly, then walks back up: project the warp path's
    column ranges to the next level, wrap them in a unit-width corridor and
    re-solve. The user radius only widens the corridor for the final solve,
    so corridors for different radii share the same spine and nest.
    """
    n, m = a.shape[0], b.shape[0]
    if n <= radius + 2 or m <= radius + 2:
        lo = np.zeros(n, dtype=np.int64)
        hi = np.full(n, m - 1, dtype=np.int64)
        cost, _, _ = _dtw_banded(a, b, lo, hi)
        return cost

    # pyramid level sizes (level 0 = full resolution)
    levels = 1
    ln, lm = n, m
    while ln > spine_min_len and lm > spine_min_len:
        ln //= 2
        lm //= 2
        levels += 1
    if levels == 1:  # too short to coarsen (only possible at radius 0)
        lo = np.zeros(n, dtype=np.int64)
        hi = np.full(n, m - 1, dtype=np.int64)
        cost, _, _ = _dtw_banded(a, b, lo, hi)
        return cost
    sizes_a = np.empty(levels, dtype=np.int64)
    sizes_b = np.empty(levels, dtype=np.int64)
    sizes_a[0], sizes_b[0] = n, m
    for k in range(1, levels):
        sizes_a[k] = sizes_a[k - 1] // 2
        sizes_b[k] = sizes_b[k - 1] // 2
    offs_a = np.zeros(levels + 1, dtype=np.int64)
    offs_b = np.zeros(levels + 1, dtype=np.int64)
    for k in range(levels):
        offs_a[k + 1] = offs_a[k] + sizes_a[k]
        offs_b[k + 1] = offs_b[k] + sizes_b[k]
    buf_a = np.empty((offs_a[levels], 2))
    buf_b = np.empty((offs_b[levels], 2))
    buf_a[: n] = a
    buf_b[: m] = b
    for k in range(1, levels):
        pa, ca = offs_a[k - 1], offs_a[k]
        for i in range(sizes_a[k]):
            buf_a[ca + i, 0] = (buf_a[pa + 2 * i, 0] + buf_a[pa + 2 * i + 1, 0]) / 2.0
            buf_a[ca + i, 1] = (buf_a[pa + 2 * i, 1] + buf_a[pa + 2 * i + 1, 1]) / 2.0
        pb, cb = offs_b[k - 1], offs_b[k]
        for j in range(sizes_b[k]):
            buf_b[cb + j, 0] = (buf_b[pb + 2 * j, 0] + buf_b[pb + 2 * j + 1, 0]) / 2.0
            buf_b[cb + j, 1] = (buf_b[pb + 2 * j, 1] + buf_b[pb + 2 * j + 1, 1]) / 2.0

    # coarsest level: exact solve
    k = levels - 1
    ca, cb = sizes_a[k], sizes_b[k]
    lo = np.zeros(ca, dtype=np.int64)
    hi = np.full(ca, cb - 1, dtype=np.int64)
    av = buf_a[offs_a[k] : offs_a[k] + ca]
    bv = buf_b[offs_b[k] : offs_b[k] + cb]
    _, pmin, pmax = _dtw_banded(av, bv, lo, hi)
    cost = 0.0

    # refine upward with a unit corridor; user radius applies at the end
    for k in range(levels - 2, -1, -1):
        fn, fm = sizes_a[k], sizes_b[k]
        fmin = np.empty(fn, dtype=np.int64)
        fmax = np.empty(fn, dtype=np.int64)
        coarse_rows = pmin.shape[0]
        for i in range(fn):
            ci = i // 2
            if ci >= coarse_rows:
                ci = coarse_rows - 1
            v = 2 * pmin[ci]
            fmin[i] = v if v < fm - 1 else fm - 1
            v = 2 * pmax[ci] + 1
            fmax[i] = v if v < fm - 1 else fm - 1
        width = radius if k == 0 else 1
        lo, hi = _corridor(fmin, fmax, fm, width)
        av = buf_a[offs_a[k] : offs_a[k] + fn]
        bv = buf_b[offs_b[k] : offs_b[k] + fm]
        cost, pmin, pmax = _dtw_banded(av, bv, lo, hi)
    return cost


def fastdtw(a: Trajectory | np.ndarray, b: Trajectory | np.ndarray, radius: int = 10) -> float:
    """Multi-resolution DTW cost with corridor half-width ``radius``.

    Always >= dtw_exact(a, b); non-increasing as the radius grows; equal to
    the exact cost once the radius reaches the longer sequence length (the
    base case solves pairs of length <= radius + 2 exactly).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    xa, xb = _as_array(a), _as_array(b)
    return float(_fastdtw_kernel(xa, xb, radius, _SPINE_MIN_LEN))


def normalize_trajectories(clip: Clip) -> list[Trajectory]:
    """The five offensive trajectories in roster order, mirrored into the
    canonical left-attacking frame and scaled into [0, 1] x [0, 1]."""
    court = clip.court
    mirror = clip.attack_direction is AttackDirection.RIGHT
    out = []
    for pid in clip.offense_ids():
        samples = []
        for fr in clip.frames:
            p = fr.position_of(pid)
            x = court.length - p.x if mirror else p.x
            samples.append((fr.frame_index, Point2(x / court.length, p.y / court.width)))
        out.append(Trajectory(samples=tuple(samples)))
    return out


def clip_distance(
    query: Sequence[Trajectory | np.ndarray],
    ref: Sequence[Trajectory | np.ndarray],
    params: DistanceParams | None = None,
) -> float:
    """Distance between two five-player clips.

    ``fixed_slot`` pairs trajectories by position in the sequence;
    ``optimal_assignment`` takes the cheapest one-to-one pairing over the
    5x5 fastdtw cost matrix.
    """
    params = params or DistanceParams()
    if len(query) != 5 or len(ref) != 5:
        raise ValueError(f"expected 5 trajectories per side, got {len(query)} vs {len(ref)}")
    q = [_as_array(t) for t in query]
    r = [_as_array(t) for t in ref]
    if params.correspondence == "fixed_slot":
        total = np.float64(0.0)
        for i in range(5):
            total += fastdtw(q[i], r[i], params.radius)
        return float(total)
    matrix = np.empty((5, 5))
    for i in range(5):
        for j in range(5):
            matrix[i, j] = fastdtw(q[i], r[j], params.radius)
    rows, cols = linear_sum_assignment(matrix)
    return float(matrix[rows, cols].sum())


def knn_classify(
    query: Sequence[Trajectory | np.ndarray],
    refset,
    k: int = 3,
    params: DistanceParams | None = None,
) -> TacticPrediction:
    """Label a query by majority vote among its k nearest reference clips.

    Vote ties break toward the smaller mean distance within the k nearest,
    then toward the earlier label in enum order. The full ascending neighbor
    list is kept on the prediction for explanation.
    """
    params = params or DistanceParams()
    if len(refset.clips) == 0:
        raise ValueError("reference set is empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(refset.clips):
        raise ValueError(f"k={k} exceeds reference set size {len(refset.clips)}")
    dists = [
        (clip_distance(query, rc.trajectories, params), rc.label) for rc in refset.clips
    ]
    best = _vote(dists, k)
    dists.sort(key=lambda t: (t[0], t[1].value))
    return TacticPrediction(
        label=best,
        neighbors=tuple((label, float(d)) for d, label in dists),
        k=k,
    )


def _vote(dists: list[tuple[float, TacticLabel]], k: int) -> TacticLabel:
    """Majority label among the k nearest; ties go to the smaller mean
    distance, then the earlier label in enum order."""
    ordered = sorted(dists, key=lambda t: (t[0], t[1].value))
    tally: dict[TacticLabel, list[float]] = {}
    for d, label in ordered[:k]:
        tally.setdefault(label, []).append(d)
    enum_order = {l: i for i, l in enumerate(TacticLabel)}
    return min(
        tally.items(),
        key=lambda kv: (-len(kv[1]), float(np.mean(kv[1])), enum_order[kv[0]]),
    )[0]


def cross_validate(
    refset,
    folds: int = 5,
    k: int = 3,
    params: DistanceParams | None = None,
    seed: int = 0,
) -> ConfusionMatrix:
    """Stratified k-fold cross-validation of the nearest-neighbor classifier.

    Clips are shuffled per label with the seeded generator and dealt
    round-robin into folds, so the split (and therefore the whole matrix) is
    reproducible from the seed.
    """
    params = params or DistanceParams()
    if len(refset.clips) < folds:
        raise ValueError(f"need at least {folds} clips, got {len(refset.clips)}")
    rng = np.random.default_rng(seed)
    by_label: dict[TacticLabel, list[int]] = {}
    for idx, rc in enumerate(refset.clips):
        by_label.setdefault(rc.label, []).append(idx)
    fold_of = {}
    for label in sorted(by_label, key=lambda l: l.value):
        indices = np.array(by_label[label])
        rng.shuffle(indices)
        for pos, idx in enumerate(indices):
            fold_of[int(idx)] = pos % folds

    # convert every clip once; the fold loops reuse the arrays
    arrays = [
        tuple(_as_array(t) for t in rc.trajectories) for rc in refset.clips
    ]
    clip_labels = [rc.label for rc in refset.clips]

    labels = tuple(TacticLabel)
    label_pos = {l: i for i, l in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    fold_accuracies = []
    for fold in range(folds):
        train_idx = [i for i in range(len(refset.clips)) if fold_of[i] != fold]
        test_idx = [i for i in range(len(refset.clips)) if fold_of[i] == fold]
        if not test_idx:
            continue
        correct = 0
        for i in test_idx:
            dists = [
                (clip_distance(arrays[i], arrays[j], params), clip_labels[j])
                for j in train_idx
            ]
            pred = _vote(dists, k)
            counts[label_pos[clip_labels[i]], label_pos[pred]] += 1
            if pred == clip_labels[i]:
                correct += 1
        fold_accuracies.append(correct / len(test_idx))

    row_sums = counts.sum(axis=1, keepdims=True)
    rows = np.divide(
        counts, np.where(row_sums == 0, 1, row_sums), dtype=np.float64
    )
    total = counts.sum()
    accuracy = float(np.trace(counts) / total) if total else 0.0
    return ConfusionMatrix(
        labels=labels,
        rows=rows,
        counts=counts,
        accuracy=accuracy,
        fold_accuracies=tuple(fold_accuracies),
    )
