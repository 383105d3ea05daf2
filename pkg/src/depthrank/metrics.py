"""Evaluation metrics: WHDR, average precision, MAP, and NDCG.

WHDR is the fraction of annotated ordinal pairs whose predicted order
contradicts the label (lower is better).  MAP binarizes the ground-truth
ranking at every cut point 1..n-1, scores each cut with average
precision over the predicted order, and averages over cuts and then over
samples.  NDCG serves as a cross-check metric with the same gain/discount
family the weighted loss uses.

All metrics depend on predictions only through the induced order (plus
tie structure), so they are invariant under strictly increasing
transforms of the scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    OrdinalPair,
    Permutation,
    RankedSample,
    as_score_vector,
    pair_arrays,
    permutation_from_scores,
)
from .data import normalize_relevance
from .errors import InvalidInputError

FLAG_DEGENERATE_PRED_TIES = "degenerate-pred-ties"
FLAG_ALL_ZERO_GAIN = "all-zero-gain"


@dataclass(frozen=True)
class MetricReport:
    """Aggregated evaluation result over one dataset."""

    whdr: float
    map: float
    ndcg: float
    n_samples: int
    n_pairs: int
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("whdr", "map", "ndcg"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InvalidInputError(f"{name} must lie in [0, 1]: {v}")
        if self.n_samples < 0 or self.n_pairs < 0:
            raise InvalidInputError("counts must be >= 0")


def whdr_from_arrays(
    i: np.ndarray, j: np.ndarray, r: np.ndarray, pred_scores: np.ndarray,
    pred_tie_threshold: float = 0.0,
) -> tuple[int, int]:
    """(#misordered pairs, #pairs) for pre-split pair arrays."""
    d = pred_scores[i] - pred_scores[j]
    pred = (d > pred_tie_threshold).astype(np.int64) - (d < -pred_tie_threshold)
    return int(np.count_nonzero(pred != r)), int(r.size)


def whdr(
    pairs: Sequence[OrdinalPair], pred_scores, pred_tie_threshold: float = 0.0
) -> float:
    """Fraction of pairs whose predicted ordinal label disagrees with ``r``.

    A pair is predicted ``+1``/``-1`` when the score difference exceeds
    ``pred_tie_threshold`` in magnitude, ``0`` otherwise.
    """
    if pred_tie_threshold < 0:
        raise InvalidInputError(f"pred_tie_threshold must be >= 0: {pred_tie_threshold}")
    z = as_score_vector(pred_scores)
    i, j, r = pair_arrays(pairs)
    if i.size and (int(i.max()) >= z.size or int(j.max()) >= z.size):
        raise InvalidInputError("pair index out of range for the score vector")
    wrong, total = whdr_from_arrays(i, j, r, z, pred_tie_threshold)
    return wrong / total


def average_precision(binary_labels) -> float:
    """Average precision of a binary label list ordered by descending score.

    Evaluates ``sum_i Precision(i) * (Recall(i) - Recall(i-1))`` with
    ``Recall(0) = 0``; equals 1 exactly when every positive precedes every
    negative.
    """
    labels = np.asarray(binary_labels)
    if labels.ndim != 1 or labels.size < 1:
        raise InvalidInputError("labels must be a non-empty 1-D sequence")
    labels = (labels != 0).astype(np.float64)
    n_pos = labels.sum()
    if n_pos == 0:
        raise InvalidInputError("average precision needs at least one positive label")
    cum = np.cumsum(labels)
    prec = cum / np.arange(1, labels.size + 1)
    rec = cum / n_pos
    rec_prev = np.concatenate(([0.0], rec[:-1]))
    return math.fsum((prec * (rec - rec_prev)).tolist())


def _sample_map(gt_perm: Permutation, pred_scores: np.ndarray) -> float:
    """Mean AP over ground-truth cut points 1..n-1 for one sample."""
    n = len(gt_perm)
    pred_order = permutation_from_scores(pred_scores).order_array
    gt_rank = gt_perm.inverse_array[pred_order]
    ks = np.arange(1, n, dtype=np.float64)
    labels = (gt_rank[None, :] <= ks[:, None]).astype(np.float64)
    cum = np.cumsum(labels, axis=1)
    prec = cum / np.arange(1, n + 1, dtype=np.float64)
    rec = cum / ks[:, None]
    rec_prev = np.concatenate([np.zeros((n - 1, 1)), rec[:, :-1]], axis=1)
    ap = np.sum(prec * (rec - rec_prev), axis=1)
    return math.fsum(ap.tolist()) / (n - 1)


def mean_average_precision(samples: Sequence[tuple[Permutation, object]]) -> float:
    """MAP over (ground-truth permutation, predicted scores) samples.

    For each sample the ground truth is binarized at every cut k in
    1..n-1 (top-k positive), labels are ordered by descending predicted
    score with ascending-index tie-break, and the per-cut APs are averaged
    over cuts and then over samples.
    """
    if not samples:
        raise InvalidInputError("need at least one sample")
    per_sample = []
    for gt_perm, pred in samples:
        z = as_score_vector(pred, n=len(gt_perm))
        if len(gt_perm) < 2:
            raise InvalidInputError("MAP needs samples with at least two items")
        per_sample.append(_sample_map(gt_perm, z))
    return math.fsum(per_sample) / len(per_sample)


def ndcg(gt_scores, pred_scores, log_base: float = 2.0) -> float:
    """DCG of the predicted order over the ideal DCG, with gain 2^s - 1 and
    discount 1/log_base(pos + 1).

    Ground-truth scores must be non-negative graded relevance.  When every
    gain is zero the ideal DCG vanishes and the metric is defined as 1.0
    (callers flag this degenerate case in their reports).
    """
    s = as_score_vector(gt_scores)
    z = as_score_vector(pred_scores, n=s.size)
    if not log_base > 1.0:
        raise InvalidInputError(f"log_base must be > 1: {log_base}")
    if s.min() < 0.0:
        raise InvalidInputError(f"relevance must be >= 0 for NDCG: {s.min()}")
    if s.max() > 60.0:
        raise InvalidInputError(f"relevance too large for 2^s gain: {s.max()}")
    gains = np.exp2(s) - 1.0
    if gains.max() == 0.0:
        return 1.0
    disc = math.log(log_base) / np.log(np.arange(2, s.size + 2, dtype=np.float64))
    pred_order = permutation_from_scores(z).order_array
    dcg = math.fsum((gains[pred_order] * disc).tolist())
    ideal = math.fsum((np.sort(gains)[::-1] * disc).tolist())
    return min(dcg / ideal, 1.0)


def evaluate(
    samples: Sequence[RankedSample],
    predictions: Sequence[np.ndarray],
    pred_tie_threshold: float = 0.0,
    gt_tie_threshold: float = 0.0,
    log_base: float = 2.0,
) -> MetricReport:
    """Score predictions for a list of samples into one :class:`MetricReport`.

    WHDR pools all ground-truth pairs (every index pair of every sample,
    labeled from the raw ground-truth scores at ``gt_tie_threshold``);
    MAP and NDCG average per-sample values in sample order.  NDCG consumes
    per-sample min-max normalized relevance so raw ground-truth scores of
    any sign are accepted.
    """
    if len(samples) == 0 or len(samples) != len(predictions):
        raise InvalidInputError("need equally many samples and prediction vectors")
    wrong = 0
    total = 0
    maps = []
    ndcgs = []
    flags = set()
    for sample, pred in zip(samples, predictions):
        z = as_score_vector(pred, n=sample.n)
        if sample.n < 2:
            raise InvalidInputError(f"sample {sample.id!r} has fewer than two items")
        i, j, r = _gt_pair_arrays(sample, gt_tie_threshold)
        w, t = whdr_from_arrays(i, j, r, z, pred_tie_threshold)
        wrong += w
        total += t
        maps.append(_sample_map(sample.gt_perm, z))
        rel = normalize_relevance(sample.gt_scores)
        if rel.max() == 0.0:
            flags.add(FLAG_ALL_ZERO_GAIN)
        if z.max() == z.min():
            flags.add(FLAG_DEGENERATE_PRED_TIES)
        ndcgs.append(ndcg(rel, z, log_base))
    return MetricReport(
        whdr=wrong / total,
        map=math.fsum(maps) / len(maps),
        ndcg=math.fsum(ndcgs) / len(ndcgs),
        n_samples=len(samples),
        n_pairs=total,
        flags=tuple(sorted(flags)),
    )


def _gt_pair_arrays(sample: RankedSample, gt_tie_threshold: float):
    """Vectorized equivalent of ``pairs_from_permutation`` for evaluation."""
    n = sample.n
    i, j = np.triu_indices(n, k=1)
    d = sample.gt_scores[i] - sample.gt_scores[j]
    r = np.where(np.abs(d) <= gt_tie_threshold, 0, np.where(d > 0, 1, -1))
    return i.astype(np.intp), j.astype(np.intp), r.astype(np.int64)
