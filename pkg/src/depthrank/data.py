"""Synthetic ordinal-depth datasets, sampling strategies, and dataset I/O.

A synthetic dataset is a desk-scale stand-in for large ordinal-depth
corpora: each sample holds ``items_per_sample`` feature vectors drawn
i.i.d. standard normal, and a hidden scorer (linear or a small random
tanh network, drawn once per dataset) produces the raw ground-truth
scores, optionally perturbed by Gaussian label noise.  The hidden
parameters are stored in the dataset metadata so tests can verify that
noiseless data is perfectly rankable.

File format (``depthrank.dataset.v1``) — line-delimited text:

    depthrank.dataset.v1 dim=<d> samples=<m> meta=<compact JSON>
    <id> <n> <d> <n*d feature hex-floats> <n raw-score hex-floats>
    ...                                   (exactly m sample lines)

Floats are encoded with ``float.hex`` so round-trips are bit-exact.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import OrdinalPair, RankedSample, as_score_vector, ordinal_label
from .errors import DatasetFormatError, DatasetVersionError, InvalidInputError
from .rng import SplitMix64

DATASET_FORMAT = "depthrank.dataset.v1"
FAMILY_LINEAR = "linear"
FAMILY_MLP = "mlp"
RELEVANCE_MAX = 4.0


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for one synthetic dataset; same spec + seed => identical bytes."""

    n_samples: int
    items_per_sample: int = 500
    feature_dim: int = 10
    noise_sigma: float = 0.0
    scorer_family: str = FAMILY_LINEAR
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise InvalidInputError(f"n_samples must be >= 1: {self.n_samples}")
        if self.items_per_sample < 1:
            raise InvalidInputError(f"items_per_sample must be >= 1: {self.items_per_sample}")
        if self.feature_dim < 1:
            raise InvalidInputError(f"feature_dim must be >= 1: {self.feature_dim}")
        if not (self.noise_sigma >= 0 and math.isfinite(self.noise_sigma)):
            raise InvalidInputError(f"noise_sigma must be finite and >= 0: {self.noise_sigma}")
        if self.scorer_family not in (FAMILY_LINEAR, FAMILY_MLP):
            raise InvalidInputError(
                f"scorer_family must be '{FAMILY_LINEAR}' or '{FAMILY_MLP}': "
                f"{self.scorer_family!r}"
            )
        if not (0 <= self.seed < 2**64):
            raise InvalidInputError(f"seed must be in [0, 2^64): {self.seed}")

    def to_meta(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "items_per_sample": self.items_per_sample,
            "feature_dim": self.feature_dim,
            "noise_sigma": self.noise_sigma,
            "scorer_family": self.scorer_family,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class Dataset:
    """A list of ranked samples plus generator/format metadata."""

    samples: tuple[RankedSample, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        samples = tuple(self.samples)
        if not samples:
            raise InvalidInputError("dataset must contain at least one sample")
        dim = samples[0].dim
        ids = set()
        for s in samples:
            if s.dim != dim:
                raise InvalidInputError(
                    f"sample {s.id!r} has feature_dim {s.dim}, expected {dim}"
                )
            if s.id in ids:
                raise InvalidInputError(f"duplicate sample id {s.id!r}")
            ids.add(s.id)
        object.__setattr__(self, "samples", samples)

    @property
    def feature_dim(self) -> int:
        return self.samples[0].dim

    def __len__(self) -> int:
        return len(self.samples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.meta == other.meta and self.samples == other.samples

    __hash__ = None


def _hex_list(arr: np.ndarray) -> list[str]:
    return [float(x).hex() for x in arr.ravel()]


def _draw_hidden(rng: SplitMix64, spec: SyntheticSpec) -> dict:
    """Hidden ground-truth scorer parameters, drawn first from the stream."""
    d = spec.feature_dim
    if spec.scorer_family == FAMILY_LINEAR:
        w = rng.normals(d)
        return {"family": FAMILY_LINEAR, "w": _hex_list(w)}
    h = 2 * d
    w_hidden = rng.normals(h * d).reshape(h, d) / math.sqrt(d)
    b_hidden = 0.5 * rng.normals(h)
    w_out = rng.normals(h) / math.sqrt(h)
    return {
        "family": FAMILY_MLP,
        "hidden": h,
        "w_hidden": _hex_list(w_hidden),
        "b_hidden": _hex_list(b_hidden),
        "w_out": _hex_list(w_out),
    }


def hidden_raw_scores(hidden: dict, features: np.ndarray) -> np.ndarray:
    """Noise-free raw scores of the hidden generator for given features."""
    if hidden["family"] == FAMILY_LINEAR:
        w = np.array([float.fromhex(t) for t in hidden["w"]])
        return features @ w
    h = hidden["hidden"]
    d = features.shape[1]
    w_hidden = np.array([float.fromhex(t) for t in hidden["w_hidden"]]).reshape(h, d)
    b_hidden = np.array([float.fromhex(t) for t in hidden["b_hidden"]])
    w_out = np.array([float.fromhex(t) for t in hidden["w_out"]])
    return np.tanh(features @ w_hidden.T + b_hidden) @ w_out


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    """Draw a dataset from the spec; bit-identical for identical specs."""
    rng = SplitMix64(spec.seed)
    hidden = _draw_hidden(rng, spec)
    n, d = spec.items_per_sample, spec.feature_dim
    samples = []
    for idx in range(spec.n_samples):
        features = rng.normals(n * d).reshape(n, d)
        raw = hidden_raw_scores(hidden, features)
        if spec.noise_sigma > 0:
            raw = raw + spec.noise_sigma * rng.normals(n)
        samples.append(RankedSample(id=f"s{idx:05d}", items=features, gt_scores=raw))
    meta = {"format": DATASET_FORMAT, "spec": spec.to_meta(), "hidden": hidden}
    return Dataset(samples=tuple(samples), meta=meta)


def normalize_relevance(raw_scores, upper: float = RELEVANCE_MAX) -> np.ndarray:
    """Affine min-max map of raw scores onto [0, upper]; constant input maps
    to all zeros. Order-preserving."""
    raw = as_score_vector(raw_scores)
    lo = raw.min()
    span = raw.max() - lo
    if span == 0.0:
        return np.zeros_like(raw)
    # Divide before scaling so the top item lands on `upper` exactly.
    return (raw - lo) / span * upper


def sample_points(sample: RankedSample, k: int, rng: SplitMix64) -> np.ndarray:
    """k distinct item indices, uniform without replacement.

    ``k == n`` returns every index (ascending) without consuming any
    draws; otherwise a partial Fisher-Yates pass consumes exactly k draws.
    """
    n = sample.n
    if not 1 <= k <= n:
        raise InvalidInputError(f"k must satisfy 1 <= k <= {n}: {k}")
    if k == n:
        return np.arange(n, dtype=np.intp)
    pool = np.arange(n, dtype=np.intp)
    draws = rng.below_block(np.arange(n, n - k, -1, dtype=np.uint64))
    for i in range(k):
        j = i + int(draws[i])
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def sample_pair_arrays(
    gt_scores: np.ndarray, k: int, tie_threshold: float, rng: SplitMix64
):
    """Vectorized pair sampling: (i, j, r) arrays for k pairs.

    Pairs are drawn with replacement across pairs; indices within a pair
    are always distinct.  This is the fast path behind
    :func:`sample_pairs` and the pairwise trainer.
    """
    n = gt_scores.size
    if n < 2:
        raise InvalidInputError("need at least two items to sample pairs")
    if k < 1:
        raise InvalidInputError(f"k must be >= 1: {k}")
    if tie_threshold < 0:
        raise InvalidInputError(f"tie_threshold must be >= 0: {tie_threshold}")
    u = rng.u64_block(k) % np.uint64(n)
    v = rng.u64_block(k) % np.uint64(n - 1)
    i = u.astype(np.intp)
    j = ((u + v + np.uint64(1)) % np.uint64(n)).astype(np.intp)
    d = gt_scores[i] - gt_scores[j]
    r = np.where(np.abs(d) <= tie_threshold, 0, np.where(d > 0, 1, -1)).astype(np.int64)
    return i, j, r


def sample_pairs(
    sample: RankedSample, k: int, tie_threshold: float, rng: SplitMix64
) -> list[OrdinalPair]:
    """k labeled pairs of distinct indices, uniform with replacement across
    pairs, labels from the ground-truth scores at ``tie_threshold``."""
    i, j, r = sample_pair_arrays(sample.gt_scores, k, tie_threshold, rng)
    return [OrdinalPair(int(a), int(b), int(c)) for a, b, c in zip(i, j, r)]


def _meta_json(meta: dict) -> str:
    text = json.dumps(meta, separators=(",", ":"), sort_keys=True)
    if " " in text:
        raise InvalidInputError("dataset meta must serialize without spaces")
    return text


def write_dataset(ds: Dataset, path: str | os.PathLike) -> None:
    lines = [
        f"{DATASET_FORMAT} dim={ds.feature_dim} samples={len(ds)} meta={_meta_json(ds.meta)}"
    ]
    for s in ds.samples:
        if any(c.isspace() for c in s.id):
            raise InvalidInputError(f"sample id may not contain whitespace: {s.id!r}")
        tokens = [s.id, str(s.n), str(s.dim)]
        tokens += _hex_list(s.items)
        tokens += _hex_list(s.gt_scores)
        lines.append(" ".join(tokens))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_floats(tokens: Iterable[str], line_no: int) -> np.ndarray:
    try:
        return np.array([float.fromhex(t) for t in tokens], dtype=np.float64)
    except ValueError as exc:
        raise DatasetFormatError(f"bad float token: {exc}", line=line_no) from exc


def read_dataset(path: str | os.PathLike) -> Dataset:
    """Parse a dataset file, validating structure, finiteness, and counts."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetFormatError("empty file", line=1)
    header = lines[0].split(" ", 3)
    if header[0] != DATASET_FORMAT:
        raise DatasetVersionError(
            f"unsupported format {header[0]!r}, expected {DATASET_FORMAT!r}", line=1
        )
    try:
        fields = dict(part.split("=", 1) for part in header[1:])
        dim = int(fields["dim"])
        count = int(fields["samples"])
        meta = json.loads(fields["meta"])
    except (KeyError, ValueError) as exc:
        raise DatasetFormatError(f"malformed header: {exc}", line=1) from exc
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != count:
        raise DatasetFormatError(
            f"expected {count} sample records, found {len(body)} (truncated or padded file)",
            line=len(lines),
        )
    samples = []
    for rec_no, line in enumerate(body):
        line_no = rec_no + 2
        tokens = line.split(" ")
        if len(tokens) < 3:
            raise DatasetFormatError("sample record needs 'id n d' prefix", line=line_no)
        sid = tokens[0]
        try:
            n, d = int(tokens[1]), int(tokens[2])
        except ValueError as exc:
            raise DatasetFormatError(f"bad sample counts: {exc}", line=line_no) from exc
        if d != dim:
            raise DatasetFormatError(
                f"sample {sid!r} declares feature_dim {d}, header says {dim}", line=line_no
            )
        expected = 3 + n * d + n
        if len(tokens) != expected:
            raise DatasetFormatError(
                f"sample {sid!r}: expected {expected} tokens, found {len(tokens)}",
                line=line_no,
            )
        feats = _parse_floats(tokens[3 : 3 + n * d], line_no).reshape(n, d)
        scores = _parse_floats(tokens[3 + n * d :], line_no)
        try:
            samples.append(RankedSample(id=sid, items=feats, gt_scores=scores))
        except InvalidInputError as exc:
            raise DatasetFormatError(f"sample {sid!r}: {exc}", line=line_no) from exc
    try:
        return Dataset(samples=tuple(samples), meta=meta)
    except InvalidInputError as exc:
        raise DatasetFormatError(str(exc)) from exc
