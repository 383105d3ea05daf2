"""Trainable scorers, hand-derived backpropagation, and the SGD loop.

Scorers map item feature vectors to ranking scores: either a linear model
``w . x + b`` or a one-hidden-layer tanh network.  Backprop composes the
analytic score-gradients from the loss module with the scorer Jacobian;
no autodiff is involved, so :func:`gradient_check` (central finite
differences over the full parameter vector) is the correctness oracle.

Training is plain mini-batch SGD with classic momentum, fully
deterministic given the config seed: sample order, per-epoch point/pair
subsampling, and MLP initialization all flow from one
:class:`~depthrank.rng.SplitMix64` stream.

Params file format (``depthrank.params.v1``) — line-delimited text with
hex-float encoding, bit-exact on round-trip:

    depthrank.params.v1 family=linear dim=<d>
    w <d hex-floats>
    b <hex-float>
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import losses
from .core import RankedSample, permutation_from_scores
from .data import Dataset, normalize_relevance, sample_pair_arrays, sample_points
from .errors import (
    DatasetFormatError,
    DatasetVersionError,
    InvalidInputError,
    TrainingDivergedError,
)
from .losses import WeightConfig
from .metrics import _sample_map, whdr_from_arrays
from .rng import SplitMix64

PARAMS_FORMAT = "depthrank.params.v1"

LOSS_PAIRWISE = "pairwise"
LOSS_LISTNET = "listnet"
LOSS_LISTMLE = "listmle"
LOSS_WEIGHTED_LISTMLE = "weighted-listmle"
LOSS_KINDS = (LOSS_PAIRWISE, LOSS_LISTNET, LOSS_LISTMLE, LOSS_WEIGHTED_LISTMLE)

SCORER_LINEAR = "linear"
SCORER_MLP = "mlp"
SCORER_FAMILIES = (SCORER_LINEAR, SCORER_MLP)


def _frozen(arr) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.float64)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class LinearScorer:
    """Scores are ``x . w + b`` per item."""

    w: np.ndarray
    b: float

    def __post_init__(self):
        w = _frozen(self.w)
        if w.ndim != 1 or not np.isfinite(w).all() or not math.isfinite(self.b):
            raise InvalidInputError("linear scorer parameters must be finite 1-D w and scalar b")
        object.__setattr__(self, "w", w)

    family = SCORER_LINEAR

    @property
    def dim(self) -> int:
        return self.w.size


@dataclass(frozen=True)
class MlpScorer:
    """One tanh hidden layer: ``tanh(x W_h^T + b_h) . w_o + b_o``."""

    w_hidden: np.ndarray
    b_hidden: np.ndarray
    w_out: np.ndarray
    b_out: float

    def __post_init__(self):
        w_hidden = _frozen(self.w_hidden)
        b_hidden = _frozen(self.b_hidden)
        w_out = _frozen(self.w_out)
        h = w_out.size
        if (
            w_hidden.ndim != 2
            or w_hidden.shape[0] != h
            or b_hidden.shape != (h,)
            or w_out.ndim != 1
            or h < 1
        ):
            raise InvalidInputError("mlp scorer parameter shapes are inconsistent")
        if not (
            np.isfinite(w_hidden).all()
            and np.isfinite(b_hidden).all()
            and np.isfinite(w_out).all()
            and math.isfinite(self.b_out)
        ):
            raise InvalidInputError("mlp scorer parameters must be finite")
        object.__setattr__(self, "w_hidden", w_hidden)
        object.__setattr__(self, "b_hidden", b_hidden)
        object.__setattr__(self, "w_out", w_out)

    family = SCORER_MLP

    @property
    def dim(self) -> int:
        return self.w_hidden.shape[1]

    @property
    def hidden(self) -> int:
        return self.w_hidden.shape[0]


ScorerParams = LinearScorer | MlpScorer


@dataclass(frozen=True)
class TrainConfig:
    """Everything the training loop needs; all randomness flows from ``seed``."""

    loss: str
    learning_rate: float
    epochs: int
    seed: int
    momentum: float = 0.9
    batch: int = 32
    points_per_sample: int = 500
    pairs_per_sample: int = 3000
    weight_config: WeightConfig = field(default_factory=WeightConfig)
    scorer: str = SCORER_LINEAR
    hidden_size: int = 16
    eval_samples: int = 100

    def __post_init__(self):
        if self.loss not in LOSS_KINDS:
            raise InvalidInputError(f"unknown loss {self.loss!r}; expected one of {LOSS_KINDS}")
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise InvalidInputError(f"learning_rate must be > 0: {self.learning_rate}")
        if not 0 <= self.momentum < 1:
            raise InvalidInputError(f"momentum must lie in [0, 1): {self.momentum}")
        if self.epochs < 1:
            raise InvalidInputError(f"epochs must be >= 1: {self.epochs}")
        if self.batch < 1:
            raise InvalidInputError(f"batch must be >= 1: {self.batch}")
        if self.points_per_sample < 1:
            raise InvalidInputError(f"points_per_sample must be >= 1: {self.points_per_sample}")
        if self.pairs_per_sample < 1:
            raise InvalidInputError(f"pairs_per_sample must be >= 1: {self.pairs_per_sample}")
        if self.scorer not in SCORER_FAMILIES:
            raise InvalidInputError(
                f"unknown scorer {self.scorer!r}; expected one of {SCORER_FAMILIES}"
            )
        if self.hidden_size < 1:
            raise InvalidInputError(f"hidden_size must be >= 1: {self.hidden_size}")
        if self.eval_samples < 1:
            raise InvalidInputError(f"eval_samples must be >= 1: {self.eval_samples}")
        if not (0 <= self.seed < 2**64):
            raise InvalidInputError(f"seed must be in [0, 2^64): {self.seed}")


@dataclass
class TrainTrace:
    """Per-epoch training record; list lengths equal the epochs completed."""

    train_loss: list[float] = field(default_factory=list)
    eval_whdr: list[float] = field(default_factory=list)
    eval_map: list[float] = field(default_factory=list)
    epoch_seconds: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.train_loss)


def score(params: ScorerParams, features) -> np.ndarray:
    """Per-item ranking scores for an (n, d) feature matrix."""
    x = np.ascontiguousarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != params.dim:
        raise InvalidInputError(
            f"features must be (n, {params.dim}), got shape {x.shape}"
        )
    if isinstance(params, LinearScorer):
        return x @ params.w + params.b
    hidden = np.tanh(x @ params.w_hidden.T + params.b_hidden)
    return hidden @ params.w_out + params.b_out


def init_params(family: str, dim: int, hidden_size: int, rng: SplitMix64) -> ScorerParams:
    """Zero-initialized linear scorer, or an MLP with symmetric uniform
    weights scaled by 1/sqrt(fan-in) and zero biases."""
    if family == SCORER_LINEAR:
        return LinearScorer(w=np.zeros(dim), b=0.0)
    h = hidden_size
    w_hidden = (2.0 * rng.uniforms(h * dim) - 1.0).reshape(h, dim) / math.sqrt(dim)
    w_out = (2.0 * rng.uniforms(h) - 1.0) / math.sqrt(h)
    return MlpScorer(w_hidden=w_hidden, b_hidden=np.zeros(h), w_out=w_out, b_out=0.0)


def params_to_vector(params: ScorerParams) -> np.ndarray:
    if isinstance(params, LinearScorer):
        return np.concatenate([params.w, [params.b]])
    return np.concatenate(
        [params.w_hidden.ravel(), params.b_hidden, params.w_out, [params.b_out]]
    )


def vector_to_params(vec: np.ndarray, template: ScorerParams) -> ScorerParams:
    vec = np.asarray(vec, dtype=np.float64)
    if isinstance(template, LinearScorer):
        d = template.dim
        if vec.size != d + 1:
            raise InvalidInputError(f"expected {d + 1} parameters, got {vec.size}")
        return LinearScorer(w=vec[:d].copy(), b=float(vec[d]))
    h, d = template.hidden, template.dim
    if vec.size != h * d + 2 * h + 1:
        raise InvalidInputError(f"expected {h * d + 2 * h + 1} parameters, got {vec.size}")
    k = h * d
    return MlpScorer(
        w_hidden=vec[:k].reshape(h, d).copy(),
        b_hidden=vec[k : k + h].copy(),
        w_out=vec[k + h : k + 2 * h].copy(),
        b_out=float(vec[k + 2 * h]),
    )


def _param_grad_from_scores(params: ScorerParams, x: np.ndarray, dz: np.ndarray) -> np.ndarray:
    """Chain rule: flat parameter gradient J^T dz for the scorer Jacobian J."""
    if isinstance(params, LinearScorer):
        return np.concatenate([x.T @ dz, [dz.sum()]])
    pre = x @ params.w_hidden.T + params.b_hidden
    hidden = np.tanh(pre)
    d_hidden = dz[:, None] * params.w_out[None, :]
    d_pre = d_hidden * (1.0 - hidden * hidden)
    return np.concatenate(
        [(d_pre.T @ x).ravel(), d_pre.sum(axis=0), hidden.T @ dz, [dz.sum()]]
    )


@dataclass(frozen=True)
class ListwiseTarget:
    """Fixed subsample context for one listwise loss evaluation."""

    points: np.ndarray | None  # None = use the whole sample
    perm_order: np.ndarray     # gt order within the (sub)sample
    gt_sub: np.ndarray         # raw gt scores of the subsample
    weights: np.ndarray | None  # position weights (weighted ListMLE only)


@dataclass(frozen=True)
class PairTarget:
    """Fixed pair sample for one pairwise loss evaluation."""

    i: np.ndarray
    j: np.ndarray
    r: np.ndarray


def make_listwise_target(
    sample: RankedSample, cfg: TrainConfig, points: np.ndarray | None
) -> ListwiseTarget:
    if points is None:
        gt_sub = sample.gt_scores
        order = sample.gt_perm.order_array
    else:
        gt_sub = sample.gt_scores[points]
        order = permutation_from_scores(gt_sub).order_array
    weights = None
    if cfg.loss == LOSS_WEIGHTED_LISTMLE:
        relevance = normalize_relevance(gt_sub)
        weights = losses.position_weights(cfg.weight_config, relevance[order])
    return ListwiseTarget(points=points, perm_order=order, gt_sub=gt_sub, weights=weights)


def make_full_target(sample: RankedSample, cfg: TrainConfig):
    """Deterministic whole-sample target (used by gradient checks)."""
    if cfg.loss == LOSS_PAIRWISE:
        n = sample.n
        if n < 2:
            raise InvalidInputError("pairwise loss needs samples with >= 2 items")
        i, j = np.triu_indices(n, k=1)
        d = sample.gt_scores[i] - sample.gt_scores[j]
        r = np.where(d == 0, 0, np.where(d > 0, 1, -1)).astype(np.int64)
        return PairTarget(i=i.astype(np.intp), j=j.astype(np.intp), r=r)
    return make_listwise_target(sample, cfg, None)


def draw_target(sample: RankedSample, cfg: TrainConfig, rng: SplitMix64):
    """Per-epoch stochastic target: point subset or pair sample."""
    if cfg.loss == LOSS_PAIRWISE:
        i, j, r = sample_pair_arrays(sample.gt_scores, cfg.pairs_per_sample, 0.0, rng)
        return PairTarget(i=i, j=j, r=r)
    k = min(cfg.points_per_sample, sample.n)
    return make_listwise_target(sample, cfg, sample_points(sample, k, rng))


def _pairwise_batch(z: np.ndarray, target: PairTarget):
    """Mean pairwise loss over sampled pairs and its score gradient.

    The squared tie branch can overflow to inf when training diverges;
    that is the divergence signal the train loop checks for, so overflow
    is deliberately silent here.
    """
    d = z[target.i] - z[target.j]
    r = target.r
    ordered = r != 0
    sgn = r.astype(np.float64)
    with np.errstate(over="ignore"):
        vals = np.where(ordered, losses.softplus(-sgn * d), d * d)
        g_i = np.where(ordered, -sgn * losses.sigmoid(-sgn * d), 2.0 * d)
    k = d.size
    dz = np.zeros_like(z)
    np.add.at(dz, target.i, g_i)
    np.add.at(dz, target.j, -g_i)
    return float(vals.sum() / k), dz / k


def backprop(
    params: ScorerParams, sample: RankedSample, cfg: TrainConfig, target=None
):
    """Loss value and flat parameter gradient for one sample.

    ``target`` fixes the subsample (points or pairs); ``None`` evaluates
    the deterministic whole-sample target.
    """
    if target is None:
        target = make_full_target(sample, cfg)
    if isinstance(target, PairTarget):
        z = score(params, sample.items)
        value, dz = _pairwise_batch(z, target)
        return value, _param_grad_from_scores(params, sample.items, dz)
    x = sample.items if target.points is None else sample.items[target.points]
    z = score(params, x)
    if cfg.loss == LOSS_LISTNET:
        res = losses.listnet_loss(target.gt_sub, z)
        value, dz = res.value, res.grad
    elif cfg.loss == LOSS_LISTMLE:
        value, dz = losses._weighted_nll(target.perm_order, np.ones(z.size), z)
    elif cfg.loss == LOSS_WEIGHTED_LISTMLE:
        value, dz = losses._weighted_nll(target.perm_order, target.weights, z)
    else:
        raise InvalidInputError(f"unknown loss {cfg.loss!r}")
    return value, _param_grad_from_scores(params, x, dz)


def sgd_step(
    vec: np.ndarray,
    grad: np.ndarray,
    learning_rate: float,
    momentum: float,
    velocity: np.ndarray,
):
    """Classic momentum update: v <- mu v - eta g; theta <- theta + v."""
    if vec.shape != grad.shape or vec.shape != velocity.shape:
        raise InvalidInputError("parameter, gradient, and velocity shapes must match")
    if not np.isfinite(grad).all():
        raise TrainingDivergedError("non-finite gradient in SGD step")
    new_velocity = momentum * velocity - learning_rate * grad
    return vec + new_velocity, new_velocity


@dataclass(frozen=True)
class _EvalContext:
    """Cached ground-truth pair arrays and permutations for trace metrics."""

    samples: tuple[RankedSample, ...]
    pair_i: tuple[np.ndarray, ...]
    pair_j: tuple[np.ndarray, ...]
    pair_r: tuple[np.ndarray, ...]


def _make_eval_context(samples: Sequence[RankedSample]) -> _EvalContext:
    pi, pj, pr = [], [], []
    for s in samples:
        i, j = np.triu_indices(s.n, k=1)
        d = s.gt_scores[i] - s.gt_scores[j]
        r = np.where(d == 0, 0, np.where(d > 0, 1, -1)).astype(np.int64)
        pi.append(i.astype(np.intp))
        pj.append(j.astype(np.intp))
        pr.append(r)
    return _EvalContext(tuple(samples), tuple(pi), tuple(pj), tuple(pr))


def _trace_eval(params: ScorerParams, ctx: _EvalContext) -> tuple[float, float]:
    wrong = total = 0
    maps = []
    for idx, s in enumerate(ctx.samples):
        z = score(params, s.items)
        w, t = whdr_from_arrays(ctx.pair_i[idx], ctx.pair_j[idx], ctx.pair_r[idx], z)
        wrong += w
        total += t
        maps.append(_sample_map(s.gt_perm, z))
    return wrong / total, math.fsum(maps) / len(maps)


def train(dataset: Dataset, cfg: TrainConfig) -> tuple[ScorerParams, TrainTrace]:
    """Mini-batch SGD over the dataset; deterministic given ``cfg.seed``.

    Listwise losses redraw ``points_per_sample`` item subsets per sample
    per epoch (the whole sample when it is at least as large); the
    pairwise loss redraws ``pairs_per_sample`` pairs.  Batch losses are
    means over the samples of the batch.  Raises
    :class:`TrainingDivergedError` (carrying the partial trace and last
    finite params) when a loss or gradient goes non-finite.
    """
    if len(dataset) < 1:
        raise InvalidInputError("dataset must not be empty")
    if cfg.loss == LOSS_PAIRWISE and any(s.n < 2 for s in dataset.samples):
        raise InvalidInputError("pairwise training needs every sample to have >= 2 items")
    rng = SplitMix64(cfg.seed)
    template = init_params(cfg.scorer, dataset.feature_dim, cfg.hidden_size, rng)
    vec = params_to_vector(template)
    velocity = np.zeros_like(vec)
    m = len(dataset)
    # Static listwise targets when the subset is the whole sample anyway.
    static_targets = None
    if cfg.loss != LOSS_PAIRWISE and cfg.points_per_sample >= max(s.n for s in dataset.samples):
        static_targets = [make_listwise_target(s, cfg, None) for s in dataset.samples]
    eval_ctx = _make_eval_context(dataset.samples[: min(cfg.eval_samples, m)])
    trace = TrainTrace()
    for _epoch in range(cfg.epochs):
        t0 = time.perf_counter()
        order = rng.permutation(m)
        epoch_loss = 0.0
        params = vector_to_params(vec, template)
        for start in range(0, m, cfg.batch):
            batch = order[start : start + cfg.batch]
            total_val = 0.0
            grad_acc = np.zeros_like(vec)
            for s_idx in batch:
                s = dataset.samples[int(s_idx)]
                if static_targets is not None:
                    target = static_targets[int(s_idx)]
                else:
                    target = draw_target(s, cfg, rng)
                value, grad = backprop(params, s, cfg, target)
                total_val += value
                grad_acc += grad
            batch_val = total_val / batch.size
            if not math.isfinite(batch_val):
                raise TrainingDivergedError(
                    "non-finite training loss", trace=trace,
                    params=vector_to_params(vec, template),
                )
            try:
                vec, velocity = sgd_step(
                    vec, grad_acc / batch.size, cfg.learning_rate, cfg.momentum, velocity
                )
            except TrainingDivergedError as exc:
                exc.trace = trace
                exc.params = vector_to_params(vec, template)
                raise
            params = vector_to_params(vec, template)
            epoch_loss += total_val
        if not np.isfinite(vec).all():
            raise TrainingDivergedError(
                "non-finite parameters after epoch", trace=trace, params=params
            )
        whdr_val, map_val = _trace_eval(params, eval_ctx)
        trace.train_loss.append(epoch_loss / m)
        trace.eval_whdr.append(whdr_val)
        trace.eval_map.append(map_val)
        trace.epoch_seconds.append(time.perf_counter() - t0)
    return vector_to_params(vec, template), trace


def gradient_check(
    fn: Callable[[np.ndarray], float],
    analytic_grad: np.ndarray,
    x0: np.ndarray,
    h: float = 1e-5,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    The relative error per coordinate uses ``max(1, |analytic|)`` as the
    denominator, so tiny coordinates are compared absolutely.
    """
    if h <= 0:
        raise InvalidInputError(f"h must be > 0: {h}")
    analytic = np.asarray(analytic_grad, dtype=np.float64)
    x0 = np.asarray(x0, dtype=np.float64)
    worst = 0.0
    for idx in range(x0.size):
        step = np.zeros_like(x0)
        step[idx] = h
        numeric = (fn(x0 + step) - fn(x0 - step)) / (2.0 * h)
        rel = abs(numeric - analytic[idx]) / max(1.0, abs(analytic[idx]))
        worst = max(worst, rel)
    return worst


def loss_config(loss: str, weight_config: WeightConfig | None = None, scorer: str = SCORER_LINEAR,
                hidden_size: int = 8) -> TrainConfig:
    """Minimal config for one-off backprop/gradient-check calls."""
    return TrainConfig(
        loss=loss,
        learning_rate=1e-3,
        epochs=1,
        seed=0,
        weight_config=weight_config or WeightConfig(),
        scorer=scorer,
        hidden_size=hidden_size,
    )


def gradcheck_cases(
    seed: int = 0,
    instances: int = 10,
    max_items: int = 12,
    tolerances: dict[str, float] | None = None,
) -> list[tuple[str, float, float]]:
    """(case name, max relative error, tolerance) for every loss x scorer.

    Random instances are drawn from a fixed stream, so the default run is
    reproducible; linear cases default to 1e-5 tolerance and MLP cases to
    1e-4 (the deeper chain loses one digit to cancellation).
    """
    tolerances = tolerances or {}
    rng = SplitMix64(seed)
    rows = []
    for family in SCORER_FAMILIES:
        for loss in LOSS_KINDS:
            tol = tolerances.get(family, 1e-5 if family == SCORER_LINEAR else 1e-4)
            worst = 0.0
            for _ in range(instances):
                n = 2 + rng.below(max_items - 1)
                d = 2 + rng.below(5)
                feats = rng.normals(n * d).reshape(n, d)
                gt = 3.0 * rng.normals(n)
                sample = RankedSample(id="g", items=feats, gt_scores=gt)
                cfg = loss_config(loss, scorer=family)
                if family == SCORER_LINEAR:
                    params = LinearScorer(w=rng.normals(d), b=float(rng.normals(1)[0]))
                else:
                    h = cfg.hidden_size
                    params = MlpScorer(
                        w_hidden=rng.normals(h * d).reshape(h, d) / math.sqrt(d),
                        b_hidden=0.3 * rng.normals(h),
                        w_out=rng.normals(h) / math.sqrt(h),
                        b_out=float(rng.normals(1)[0]),
                    )
                x0 = params_to_vector(params)
                _, analytic = backprop(params, sample, cfg)

                def fn(v, sample=sample, cfg=cfg, params=params):
                    return backprop(vector_to_params(v, params), sample, cfg)[0]

                worst = max(worst, gradient_check(fn, analytic, x0))
            rows.append((f"{loss}/{family}", worst, tol))
    return rows


def write_params(params: ScorerParams, path) -> None:
    lines = []
    if isinstance(params, LinearScorer):
        lines.append(f"{PARAMS_FORMAT} family={SCORER_LINEAR} dim={params.dim}")
        lines.append("w " + " ".join(float(x).hex() for x in params.w))
        lines.append("b " + float(params.b).hex())
    else:
        lines.append(
            f"{PARAMS_FORMAT} family={SCORER_MLP} dim={params.dim} hidden={params.hidden}"
        )
        lines.append("w_hidden " + " ".join(float(x).hex() for x in params.w_hidden.ravel()))
        lines.append("b_hidden " + " ".join(float(x).hex() for x in params.b_hidden))
        lines.append("w_out " + " ".join(float(x).hex() for x in params.w_out))
        lines.append("b_out " + float(params.b_out).hex())
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_vector(lines: list[str], idx: int, name: str, count: int) -> np.ndarray:
    if idx >= len(lines):
        raise DatasetFormatError(f"missing {name!r} record", line=idx + 1)
    tokens = lines[idx].split(" ")
    if tokens[0] != name or len(tokens) != count + 1:
        raise DatasetFormatError(
            f"expected {name!r} with {count} values, got {tokens[0]!r} with {len(tokens) - 1}",
            line=idx + 1,
        )
    try:
        return np.array([float.fromhex(t) for t in tokens[1:]], dtype=np.float64)
    except ValueError as exc:
        raise DatasetFormatError(f"bad float token: {exc}", line=idx + 1) from exc


def read_params(path) -> ScorerParams:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetFormatError("empty params file", line=1)
    header = lines[0].split(" ")
    if header[0] != PARAMS_FORMAT:
        raise DatasetVersionError(
            f"unsupported format {header[0]!r}, expected {PARAMS_FORMAT!r}", line=1
        )
    try:
        fields = dict(part.split("=", 1) for part in header[1:])
        family = fields["family"]
        dim = int(fields["dim"])
    except (KeyError, ValueError) as exc:
        raise DatasetFormatError(f"malformed header: {exc}", line=1) from exc
    if family == SCORER_LINEAR:
        w = _read_vector(lines, 1, "w", dim)
        b = _read_vector(lines, 2, "b", 1)
        return LinearScorer(w=w, b=float(b[0]))
    if family == SCORER_MLP:
        try:
            hidden = int(fields["hidden"])
        except (KeyError, ValueError) as exc:
            raise DatasetFormatError(f"malformed header: {exc}", line=1) from exc
        w_hidden = _read_vector(lines, 1, "w_hidden", hidden * dim).reshape(hidden, dim)
        b_hidden = _read_vector(lines, 2, "b_hidden", hidden)
        w_out = _read_vector(lines, 3, "w_out", hidden)
        b_out = _read_vector(lines, 4, "b_out", 1)
        return MlpScorer(w_hidden=w_hidden, b_hidden=b_hidden, w_out=w_out, b_out=float(b_out[0]))
    raise DatasetFormatError(f"unknown scorer family {family!r}", line=1)
