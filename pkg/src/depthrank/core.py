"""Domain types and permutation algebra shared by every other module.

A *sample* is one ranking query: a list of items (feature vectors) with
ground-truth relevance scores, where a higher score means the item should
be ranked closer to the top.  Predicted scores are plain float64 arrays
validated through :func:`as_score_vector`.  Ranks are 1-based in the
public contract; item indices are 0-based.

All types are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError


def as_score_vector(values, n: int | None = None) -> np.ndarray:
    """Validate and return scores as a finite float64 1-D array.

    Raises :class:`InvalidInputError` on empty input, wrong length, or any
    NaN/Inf entry.
    """
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInputError(f"scores must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidInputError("scores must contain at least one entry")
    if n is not None and arr.size != n:
        raise InvalidInputError(f"expected {n} scores, got {arr.size}")
    if not np.isfinite(arr).all():
        raise InvalidInputError("scores must be finite (no NaN/Inf)")
    return arr


def ordinal_label(s_i: float, s_j: float, tie_threshold: float = 0.0) -> int:
    """Ordinal label for a score pair: +1 if item i ranks higher, -1 if item
    j does, 0 when the scores differ by at most ``tie_threshold``."""
    if abs(s_i - s_j) <= tie_threshold:
        return 0
    return 1 if s_i > s_j else -1


@dataclass(frozen=True)
class Permutation:
    """A total order over item indices; ``order[0]`` is the top-ranked item.

    ``inverse`` maps each item index to its 1-based rank, so
    ``inverse[order[p]] == p + 1`` for every position ``p``.
    """

    order: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        try:
            order = tuple(operator.index(x) for x in self.order)
        except TypeError as exc:
            raise InvalidInputError(f"permutation entries must be integers: {exc}") from exc
        object.__setattr__(self, "order", order)
        n = len(order)
        if n < 1:
            raise InvalidInputError("permutation must cover at least one item")
        inverse = [0] * n
        seen = 0
        for pos, item in enumerate(order):
            if item < 0 or item >= n:
                raise InvalidInputError(
                    f"permutation entries must be integers in [0, {n}): {item!r}"
                )
            if inverse[item] == 0:
                seen += 1
            inverse[item] = pos + 1
        if seen != n:
            raise InvalidInputError("permutation must be a bijection (duplicate index)")
        object.__setattr__(self, "inverse", tuple(inverse))

    def __len__(self) -> int:
        return len(self.order)

    @cached_property
    def order_array(self) -> np.ndarray:
        arr = np.asarray(self.order, dtype=np.intp)
        arr.flags.writeable = False
        return arr

    @cached_property
    def inverse_array(self) -> np.ndarray:
        arr = np.asarray(self.inverse, dtype=np.intp)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True, slots=True)
class OrdinalPair:
    """One annotated item pair: ``r=+1`` means item i ranks higher (closer),
    ``r=-1`` means item j does, ``r=0`` means they tie."""

    i: int
    j: int
    r: int

    def __post_init__(self):
        if self.i == self.j:
            raise InvalidInputError(f"pair indices must differ: ({self.i}, {self.j})")
        if self.i < 0 or self.j < 0:
            raise InvalidInputError(f"pair indices must be >= 0: ({self.i}, {self.j})")
        if self.r not in (-1, 0, 1):
            raise InvalidInputError(f"ordinal label must be +1, -1 or 0: {self.r!r}")


@dataclass(frozen=True, eq=False)
class RankedSample:
    """One query: item feature vectors plus ground-truth relevance scores.

    ``gt_perm`` is derived on construction by sorting ``gt_scores`` in
    non-increasing order (ties broken by ascending item index) and is the
    ground-truth ranking every loss and metric refers back to.
    """

    id: str
    items: np.ndarray
    gt_scores: np.ndarray
    gt_perm: Permutation = field(init=False, repr=False)

    def __post_init__(self):
        items = np.ascontiguousarray(self.items, dtype=np.float64)
        if items.ndim != 2 or items.shape[0] < 1 or items.shape[1] < 1:
            raise InvalidInputError(
                f"items must be a non-empty (n, d) matrix, got shape {items.shape}"
            )
        if not np.isfinite(items).all():
            raise InvalidInputError(f"sample {self.id!r}: item features must be finite")
        scores = as_score_vector(self.gt_scores, n=items.shape[0])
        items.flags.writeable = False
        scores.flags.writeable = False
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "gt_scores", scores)
        object.__setattr__(self, "gt_perm", permutation_from_scores(scores))

    @property
    def n(self) -> int:
        return self.items.shape[0]

    @property
    def dim(self) -> int:
        return self.items.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankedSample):
            return NotImplemented
        return (
            self.id == other.id
            and self.items.shape == other.items.shape
            and np.array_equal(self.items, other.items)
            and np.array_equal(self.gt_scores, other.gt_scores)
        )

    __hash__ = None


def permutation_from_scores(scores) -> Permutation:
    """Ranking induced by scores: non-increasing order, stable ascending-index
    tie-break."""
    arr = as_score_vector(scores)
    order = np.argsort(-arr, kind="stable")
    return Permutation(tuple(int(p) for p in order))


def invert(perm: Permutation) -> tuple[int, ...]:
    """Rank-of-item view: ``invert(perm)[item]`` is the 1-based rank of ``item``."""
    return perm.inverse


def pairs_from_permutation(
    perm: Permutation, gt_scores, tie_threshold: float = 0.0
) -> list[OrdinalPair]:
    """All unordered index pairs of a sample as labeled :class:`OrdinalPair`.

    Pairs are emitted in (low index, high index) orientation; the label
    follows :func:`ordinal_label` on the ground-truth scores.
    """
    scores = as_score_vector(gt_scores, n=len(perm))
    n = scores.size
    if n < 2:
        raise InvalidInputError("need at least two items to form pairs")
    if tie_threshold < 0:
        raise InvalidInputError(f"tie_threshold must be >= 0: {tie_threshold}")
    pairs = []
    for i in range(n - 1):
        for j in range(i + 1, n):
            pairs.append(OrdinalPair(i, j, ordinal_label(scores[i], scores[j], tie_threshold)))
    return pairs


def pair_arrays(pairs: Sequence[OrdinalPair] | Iterable[OrdinalPair]):
    """Split pairs into (i, j, r) index/label arrays for vectorized use."""
    pairs = list(pairs)
    if not pairs:
        raise InvalidInputError("pair list must not be empty")
    i = np.fromiter((p.i for p in pairs), dtype=np.intp, count=len(pairs))
    j = np.fromiter((p.j for p in pairs), dtype=np.intp, count=len(pairs))
    r = np.fromiter((p.r for p in pairs), dtype=np.int64, count=len(pairs))
    return i, j, r
