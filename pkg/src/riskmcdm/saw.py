"""Simple additive weighting over an alternatives x criteria matrix.

Columns are normalized to [0, 1] by criterion direction, multiplied by
criterion weights, and summed per row into a performance score V. Shares
A = V / sum(V) and ranks (1 = largest V, ties broken by input order)
complete the score table.

Two normalization schemes exist. "max-min" is the default: benefit
columns map x to (x - min)/(max - min), cost columns to
(max - x)/(max - min), and a degenerate column (max = min) maps to 1 for
every row. "ratio-to-max" divides benefit columns by their maximum and
maps cost columns to min/x.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateScores,
    DimensionError,
    EmptyInput,
    IncompleteWeights,
    ValidationError,
)
from .hierarchy import Direction

MAX_MIN = "max-min"
RATIO_TO_MAX = "ratio-to-max"
NORMALIZATION_SCHEMES = (MAX_MIN, RATIO_TO_MAX)


def _check_grid(alternative_ids, criterion_ids, grid):
    m, k = len(alternative_ids), len(criterion_ids)
    if grid.shape != (m, k):
        raise DimensionError(f"grid shape {grid.shape} does not match {m}x{k} ids")
    if len(set(alternative_ids)) != m:
        raise ValidationError("duplicate alternative ids")
    if len(set(criterion_ids)) != k:
        raise ValidationError("duplicate criterion ids")


@dataclass(frozen=True)
class DecisionMatrix:
    """Raw alternatives x criteria values; imputed holds filled-cell indices."""

    alternative_ids: tuple
    criterion_ids: tuple
    x: np.ndarray
    imputed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        _check_grid(self.alternative_ids, self.criterion_ids, x)
        if np.isnan(x).any():
            raise ValidationError("decision matrix contains NaN cells")

    def column(self, j: int) -> np.ndarray:
        return self.x[:, j]


@dataclass(frozen=True)
class NormalizedMatrix:
    """Direction-aware rescaling of a decision matrix to [0, 1]."""

    alternative_ids: tuple
    criterion_ids: tuple
    r: np.ndarray
    col_max: tuple
    col_min: tuple
    imputed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        object.__setattr__(self, "r", r)
        _check_grid(self.alternative_ids, self.criterion_ids, r)
        if np.isnan(r).any() or (r < 0).any() or (r > 1).any():
            raise ValidationError("normalized values must lie in [0, 1]")


@dataclass(frozen=True)
class WeightedMatrix:
    """Normalized values scaled by criterion weights."""

    alternative_ids: tuple
    criterion_ids: tuple
    v: np.ndarray
    weights: tuple = ()
    imputed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        object.__setattr__(self, "v", v)
        _check_grid(self.alternative_ids, self.criterion_ids, v)
        if np.isnan(v).any() or (v < 0).any():
            raise ValidationError("weighted values must be nonnegative")


@dataclass(frozen=True)
class ScoreTable:
    """Scores V, shares A = V/sum(V), and ranks (1 = best score)."""

    alternative_ids: tuple
    V: tuple
    A: tuple
    rank: tuple

    def order(self) -> list:
        """Alternative ids sorted by rank."""
        return [aid for _, aid in sorted(zip(self.rank, self.alternative_ids))]


def normalize(D: DecisionMatrix, directions: dict, scheme: str = MAX_MIN) -> NormalizedMatrix:
    """Rescale each column to [0, 1] according to its direction."""
    if D.x.size == 0:
        raise EmptyInput("decision matrix is empty")
    if scheme not in NORMALIZATION_SCHEMES:
        raise ValidationError(f"unknown normalization scheme: {scheme!r}")
    missing = [c for c in D.criterion_ids if c not in directions]
    if missing:
        raise ValidationError(f"no direction for criteria: {', '.join(missing)}")

    r = np.empty_like(D.x)
    col_max, col_min = [], []
    for j, cid in enumerate(D.criterion_ids):
        col = D.column(j)
        hi, lo = float(col.max()), float(col.min())
        col_max.append(hi)
        col_min.append(lo)
        benefit = directions[cid] == Direction.BENEFIT
        if scheme == MAX_MIN:
            if hi == lo:
                r[:, j] = 1.0
            elif benefit:
                r[:, j] = (col - lo) / (hi - lo)
            else:
                r[:, j] = (hi - col) / (hi - lo)
        else:
            if benefit:
                if hi <= 0:
                    raise ValidationError(f"ratio-to-max needs a positive maximum in column {cid}")
                r[:, j] = col / hi
            else:
                if lo <= 0 or (col <= 0).any():
                    raise ValidationError(f"ratio-to-max needs positive values in cost column {cid}")
                r[:, j] = lo / col
    return NormalizedMatrix(
        alternative_ids=D.alternative_ids,
        criterion_ids=D.criterion_ids,
        r=r,
        col_max=tuple(col_max),
        col_min=tuple(col_min),
        imputed=D.imputed,
    )


def apply_weights(R: NormalizedMatrix, weights: dict) -> WeightedMatrix:
    """Multiply each normalized column by its criterion weight."""
    missing = [c for c in R.criterion_ids if c not in weights]
    if missing:
        raise IncompleteWeights(f"no weight for criteria: {', '.join(missing)}")
    w = np.array([float(weights[c]) for c in R.criterion_ids])
    if (w < 0).any():
        raise ValidationError("criterion weights must be nonnegative")
    return WeightedMatrix(
        alternative_ids=R.alternative_ids,
        criterion_ids=R.criterion_ids,
        v=R.r * w,
        weights=tuple(float(x) for x in w),
        imputed=R.imputed,
    )


def score(Vm: WeightedMatrix) -> list:
    """Performance score per alternative: the row sum of weighted values."""
    return [math.fsum(row) for row in Vm.v]


def rank(V: list, alternative_ids=None) -> ScoreTable:
    """Shares and ranks from a score vector; rank 1 goes to the largest V.

    Ties keep input order (stable, deterministic). All-zero scores have
    no defined shares and raise DegenerateScores.
    """
    if alternative_ids is None:
        alternative_ids = tuple(str(k) for k in range(len(V)))
    alternative_ids = tuple(alternative_ids)
    if len(alternative_ids) != len(V):
        raise DimensionError("alternative id count does not match score count")
    if not V:
        raise EmptyInput("no scores to rank")
    total = math.fsum(V)
    if total <= 0:
        raise DegenerateScores("scores sum to zero; shares are undefined")
    A = [v / total for v in V]
    by_score = sorted(range(len(V)), key=lambda i: (-V[i], i))
    ranks = [0] * len(V)
    for position, i in enumerate(by_score, start=1):
        ranks[i] = position
    return ScoreTable(
        alternative_ids=alternative_ids,
        V=tuple(float(v) for v in V),
        A=tuple(float(a) for a in A),
        rank=tuple(ranks),
    )
