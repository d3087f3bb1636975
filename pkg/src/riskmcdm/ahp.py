"""Pairwise-comparison weight derivation and consistency machinery.

Weights come from the column-normalization / row-average estimator: each
column of the judgment matrix is divided by its sum, then rows are
averaged. The maximum-eigenvalue estimate is lambda_max = sum_i w_i * S_i
with S_i the column sums of the original (un-normalized) matrix; the
consistency index is (lambda_max - n)/(n - 1) and the consistency ratio
divides that by the tabulated random index. A power-iteration principal
eigenvector is available as an optional cross-check; for inconsistent
matrices the two estimators legitimately differ.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    DimensionError,
    IncompleteJudgments,
    IncompleteWeights,
    InvalidIntensity,
    RiskMcdmError,
    UnsupportedOrder,
    ValidationError,
)

ACCEPTABLE = "Acceptable"
NEEDS_REVISION = "NeedsRevision"

CR_THRESHOLD = 0.10

# Random consistency index by matrix order, 1..15.
RANDOM_INDEX = (
    0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41,
    1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59,
)

RECIPROCITY_TOL = 1e-12


@dataclass(frozen=True)
class PairwiseMatrix:
    """Positive reciprocal judgment matrix over an ordered item list."""

    item_ids: tuple
    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        object.__setattr__(self, "a", a)
        n = len(self.item_ids)
        if a.shape != (n, n):
            raise DimensionError(f"matrix shape {a.shape} does not match {n} items")
        if not np.all(a > 0):
            raise InvalidIntensity("all judgment entries must be strictly positive")
        if not np.allclose(np.diag(a), 1.0, rtol=0, atol=RECIPROCITY_TOL):
            raise ValidationError("diagonal entries must equal 1")
        if not np.allclose(a * a.T, 1.0, rtol=0, atol=1e-9):
            raise ValidationError("matrix is not reciprocal: a[i][j] * a[j][i] != 1")

    @property
    def n(self) -> int:
        return len(self.item_ids)

    def column_sums(self) -> np.ndarray:
        return self.a.sum(axis=0)


@dataclass(frozen=True)
class WeightVector:
    """Unit-sum priority weights over an ordered item list."""

    item_ids: tuple
    w: tuple

    def __post_init__(self):
        if len(self.item_ids) != len(self.w):
            raise DimensionError("weight count does not match item count")
        total = math.fsum(self.w)
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"weights must sum to 1, got {total!r}")
        if any(x < 0 for x in self.w):
            raise ValidationError("weights must be nonnegative")

    def as_dict(self) -> dict:
        return dict(zip(self.item_ids, self.w))


@dataclass(frozen=True)
class ConsistencyReport:
    """lambda_max, CI, RI, CR and the acceptance verdict for one matrix."""

    n: int
    lambda_max: float
    ci: float
    ri: float
    cr: float
    column_sums: tuple
    verdict: str

    @property
    def acceptable(self) -> bool:
        return self.verdict == ACCEPTABLE


def complete_reciprocal(upper: dict, n: int, item_ids=None) -> PairwiseMatrix:
    """Assemble a full matrix from upper-triangle judgments.

    `upper` maps 0-based pairs (i, j) with i < j to positive values
    (numbers or Fractions). The diagonal is 1 and the lower triangle is
    filled with exact reciprocals.
    """
    if item_ids is None:
        item_ids = tuple(str(k) for k in range(n))
    item_ids = tuple(item_ids)
    if len(item_ids) != n:
        raise DimensionError(f"expected {n} item ids, got {len(item_ids)}")
    for (i, j) in upper:
        if not (0 <= i < j < n):
            raise ValidationError(f"invalid pair ({i},{j}) for order {n}")
    missing = [(i, j) for i, j in combinations(range(n), 2) if (i, j) not in upper]
    if missing:
        raise IncompleteJudgments(missing)

    a = np.eye(n)
    for (i, j), value in upper.items():
        v = Fraction(value) if not isinstance(value, Fraction) else value
        if v <= 0:
            raise InvalidIntensity(f"judgment for pair ({i},{j}) must be positive, got {value!r}")
        a[i, j] = float(v)
        a[j, i] = float(1 / v)
    return PairwiseMatrix(item_ids=item_ids, a=a)


def derive_weights(M: PairwiseMatrix) -> WeightVector:
    """Column-normalize the matrix and average its rows into weights."""
    s = M.column_sums()
    w = (M.a / s).mean(axis=1)
    w = w / w.sum()
    return WeightVector(item_ids=M.item_ids, w=tuple(float(x) for x in w))


def lambda_max(M: PairwiseMatrix, w: WeightVector) -> float:
    """Maximum-eigenvalue estimate: sum of w_i times original column sum S_i."""
    if w.item_ids != M.item_ids:
        raise DimensionError("weight vector items do not match matrix items")
    return float(np.dot(np.asarray(w.w), M.column_sums()))


def random_index(n: int) -> float:
    """Tabulated random consistency index for orders 1..15."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise UnsupportedOrder(f"matrix order must be a positive integer, got {n!r}")
    if n > len(RANDOM_INDEX):
        raise UnsupportedOrder(f"no random index tabulated for order {n} (table ends at 15)")
    return RANDOM_INDEX[n - 1]


def consistency(M: PairwiseMatrix) -> ConsistencyReport:
    """Full consistency report for a judgment matrix.

    CR is defined as 0 when RI is 0 (orders 1 and 2 are always
    consistent); otherwise CR = CI / RI with the 0.10 acceptance gate.
    """
    n = M.n
    w = derive_weights(M)
    lam = lambda_max(M, w)
    ci = 0.0 if n == 1 else (lam - n) / (n - 1)
    ri = random_index(n)
    cr = ci / ri if ri > 0 else 0.0
    verdict = ACCEPTABLE if cr < CR_THRESHOLD else NEEDS_REVISION
    return ConsistencyReport(
        n=n,
        lambda_max=lam,
        ci=ci,
        ri=ri,
        cr=cr,
        column_sums=tuple(float(x) for x in M.column_sums()),
        verdict=verdict,
    )


def principal_eigenvector(M: PairwiseMatrix, tol: float = 1e-10, max_iterations: int = 10000):
    """Power-iteration principal eigenvector, as an optional cross-check.

    Returns (WeightVector, eigenvalue). Positive matrices always have a
    dominant positive eigenpair, so this converges; it is not used by the
    main weight path.
    """
    x = np.full(M.n, 1.0 / M.n)
    lam = float(M.n)
    for _ in range(max_iterations):
        y = M.a @ x
        lam = float(y.sum())
        y = y / lam
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    else:
        raise RiskMcdmError("power iteration did not converge")
    x = x / x.sum()
    return WeightVector(item_ids=M.item_ids, w=tuple(float(v) for v in x)), lam


def aggregate_experts(vectors: list) -> WeightVector:
    """Arithmetic mean of expert weight vectors, renormalized to sum 1."""
    if not vectors:
        raise ValidationError("no weight vectors to aggregate")
    ids = vectors[0].item_ids
    for v in vectors[1:]:
        if v.item_ids != ids:
            raise DimensionError("expert weight vectors cover different items")
    mean = np.mean([v.w for v in vectors], axis=0)
    mean = mean / mean.sum()
    return WeightVector(item_ids=ids, w=tuple(float(x) for x in mean))


def global_weights(h, local: dict) -> dict:
    """Propagate local weights to goal-level weights per leaf.

    `local` maps "goal" to a vector over the main criteria and each
    non-leaf main criterion id to a vector over its children. A leaf's
    global weight is its local weight times its parent's weight; a main
    criterion with no children is itself a leaf of the goal node.
    """
    if "goal" not in local:
        raise IncompleteWeights("no weight vector for node: goal")
    goal_vec = local["goal"]
    main_ids = tuple(m.id for m in h.main_criteria)
    if goal_vec.item_ids != main_ids:
        raise DimensionError("goal weight vector does not match the main criteria")
    out = {}
    for main, parent_w in zip(h.main_criteria, goal_vec.w):
        if not main.children:
            out[main.id] = float(parent_w)
            continue
        if main.id not in local:
            raise IncompleteWeights(f"no weight vector for node: {main.id}")
        vec = local[main.id]
        child_ids = tuple(c.id for c in main.children)
        if vec.item_ids != child_ids:
            raise DimensionError(f"weight vector for {main.id} does not match its children")
        for child_id, local_w in zip(child_ids, vec.w):
            out[child_id] = float(parent_w * local_w)
    return out


def triad_discrepancy(M: PairwiseMatrix, i: int, j: int, k: int) -> float:
    """|ln(a_ij * a_jk / a_ik)|, zero exactly when the triple is consistent."""
    return abs(math.log(M.a[i, j] * M.a[j, k] / M.a[i, k]))


def worst_triad(M: PairwiseMatrix):
    """The (i, j, k, discrepancy) triple with the largest discrepancy.

    Checked by brute force over all C(n, 3) triples; None when n < 3.
    """
    best = None
    for i, j, k in combinations(range(M.n), 3):
        d = triad_discrepancy(M, i, j, k)
        if best is None or d > best[3]:
            best = (i, j, k, d)
    return best
