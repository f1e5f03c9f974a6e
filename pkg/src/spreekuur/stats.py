"""Statistical machinery: aggregates, inter-rater agreement, rank correlation.

Krippendorff's alpha is computed from the coincidence matrix over
pairable values, so missing cells simply contribute no pairs and any
number of raters is supported. Spearman's rho is the Pearson correlation
of average-ranked values, which handles ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import EmptyInput, TooFewRaters, UndefinedAlpha

__all__ = [
    "MeanSd",
    "mean_sd",
    "RatingTable",
    "AlphaResult",
    "krippendorff_alpha",
    "leave_one_out_alpha",
    "CorrelationResult",
    "spearman_rho",
    "RUBRIC_CATEGORIES",
    "SCORE_RANGE",
]

RUBRIC_CATEGORIES = ("coherence", "consistency", "fluency", "relevance", "clinical_use")
SCORE_RANGE = (0, 5)

# Below this many pairs a correlation is flagged for cautious reading.
SMALL_SAMPLE_N = 10


@dataclass(frozen=True)
class MeanSd:
    mean: float
    sd: float
    n: int

    @property
    def single_value(self) -> bool:
        """True when sd is 0 by convention because only one value was given."""
        return self.n == 1


def mean_sd(values: Sequence[float]) -> MeanSd:
    """Arithmetic mean and sample standard deviation (n-1 denominator)."""
    if len(values) == 0:
        raise EmptyInput("mean_sd needs at least one value")
    arr = np.asarray(values, dtype=float)
    if arr.size == 1:
        return MeanSd(mean=float(arr[0]), sd=0.0, n=1)
    return MeanSd(mean=float(arr.mean()), sd=float(arr.std(ddof=1)), n=arr.size)


Item = tuple[str, str]  # (dialogue id, category)


@dataclass(frozen=True)
class RatingTable:
    """Sparse rater x (dialogue, category) score matrix on the 0-5 scale."""

    raters: tuple[str, ...]
    items: tuple[Item, ...]
    cells: Mapping[tuple[str, Item], int]

    def __post_init__(self):
        lo, hi = SCORE_RANGE
        for (rater, item), score in self.cells.items():
            if not isinstance(score, int) or not lo <= score <= hi:
                raise ValueError(f"score {score!r} for {rater}/{item} outside {lo}..{hi}")

    @classmethod
    def from_cells(cls, cells: Mapping[tuple[str, Item], int]) -> "RatingTable":
        raters = tuple(sorted({r for r, _ in cells}))
        items = tuple(sorted({i for _, i in cells}))
        return cls(raters=raters, items=items, cells=dict(cells))

    def scores_for_item(self, item: Item) -> list[int]:
        return [
            self.cells[(rater, item)] for rater in self.raters if (rater, item) in self.cells
        ]

    @property
    def categories(self) -> tuple[str, ...]:
        return tuple(sorted({cat for _, cat in self.items}))

    @property
    def dialogue_ids(self) -> tuple[str, ...]:
        return tuple(sorted({did for did, _ in self.items}))

    def filter_category(self, category: str) -> "RatingTable":
        cells = {
            (rater, item): score
            for (rater, item), score in self.cells.items()
            if item[1] == category
        }
        return RatingTable.from_cells(cells)

    def without_rater(self, rater_id: str) -> "RatingTable":
        cells = {
            (rater, item): score
            for (rater, item), score in self.cells.items()
            if rater != rater_id
        }
        return RatingTable.from_cells(cells)


@dataclass(frozen=True)
class AlphaResult:
    alpha: float
    n_pairable: int
    degenerate: bool = False  # all pairable values identical; alpha 1 by convention


def _ordinal_distances(marginals: np.ndarray) -> np.ndarray:
    """Squared rank distances weighted by coincidence marginals.

    delta2(i, j) = (sum of marginals from i to j inclusive
                    minus half the two endpoint marginals) squared.
    """
    size = len(marginals)
    cumulative = np.concatenate(([0.0], np.cumsum(marginals)))
    delta = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            span = cumulative[j + 1] - cumulative[i]
            d = span - (marginals[i] + marginals[j]) / 2.0
            delta[i, j] = delta[j, i] = d * d
    return delta


def krippendorff_alpha(table: RatingTable, level: str = "ordinal") -> AlphaResult:
    """Chance-corrected agreement over a sparse rating table.

    ``level`` selects the distance function: "nominal" (identity),
    "ordinal" (squared rank difference, the default for a 0-5 rubric), or
    "interval" (squared value difference). Items with fewer than two
    ratings are excluded. Raises :class:`UndefinedAlpha` when nothing is
    pairable; a table where every pairable value is identical returns
    alpha 1.0 flagged as degenerate.
    """
    if level not in ("nominal", "ordinal", "interval"):
        raise ValueError(f"unknown level {level!r}")
    units = []
    for item in table.items:
        scores = table.scores_for_item(item)
        if len(scores) >= 2:
            units.append(scores)
    if not units or len(table.raters) < 2:
        raise UndefinedAlpha("no pairable items")

    values = sorted({v for unit in units for v in unit})
    index = {v: k for k, v in enumerate(values)}
    size = len(values)

    coincidence = np.zeros((size, size))
    for unit in units:
        weight = 1.0 / (len(unit) - 1)
        for i, a in enumerate(unit):
            for j, b in enumerate(unit):
                if i != j:
                    coincidence[index[a], index[b]] += weight
    marginals = coincidence.sum(axis=1)
    n = marginals.sum()

    if size == 1:
        return AlphaResult(alpha=1.0, n_pairable=int(round(n)), degenerate=True)

    if level == "nominal":
        delta = 1.0 - np.eye(size)
    elif level == "interval":
        vals = np.asarray(values, dtype=float)
        delta = (vals[:, None] - vals[None, :]) ** 2
    else:
        delta = _ordinal_distances(marginals)

    d_observed = float((coincidence * delta).sum()) / n
    d_expected = float((np.outer(marginals, marginals) * delta).sum()) / (n * (n - 1))
    if d_expected == 0.0:
        return AlphaResult(alpha=1.0, n_pairable=int(round(n)), degenerate=True)
    return AlphaResult(alpha=1.0 - d_observed / d_expected, n_pairable=int(round(n)))


def leave_one_out_alpha(
    table: RatingTable, category: str, level: str = "ordinal"
) -> dict[str, AlphaResult]:
    """Alpha recomputed per rater on the table with that rater removed."""
    if len(table.raters) < 3:
        raise TooFewRaters(f"leave-one-out needs >= 3 raters, got {len(table.raters)}")
    subtable = table.filter_category(category)
    return {
        rater: krippendorff_alpha(subtable.without_rater(rater), level=level)
        for rater in table.raters
    }


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    degenerate: bool = False  # a constant input vector; rho is NaN

    @property
    def small_sample(self) -> bool:
        return self.n < SMALL_SAMPLE_N


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Rank correlation with average ranks for ties.

    A constant input vector leaves rho undefined; that case is returned
    as a flagged degenerate result rather than raised, so report builders
    can render the cell as missing.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise ValueError(f"need >= 3 pairs, got {len(x)}")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.all(xa == xa[0]) or np.all(ya == ya[0]):
        return CorrelationResult(rho=float("nan"), n=len(x), degenerate=True)
    rx = rankdata(xa, method="average")
    ry = rankdata(ya, method="average")
    rho = float(np.corrcoef(rx, ry)[0, 1])
    return CorrelationResult(rho=rho, n=len(x))
