"""Heavy-tail index estimation: Hill and log-log rank-size regression.

Both estimators work on the k largest order statistics of a strictly
positive sample.  The rank-size regression applies the small-sample shift of
1/2 in ranks by default, with standard error ``sqrt(2/k) * zeta``; the Hill
standard error is ``zeta / sqrt(k)``.  Confidence bands use the normal 1.96
multiplier at every truncation level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .series import Sample

__all__ = ["TailFit", "TailCurve", "hill_estimate", "rank_size_estimate", "k_grid", "tail_curve"]

Z_95 = 1.96


@dataclass(frozen=True)
class TailFit:
    """One tail-index estimate at truncation level k.

    ``log_scale`` is the rank-size intercept (the log of the scale constant
    of the power law); it is reported without a confidence interval and is
    None for Hill fits.
    """

    zeta: float
    se: float
    ci95: tuple[float, float]
    k: int
    method: str
    log_scale: float | None = None

    def __post_init__(self):
        if not self.zeta > 0:
            raise NumericalError(f"tail index must be positive, got {self.zeta}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        lo, hi = self.ci95
        if abs(lo - (self.zeta - Z_95 * self.se)) > 1e-12 or abs(hi - (self.zeta + Z_95 * self.se)) > 1e-12:
            raise ValueError("ci95 must equal zeta +- 1.96*se")

    @property
    def theta(self) -> float:
        """Inverse tail index 1/zeta."""
        return 1.0 / self.zeta


@dataclass(frozen=True)
class TailCurve:
    """Tail-index estimates over a strictly increasing truncation grid."""

    points: tuple[TailFit, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        ks = [p.k for p in self.points]
        for a, b in zip(ks, ks[1:]):
            if b <= a:
                raise ValueError("k values must be strictly increasing")
        if ks and ks[-1] > self.n - 1:
            raise ValueError(f"largest k {ks[-1]} exceeds n-1 = {self.n - 1}")


def _positive_values(sample) -> np.ndarray:
    vals = sample.values if isinstance(sample, Sample) else np.asarray(sample, dtype=float)
    if len(vals) == 0:
        raise ValueError("empty sample")
    if np.any(vals <= 0):
        raise ValueError("tail estimation needs strictly positive values")
    return vals


def hill_estimate(sample, k: int) -> TailFit:
    """Hill estimator from the log-spacings of the top k order statistics.

    With descending order statistics ``X_(1) >= ... >= X_(n)``:
    ``zeta = k / sum_{i<=k} (ln X_(i) - ln X_(k+1))``.
    """
    vals = _positive_values(sample)
    n = len(vals)
    if not 2 <= k <= n - 1:
        raise ValueError(f"k must be in [2, {n - 1}], got {k}")
    desc = np.sort(vals, kind="stable")[::-1]
    logs = np.log(desc[: k + 1])
    spacing_sum = float(np.sum(logs[:k]) - k * logs[k])
    if spacing_sum <= 0:
        raise NumericalError("zero log-spacing sum: top order statistics are all equal")
    zeta = k / spacing_sum
    se = zeta / math.sqrt(k)
    return TailFit(zeta=zeta, se=se, ci95=(zeta - Z_95 * se, zeta + Z_95 * se), k=k, method="hill")


def rank_size_estimate(sample, k: int, shift: float = 0.5) -> TailFit:
    """Log-log rank-size regression over the k largest values.

    Regresses ``ln(rank - shift)`` on ``ln(size)`` (rank 1 = largest); the
    tail index is minus the slope and the standard error is
    ``sqrt(2/k) * zeta``.  The default shift of 1/2 is the small-sample bias
    correction; ``shift=0`` recovers the plain regression.
    """
    vals = _positive_values(sample)
    n = len(vals)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    if not 0.0 <= shift < 1.0:
        raise ValueError(f"shift must be in [0, 1), got {shift}")
    sizes = np.sort(vals, kind="stable")[::-1][:k]
    if np.all(sizes == sizes[0]):
        raise NumericalError("fewer than 2 distinct sizes among the top k values")
    x = np.log(sizes)
    ydep = np.log(np.arange(1, k + 1) - shift)
    xc = x - x.mean()
    slope = float(xc @ (ydep - ydep.mean())) / float(xc @ xc)
    zeta = -slope
    se = math.sqrt(2.0 / k) * zeta
    intercept = float(ydep.mean() - slope * x.mean())
    return TailFit(
        zeta=zeta,
        se=se,
        ci95=(zeta - Z_95 * se, zeta + Z_95 * se),
        k=k,
        method="rank_size",
        log_scale=intercept,
    )


def k_grid(n: int, lo_frac: float = 0.025, hi_frac: float = 0.15, steps: int = 20) -> tuple[int, ...]:
    """Truncation levels ``ceil(frac*n)`` over an even fraction grid.

    Values are clipped to [2, n-1] and deduplicated, so the result is
    strictly increasing.
    """
    if n < 40:
        raise ValueError(f"need n >= 40 for a truncation grid, got {n}")
    if not (0 < lo_frac <= hi_frac):
        raise ValueError("need 0 < lo_frac <= hi_frac")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    fracs = np.linspace(lo_frac, hi_frac, steps)
    ks = np.clip(np.ceil(fracs * n).astype(int), 2, n - 1)
    ks = np.unique(ks)
    if len(ks) == 0:
        raise NumericalError("empty truncation grid after clipping")
    return tuple(int(k) for k in ks)


def tail_curve(sample, method: str, grid) -> TailCurve:
    """Apply one estimator pointwise over a truncation grid."""
    vals = _positive_values(sample)
    if method == "hill":
        estimator = hill_estimate
    elif method == "rank_size":
        estimator = rank_size_estimate
    else:
        raise ValueError(f"method must be 'hill' or 'rank_size', got {method!r}")
    points = tuple(estimator(vals, int(k)) for k in grid)
    return TailCurve(points=points, n=len(vals))
