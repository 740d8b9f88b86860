"""Sieve wild bootstrap p-values for the unit-root battery.

Residuals of an AR sieve fitted to the first differences are flipped by
Rademacher multipliers, recoloured through the fitted filter and cumulated,
so every bootstrap series has a unit root by construction.  The battery
(including lag re-selection) is recomputed on each replicate and p-values are
rank based: ``p = (1 + #at-least-as-extreme) / (B + 1)``.

Replication ``r`` draws its multipliers from a seed derived only from the
base seed and ``r``, so results never depend on evaluation order or the
number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import NumericalError
from .unitroot import MIN_BATTERY_LENGTH, UnitRootConfig, UnitRootStats, unit_root_battery

__all__ = [
    "SieveModel",
    "BootstrapResult",
    "UnitRootReport",
    "fit_sieve",
    "rademacher",
    "resample_null",
    "bootstrap_pvalues",
    "unit_root_report",
    "STAT_TAILS",
]

# rejection side per statistic: LR rejects for large values, the rest for small
STAT_TAILS = {"LR": "right", "MZa": "left", "MSB": "left", "MZt": "left", "MPt": "left", "ADF": "left"}

MIN_REPLICATIONS = 99


@dataclass(frozen=True)
class SieveModel:
    """AR(p) sieve fitted to first differences, with centered residuals."""

    phi: tuple[float, ...]
    residuals: np.ndarray
    p: int

    def __post_init__(self):
        arr = np.array(self.residuals, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "residuals", arr)
        if len(self.phi) != self.p:
            raise ValueError("phi must hold exactly p coefficients")
        if abs(float(arr.mean())) > 1e-12 * max(1.0, float(np.abs(arr).max())):
            raise ValueError("sieve residuals must be centered")


@dataclass(frozen=True)
class BootstrapResult:
    """Bootstrap p-values, one per statistic, plus the run parameters."""

    p_values: dict[str, float]
    B: int
    seed: tuple[int, ...]

    def __post_init__(self):
        lo = 1.0 / (self.B + 1)
        for name, p in self.p_values.items():
            if not (lo - 1e-12 <= p <= 1.0 + 1e-12):
                raise ValueError(f"p-value for {name} outside [1/(B+1), 1]: {p}")


@dataclass(frozen=True)
class UnitRootReport:
    """Battery statistics and their bootstrap p-values for one series."""

    stats: UnitRootStats
    result: BootstrapResult

    @property
    def p_values(self) -> dict[str, float]:
        return self.result.p_values


def _seed_tuple(seed) -> tuple[int, ...]:
    if isinstance(seed, (int, np.integer)):
        parts = (int(seed),)
    else:
        parts = tuple(int(s) for s in seed)
    if any(s < 0 for s in parts):
        raise ValueError("seed components must be non-negative")
    return parts


def rademacher(seed, n: int) -> np.ndarray:
    """Deterministic vector of equiprobable +-1 multipliers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(_seed_tuple(seed)))
    return rng.integers(0, 2, size=n).astype(float) * 2.0 - 1.0


def fit_sieve(dy, p: int) -> SieveModel:
    """Least-squares AR(p) on the differences, intercept included.

    Residuals are re-centered so multiplying them by +-1 draws leaves the
    bootstrap innovations mean-zero.
    """
    d = np.asarray(dy, dtype=float)
    n = len(d)
    if p < 0:
        raise ValueError("sieve order must be >= 0")
    if n <= p + 2:
        raise ValueError(f"differences of length {n} too short for sieve order {p}")
    resp = d[p:]
    cols = [np.ones(n - p)]
    for j in range(1, p + 1):
        cols.append(d[p - j : n - j])
    X = np.column_stack(cols)
    G = X.T @ X
    try:
        b = np.linalg.solve(G, X.T @ resp)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("singular sieve regression") from exc
    resid = resp - X @ b
    resid = resid - resid.mean()
    return SieveModel(phi=tuple(float(c) for c in b[1:]), residuals=resid, p=p)


def resample_null(model: SieveModel, seed) -> np.ndarray:
    """One bootstrap series: wild innovations, AR recolouring, cumulation.

    ``eps*_t = w_t * e_t`` with fresh Rademacher ``w``; the differences follow
    ``d*_t = sum_j phi_j d*_{t-j} + eps*_t`` from zero pre-sample values, and
    the level series is their cumulative sum (unit root imposed).
    """
    eps = rademacher(seed, len(model.residuals)) * model.residuals
    if model.p == 0:
        dstar = eps
    else:
        a = np.concatenate(([1.0], -np.asarray(model.phi)))
        dstar = lfilter([1.0], a, eps)
    return np.cumsum(dstar)


def _pvalue(stat: float, replicates: np.ndarray, tail: str, B: int) -> float:
    if tail == "right":
        extreme = int(np.sum(replicates >= stat))
    else:
        extreme = int(np.sum(replicates <= stat))
    return (1.0 + extreme) / (B + 1.0)


def bootstrap_pvalues(
    y,
    cfg: UnitRootConfig = UnitRootConfig(),
    B: int = 999,
    seed=0,
    workers: int = 1,
) -> BootstrapResult:
    """Sieve wild bootstrap p-values for all six battery statistics."""
    return unit_root_report(y, cfg, B=B, seed=seed, workers=workers).result


def unit_root_report(
    y,
    cfg: UnitRootConfig = UnitRootConfig(),
    B: int = 999,
    seed=0,
    workers: int = 1,
) -> UnitRootReport:
    """Battery plus bootstrap p-values in one pass over the data."""
    if B < MIN_REPLICATIONS:
        raise ValueError(f"B must be >= {MIN_REPLICATIONS}, got {B}")
    seed_parts = _seed_tuple(seed)
    stats = unit_root_battery(y, cfg)
    values = y.values if hasattr(y, "values") else np.asarray(y, dtype=float)
    model = fit_sieve(np.diff(values), stats.lag)
    if len(model.residuals) < MIN_BATTERY_LENGTH:
        raise ValueError(
            f"bootstrap series would have {len(model.residuals)} observations; "
            f"need at least {MIN_BATTERY_LENGTH}"
        )

    names = list(STAT_TAILS)

    def one(r: int) -> dict[str, float]:
        y_star = resample_null(model, seed_parts + (r,))
        return unit_root_battery(y_star, cfg).as_dict()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            replicate_stats = list(pool.map(one, range(1, B + 1)))
    else:
        replicate_stats = [one(r) for r in range(1, B + 1)]

    observed = stats.as_dict()
    p_values = {}
    for name in names:
        reps = np.array([rs[name] for rs in replicate_stats])
        p_values[name] = _pvalue(observed[name], reps, STAT_TAILS[name], B)
    result = BootstrapResult(p_values=p_values, B=B, seed=seed_parts)
    return UnitRootReport(stats=stats, result=result)
