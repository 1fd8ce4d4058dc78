"""Deviation metrics and (alpha, beta) parameter sweeps.

The scalar figure of merit is max over z in [0, 1] of |F_B(z) - z|: zero
exactly when log_B X mod 1 is uniform, i.e. when X follows the reference
first-digit law.  Sweeps evaluate it over rectangular parameter grids in
deterministic row-major order (ascending alpha, then ascending beta), so
repeated runs are bit-identical.  Cells are independent and could be
computed concurrently as long as assembly stays row-major.
"""

import math
import operator
from dataclasses import dataclass

import numpy as np

from .benford import BaseConfig
from .series import (
    InvGammaParams,
    TruncationSpec,
    _heuristic_cutoff,
    fb_cdf_series_values,
    truncation_cutoff,
)

__all__ = [
    "DeviationReport",
    "DeviationGrid",
    "DeviationGridError",
    "max_deviation",
    "deviation_grid",
    "first_digit_probs",
]

DEFAULT_GRID_POINTS = 1001


class DeviationGridError(RuntimeError):
    """A sweep cell failed; the message carries the cell coordinates."""


@dataclass(frozen=True)
class DeviationReport:
    """Max |F_B(z) - z| over a uniform closed z grid.

    epsilon is the trunction certificate attached to every evaluated point
    (None when the base admits no certificate); the true maximum deviation
    lies within epsilon plus the grid-resolution slack of max_dev.
    """

    max_dev: float
    argmax_z: float
    epsilon: float | None
    grid_points: int
    cutoff_m: int

    @property
    def certified(self) -> bool:
        return self.epsilon is not None


@dataclass(frozen=True)
class DeviationGrid:
    """Row-major deviation sweep: dev[i, j] = max_deviation(alpha_i, beta_j)."""

    alpha_values: np.ndarray
    beta_values: np.ndarray
    base: BaseConfig
    dev: np.ndarray
    epsilon: float | None

    def __post_init__(self):
        for name in ("alpha_values", "beta_values", "dev"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.dev.shape != (self.alpha_values.size, self.beta_values.size):
            raise ValueError("dev matrix shape does not match the axis lengths")


def _resolve_cutoff(params: InvGammaParams, base: BaseConfig, epsilon: float) -> tuple[int, float | None]:
    """Cutoff plus certificate for any base; base 2 gets the uncertified heuristic."""
    if base.base == 2:
        return _heuristic_cutoff(params, base, epsilon), None
    spec = truncation_cutoff(params, base, epsilon)
    return spec.cutoff_m, spec.epsilon


def max_deviation(params: InvGammaParams, base: BaseConfig, epsilon,
                  grid_points: int = DEFAULT_GRID_POINTS) -> DeviationReport:
    """Evaluate |F_B(z) - z| on a uniform closed grid and report the max.

    The cutoff comes from truncation_cutoff(epsilon), so every grid value
    carries the epsilon certificate (base 2 values are uncertified).  The
    reported argmax_z attains max_dev exactly as evaluated on the grid.
    """
    try:
        grid_points = operator.index(grid_points)
    except TypeError:
        raise TypeError(f"grid_points must be an integer, got {grid_points!r}") from None
    if grid_points < 101:
        raise ValueError(f"grid_points must be >= 101, got {grid_points}")
    eps = float(epsilon)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"epsilon must be positive and finite, got {epsilon!r}")
    cutoff_m, certificate = _resolve_cutoff(params, base, eps)
    zs = np.linspace(0.0, 1.0, grid_points)
    values = fb_cdf_series_values(zs, params, base, TruncationSpec(eps, cutoff_m))
    dev = np.abs(values - zs)
    idx = int(np.argmax(dev))
    return DeviationReport(
        max_dev=float(dev[idx]),
        argmax_z=float(zs[idx]),
        epsilon=certificate,
        grid_points=grid_points,
        cutoff_m=cutoff_m,
    )


def _axis(spec, what: str) -> np.ndarray:
    lo, hi, steps = spec
    lo = float(lo)
    hi = float(hi)
    try:
        steps = operator.index(steps)
    except TypeError:
        raise TypeError(f"{what} steps must be an integer, got {steps!r}") from None
    if steps < 1:
        raise ValueError(f"{what} steps must be >= 1, got {steps}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0.0 or hi < lo:
        raise ValueError(f"{what} range must satisfy 0 < min <= max, got ({lo}, {hi})")
    if steps == 1:
        return np.array([lo])
    return np.linspace(lo, hi, steps)


def deviation_grid(alpha_range, beta_range, base: BaseConfig, epsilon,
                   grid_points: int = DEFAULT_GRID_POINTS) -> DeviationGrid:
    """max_deviation at every lattice point of (min, max, steps) axis specs.

    Out-of-range beta values are fine: evaluation canonicalizes them into
    [1, B) internally, and the grid records the values as given.  Per-cell
    failures are re-raised as DeviationGridError naming the cell.
    """
    alphas = _axis(alpha_range, "alpha")
    betas = _axis(beta_range, "beta")
    dev = np.empty((alphas.size, betas.size))
    certificate = None
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            try:
                report = max_deviation(InvGammaParams(a, b), base, epsilon, grid_points)
            except Exception as exc:
                raise DeviationGridError(f"cell alpha={a!r}, beta={b!r}: {exc}") from exc
            dev[i, j] = report.max_dev
            certificate = report.epsilon
    return DeviationGrid(alpha_values=alphas, beta_values=betas, base=base,
                         dev=dev, epsilon=certificate)


def first_digit_probs(params: InvGammaParams, base: BaseConfig, epsilon) -> np.ndarray:
    """Model probability of each first digit d = 1..B-1.

    Entry d-1 is F_B(log_B(d+1)) - F_B(log_B d), with the top digit closed
    at z = 1 exactly, so the entries telescope to F_B(1) - F_B(0) = 1 up to
    the per-point certificates.
    """
    eps = float(epsilon)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"epsilon must be positive and finite, got {epsilon!r}")
    b = base.base
    cutoff_m, _ = _resolve_cutoff(params, base, eps)
    edges = np.log(np.arange(1, b + 1, dtype=float)) / base.log_base
    edges[-1] = 1.0  # log_B(B) exactly
    values = fb_cdf_series_values(edges, params, base, TruncationSpec(eps, cutoff_m))
    return np.diff(values)
