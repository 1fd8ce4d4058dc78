"""Inverse gamma density/CDF and the rapidly convergent series for the
distribution of log_B X mod 1, with certified truncation control.

Writing F_B for the CDF of log_B(X) mod 1 when X is inverse-gamma with
shape alpha and scale beta, the evaluation path used here is

    F_B'(z) = 1 + (2/Gamma(a)) * sum_{k>=1} Re( r_k * e^{-2 pi i k (t - z)} )
    F_B(z)  = z + 2 * sum_{k>=1} Re( r_k * e^{-2 pi i k t}
                                     * (e^{2 pi i k z} - 1) / (2 pi i k) )

with t = log_B(beta) and coefficients r_k = Gamma(a + 2 pi i k / ln B)
/ Gamma(a).  The coefficients decay like exp(-pi^2 k / ln B), so a handful
of terms give near machine precision; truncation_cutoff chooses a cutoff M
(terms |k| <= M-1 are summed) guaranteeing a uniform accuracy epsilon, and
the closed-form tail expressions are exposed as tail_bound_general and
tail_bound_alpha1.

Scaling beta by any power of B leaves every quantity here unchanged, so
beta is canonicalized into [1, B) before evaluation.  All functions are
pure; the per-(alpha, base, cutoff) coefficient tables are cached read-only
and safely shared across threads.
"""

import cmath
import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .benford import BaseConfig, _scale_by_power
from .special import complex_log_gamma, regularized_upper_gamma

__all__ = [
    "InvGammaParams",
    "TruncationSpec",
    "SeriesEvaluation",
    "UnsupportedBaseError",
    "invgamma_pdf",
    "invgamma_cdf",
    "canonicalize_beta",
    "truncation_cutoff",
    "tail_bound_general",
    "tail_bound_alpha1",
    "cutoff_alpha1",
    "fb_prime_series",
    "fb_cdf_series",
    "fb_prime_series_values",
    "fb_cdf_series_values",
]

_LOG2 = math.log(2.0)
_TWO_PI = 2.0 * math.pi
_PI_SQ = math.pi * math.pi
_EXP_UNDERFLOW = -745.0


class UnsupportedBaseError(ValueError):
    """Raised when a certificate is requested for base 2.

    The truncation guarantees require an integer base >= 3; base-2 series
    values can still be computed, but carry no residual bound.
    """


@dataclass(frozen=True)
class InvGammaParams:
    """Shape alpha > 0 and scale beta > 0 of an inverse gamma distribution."""

    alpha: float
    beta: float

    def __post_init__(self):
        a = float(self.alpha)
        b = float(self.beta)
        if not math.isfinite(a) or a <= 0.0:
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if not math.isfinite(b) or b <= 0.0:
            raise ValueError(f"beta must be positive and finite, got {self.beta!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class TruncationSpec:
    """Target uniform accuracy together with the series cutoff enforcing it.

    Terms with |k| <= cutoff_m - 1 are summed; |k| >= cutoff_m are dropped.
    """

    epsilon: float
    cutoff_m: int

    def __post_init__(self):
        eps = float(self.epsilon)
        if not math.isfinite(eps) or eps <= 0.0:
            raise ValueError(f"epsilon must be positive and finite, got {self.epsilon!r}")
        try:
            m = operator.index(self.cutoff_m)
        except TypeError:
            raise TypeError(f"cutoff_m must be an integer, got {self.cutoff_m!r}") from None
        if m < 1:
            raise ValueError(f"cutoff_m must be >= 1, got {m}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "cutoff_m", m)


@dataclass(frozen=True)
class SeriesEvaluation:
    """A truncated series value with its certified residual bound.

    residual_bound is None when no certificate applies (base 2); otherwise
    the true value lies within residual_bound of value.
    """

    value: float
    residual_bound: float | None
    cutoff_m: int

    @property
    def certified(self) -> bool:
        return self.residual_bound is not None


def _validate_unit_interval(z, what: str = "z") -> float:
    fz = float(z)
    if not math.isfinite(fz) or not 0.0 <= fz <= 1.0:
        raise ValueError(f"{what} must lie in [0, 1], got {z!r}")
    return fz


def invgamma_pdf(x, params: InvGammaParams) -> float:
    """Density beta^alpha / Gamma(alpha) * x^(-alpha-1) * exp(-beta/x), x > 0.

    Evaluated in log space, so extreme parameter combinations underflow to
    0.0 instead of overflowing intermediates.
    """
    fx = float(x)
    if not math.isfinite(fx) or fx <= 0.0:
        raise ValueError(f"x must be positive and finite, got {x!r}")
    a, b = params.alpha, params.beta
    log_pdf = a * math.log(b) - math.lgamma(a) - (a + 1.0) * math.log(fx) - b / fx
    if log_pdf < _EXP_UNDERFLOW:
        return 0.0
    if log_pdf > 709.0:  # density exceeds double range (tiny beta near the mode)
        return math.inf
    return math.exp(log_pdf)


def invgamma_cdf(x, params: InvGammaParams) -> float:
    """CDF of the inverse gamma law: Q(alpha, beta/x) for x > 0."""
    fx = float(x)
    if math.isnan(fx) or fx <= 0.0:
        raise ValueError(f"x must be positive, got {x!r}")
    if math.isinf(fx):
        return 1.0
    return regularized_upper_gamma(params.alpha, params.beta / fx)


def canonicalize_beta(params: InvGammaParams, base: BaseConfig) -> tuple[InvGammaParams, int]:
    """Rescale beta into [1, B); returns the new params and the shift m.

    The returned params satisfy params.beta == original * B**(-m).  All
    quantities describing log_B X mod 1 are invariant under this map.
    """
    b = base.base
    beta = params.beta
    m = math.floor(math.log(beta) / base.log_base)
    s = _scale_by_power(beta, b, -m)
    while s >= b:
        s /= b
        m += 1
    while s < 1.0:
        s *= b
        m -= 1
    if m == 0:
        return params, 0
    return InvGammaParams(params.alpha, s), m


def _cutoff_threshold(alpha: float, beta_canonical: float, base: BaseConfig, epsilon: float) -> float:
    """max(alpha + 1, -log_B(eps * Gamma(alpha) / (2 * B^alpha * beta)))."""
    lb = base.log_base
    t = -(math.log(epsilon) + math.lgamma(alpha) - _LOG2 - alpha * lb - math.log(beta_canonical)) / lb
    return max(alpha + 1.0, t)


def truncation_cutoff(params: InvGammaParams, base: BaseConfig, epsilon) -> TruncationSpec:
    """Smallest cutoff M strictly above the certified-accuracy threshold.

    M is the least integer exceeding
    max(alpha + 1, -log_B(eps * Gamma(alpha) / (2 * B^alpha * beta))) with
    beta first canonicalized into [1, B).  Requires base >= 3.

    Raises:
        UnsupportedBaseError: for base 2 (no certificate is available).
        ValueError: for epsilon <= 0.
    """
    if base.base == 2:
        raise UnsupportedBaseError(
            "no truncation certificate for base 2; use base >= 3 or evaluate uncertified"
        )
    eps = float(epsilon)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"epsilon must be positive and finite, got {epsilon!r}")
    canonical, _ = canonicalize_beta(params, base)
    threshold = _cutoff_threshold(canonical.alpha, canonical.beta, base, eps)
    return TruncationSpec(epsilon=eps, cutoff_m=math.floor(threshold) + 1)


def _heuristic_cutoff(params: InvGammaParams, base: BaseConfig, epsilon: float) -> int:
    """Cutoff from the same threshold formula, without any certificate claim.

    Used for base 2, where the certified form is unavailable.
    """
    canonical, _ = canonicalize_beta(params, base)
    return math.floor(_cutoff_threshold(canonical.alpha, canonical.beta, base, float(epsilon))) + 1


def tail_bound_general(params: InvGammaParams, base: BaseConfig, m, z=None) -> float:
    """Closed-form tail expression B^(a(1-z)) * beta / Gamma(a) *
    (Gamma(a, B^M) + B^(-M a)/a) for a cutoff M >= 1.

    With z omitted, returns the z = 0 value, which dominates the expression
    over z in [0, 1].  Requires beta already canonicalized into [1, B).
    """
    try:
        m = operator.index(m)
    except TypeError:
        raise TypeError(f"cutoff must be an integer, got {m!r}") from None
    if m < 1:
        raise ValueError(f"cutoff must be >= 1, got {m}")
    a, b = params.alpha, params.beta
    if not 1.0 <= b < base.base:
        raise ValueError(f"beta must lie in [1, {base.base}) (canonicalize first), got {b!r}")
    zz = 0.0 if z is None else _validate_unit_interval(z)
    lb = base.log_base
    lead = a * (1.0 - zz) * lb + math.log(b)
    # B^M, saturating to inf for huge cutoffs; Q(a, inf) = 0
    x = math.exp(m * lb) if m * lb <= 709.0 else math.inf
    q = regularized_upper_gamma(a, x)
    upper_tail = math.exp(lead + math.log(q)) if q > 0.0 else 0.0
    log_power_term = lead - m * a * lb - math.log(a) - math.lgamma(a)
    power_term = 0.0 if log_power_term < _EXP_UNDERFLOW else math.exp(log_power_term)
    return upper_tail + power_term


def _alpha1_hypothesis_floor(base: BaseConfig) -> float:
    return _LOG2 * base.log_base / (4.0 * _PI_SQ)


def tail_bound_alpha1(base: BaseConfig, m) -> float:
    """Shape-1 tail expression 4(pi^2 + ln B)/(pi sqrt(ln B)) * M * e^(-pi^2 M / ln B).

    Valid (and enforced) for M >= ln 2 * ln B / (4 pi^2).  Much tighter than
    tail_bound_general when the shape is exactly 1.
    """
    try:
        m = operator.index(m)
    except TypeError:
        raise TypeError(f"cutoff must be an integer, got {m!r}") from None
    lb = base.log_base
    floor_m = _alpha1_hypothesis_floor(base)
    if m < floor_m:
        raise ValueError(f"cutoff {m} is below the validity floor {floor_m:.6g}")
    return 4.0 * (_PI_SQ + lb) / (math.pi * math.sqrt(lb)) * m * math.exp(-_PI_SQ * m / lb)


def cutoff_alpha1(base: BaseConfig, epsilon) -> int:
    """Cutoff M = ceil((h + log h + 1/2)/a) making the shape-1 tail at most epsilon.

    Here a = pi^2/ln B, C = 4(pi^2 + ln B)/(pi ln B), and
    h = max(6, -log(a*epsilon/C)).
    """
    eps = float(epsilon)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"epsilon must be positive and finite, got {epsilon!r}")
    lb = base.log_base
    a = _PI_SQ / lb
    c = 4.0 * (_PI_SQ + lb) / (math.pi * lb)
    h = max(6.0, -math.log(a * eps / c))
    return math.ceil((h + math.log(h) + 0.5) / a)


@lru_cache(maxsize=512)
def _gamma_ratio_table(alpha: float, base_int: int, cutoff_m: int) -> np.ndarray:
    """r_k = Gamma(alpha + 2 pi i k / ln B)/Gamma(alpha), k = 1..cutoff_m - 1.

    Computed once per (alpha, base, cutoff) and shared read-only across all
    z evaluations; ratios are formed in log space so large alpha never
    overflows.
    """
    lb = math.log(base_int)
    lg = math.lgamma(alpha)
    table = np.empty(cutoff_m - 1, dtype=complex)
    for k in range(1, cutoff_m):
        table[k - 1] = cmath.exp(complex_log_gamma(complex(alpha, _TWO_PI * k / lb)) - lg)
    table.setflags(write=False)
    return table


def _kahan_add(total: np.ndarray, comp: np.ndarray, term: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def _reduced_frac(u: np.ndarray) -> np.ndarray:
    """u minus its nearest integer, in [-1/2, 1/2]; exact 0 at integer u."""
    return u - np.round(u)


def _cdf_values(zs: np.ndarray, alpha: float, beta_canonical: float,
                base: BaseConfig, cutoff_m: int) -> np.ndarray:
    table = _gamma_ratio_table(alpha, base.base, cutoff_m)
    theta = math.log(beta_canonical) / base.log_base
    total = np.array(zs, dtype=float, copy=True)
    comp = np.zeros_like(total)
    for k in range(1, cutoff_m):
        phase = _TWO_PI * (k * theta - round(k * theta))
        # coef chosen so the k-term plus its conjugate equals 2*Re(coef * w)
        # with w = e^{2 pi i k z} - 1
        coef = table[k - 1] * complex(math.cos(phase), -math.sin(phase)) * complex(0.0, -1.0 / (_TWO_PI * k))
        r = _reduced_frac(k * zs)
        sp = np.sin(math.pi * r)
        cp = np.cos(math.pi * r)
        # w = e^{2 pi i r} - 1 = 2 sin(pi r) * (-sin(pi r) + i cos(pi r));
        # exactly 0 at r = 0, so F(0) = 0 and F(1) = 1 hold by construction
        w_re = -2.0 * sp * sp
        w_im = 2.0 * sp * cp
        term = 2.0 * (coef.real * w_re - coef.imag * w_im)
        total, comp = _kahan_add(total, comp, term)
    return total


def _prime_values(zs: np.ndarray, alpha: float, beta_canonical: float,
                  base: BaseConfig, cutoff_m: int) -> np.ndarray:
    table = _gamma_ratio_table(alpha, base.base, cutoff_m)
    theta = math.log(beta_canonical) / base.log_base
    total = np.ones_like(np.asarray(zs, dtype=float))
    comp = np.zeros_like(total)
    for k in range(1, cutoff_m):
        r_k = table[k - 1]
        psi = _TWO_PI * _reduced_frac(k * (theta - zs))
        term = 2.0 * (r_k.real * np.cos(psi) + r_k.imag * np.sin(psi))
        total, comp = _kahan_add(total, comp, term)
    return total


def _prime_residual(alpha: float, beta_canonical: float, base: BaseConfig,
                    cutoff_m: int) -> float | None:
    """Tightest applicable uniform tail expression, or None for base 2."""
    if base.base == 2:
        return None
    canonical = InvGammaParams(alpha, beta_canonical)
    bound = tail_bound_general(canonical, base, cutoff_m)
    if alpha == 1.0 and cutoff_m >= _alpha1_hypothesis_floor(base):
        bound = min(bound, tail_bound_alpha1(base, cutoff_m))
    return bound


def fb_prime_series(z, params: InvGammaParams, base: BaseConfig,
                    trunc: TruncationSpec) -> SeriesEvaluation:
    """Truncated series for F_B'(z), the density of log_B X mod 1.

    The cutoff-1 evaluation is exactly 1.0 (only the constant term remains).
    The residual bound is the tighter of the applicable uniform tail
    expressions; None for base 2.
    """
    fz = _validate_unit_interval(z)
    canonical, _ = canonicalize_beta(params, base)
    value = float(_prime_values(np.array([fz]), canonical.alpha, canonical.beta,
                                base, trunc.cutoff_m)[0])
    residual = _prime_residual(canonical.alpha, canonical.beta, base, trunc.cutoff_m)
    return SeriesEvaluation(value=value, residual_bound=residual, cutoff_m=trunc.cutoff_m)


def fb_prime_series_values(zs, params: InvGammaParams, base: BaseConfig,
                           trunc: TruncationSpec) -> np.ndarray:
    """Vectorized fb_prime_series values over an array of z in [0, 1]."""
    arr = np.asarray(zs, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("all z must lie in [0, 1]")
    canonical, _ = canonicalize_beta(params, base)
    return _prime_values(arr, canonical.alpha, canonical.beta, base, trunc.cutoff_m)


def fb_cdf_series(z, params: InvGammaParams, base: BaseConfig,
                  trunc: TruncationSpec) -> SeriesEvaluation:
    """Truncated series for F_B(z), the CDF of log_B X mod 1.

    F(0) = 0 and F(1) = 1 hold exactly (every summand carries an exact zero
    factor at the endpoints).  When the cutoff comes from truncation_cutoff,
    the residual bound is the requested epsilon: the derivative series is
    uniformly within epsilon, and integrating from 0 to z <= 1 keeps the
    CDF within epsilon as well.  None for base 2 (uncertified).
    """
    fz = _validate_unit_interval(z)
    canonical, _ = canonicalize_beta(params, base)
    value = float(_cdf_values(np.array([fz]), canonical.alpha, canonical.beta,
                              base, trunc.cutoff_m)[0])
    residual = None if base.base == 2 else trunc.epsilon
    return SeriesEvaluation(value=value, residual_bound=residual, cutoff_m=trunc.cutoff_m)


def fb_cdf_series_values(zs, params: InvGammaParams, base: BaseConfig,
                         trunc: TruncationSpec) -> np.ndarray:
    """Vectorized fb_cdf_series values over an array of z in [0, 1].

    Elementwise identical to fb_cdf_series (same coefficient table and
    summation order); used by grid sweeps and empirical-CDF comparisons.
    """
    arr = np.asarray(zs, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("all z must lie in [0, 1]")
    canonical, _ = canonicalize_beta(params, base)
    return _cdf_values(arr, canonical.alpha, canonical.beta, base, trunc.cutoff_m)
