"""Significand arithmetic and the reference first-digit law.

For an integer base B >= 2, every x > 0 factors uniquely as x = s * B**k
with s in [1, B) and integer k; s is the significand of x.  A positive
random variable follows the reference law when P(significand <= s) equals
log_B(s), which puts first digit d at probability log_B((d+1)/d).
"""

import math
import operator
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BaseConfig",
    "SignificandDecomposition",
    "decompose_significand",
    "log_mod_1",
    "log_mod_1_array",
    "benford_digit_prob",
    "benford_significand_cdf",
]


@dataclass(frozen=True)
class BaseConfig:
    """An integer base B >= 2 together with its cached natural log."""

    base: int
    log_base: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        try:
            base = operator.index(self.base)
        except TypeError:
            raise TypeError(f"base must be an integer, got {self.base!r}") from None
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "log_base", math.log(base))


@dataclass(frozen=True)
class SignificandDecomposition:
    """x = significand * base**exponent with significand in [1, base)."""

    significand: float
    exponent: int


def _as_positive_finite(x, what: str) -> float:
    fx = float(x)
    if not math.isfinite(fx) or fx <= 0.0:
        raise ValueError(f"{what} must be positive and finite, got {x!r}")
    return fx


def _scale_by_power(x: float, base: int, e: int) -> float:
    """x * base**e using exact integer powers, chunked to dodge float overflow."""
    step = max(1, int(300.0 / math.log10(base)))
    while e > step:
        x *= float(base ** step)
        e -= step
    while e < -step:
        x /= float(base ** step)
        e += step
    if e >= 0:
        return x * float(base ** e)
    return x / float(base ** (-e))


def decompose_significand(x, base: BaseConfig) -> SignificandDecomposition:
    """Split x > 0 into significand in [1, B) and integer exponent.

    Values exactly at a power of B decompose with significand 1.0 (the
    half-open convention).  Reconstruction s * B**k is faithful to ~1e-15
    relative.
    """
    fx = _as_positive_finite(x, "x")
    b = base.base
    if b == 2:
        mant, exp2 = math.frexp(fx)  # exact: fx = mant * 2**exp2, mant in [0.5, 1)
        return SignificandDecomposition(2.0 * mant, exp2 - 1)
    k = math.floor(math.log(fx) / base.log_base)
    s = _scale_by_power(fx, b, -k)
    # the log estimate can be off by one near powers of B
    while s >= b:
        s /= b
        k += 1
    while s < 1.0:
        s *= b
        k -= 1
    return SignificandDecomposition(s, k)


def log_mod_1(x, base: BaseConfig) -> float:
    """Fractional part of log_B(x), computed as log_B of the significand.

    Always lands in [0, 1); x at an exact power of B maps to 0.0.
    """
    s = decompose_significand(x, base).significand
    r = math.log(s) / base.log_base
    if r >= 1.0:  # guard against a rounding spill at s just below B
        r = math.nextafter(1.0, 0.0)
    return r


def log_mod_1_array(values, base: BaseConfig) -> np.ndarray:
    """Vectorized fractional part of log_B over an array of positive values.

    Equivalent to log_mod_1 elementwise up to ~1e-15 (mod-1 wraparound at
    exact powers of B aside); intended for large sample batches.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("values must be non-empty")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("all values must be positive and finite")
    return np.mod(np.log(arr) / base.log_base, 1.0)


def benford_digit_prob(d, base: BaseConfig) -> float:
    """Reference probability log_B((d+1)/d) of first digit d, 1 <= d <= B-1."""
    try:
        d = operator.index(d)
    except TypeError:
        raise TypeError(f"digit must be an integer, got {d!r}") from None
    if not 1 <= d <= base.base - 1:
        raise ValueError(f"digit must be in [1, {base.base - 1}], got {d}")
    return math.log1p(1.0 / d) / base.log_base


def benford_significand_cdf(s, base: BaseConfig) -> float:
    """Reference CDF log_B(s) of the significand, for s in [1, B)."""
    fs = float(s)
    if not math.isfinite(fs) or not 1.0 <= fs < base.base:
        raise ValueError(f"significand must lie in [1, {base.base}), got {s!r}")
    return math.log(fs) / base.log_base
