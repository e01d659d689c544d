"""Capacity and load-variance bounds for a slice-in-slice category.

Relative allocations ``A_i = R_i / r_max`` of the ``U`` admitted services
have conditional mean at most ``a_prime``, conditional variance at most
``sigma_a_sq`` and pairwise conditional covariance at most ``cov_a``. With
``U`` pinned at ``g / a`` the variance of the relative load ``R = sum A_i``
is bounded by::

    V[R] <= sigma_a_sq/2 * (U^2 + U) + cov_a * (U^4 - U^2)

and vanishes as ``a -> 0`` only if the three limit conditions checked by
:func:`limit_conditions` hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InputError, ValidationError

DEFAULT_LIMIT_EPS = 1e-6


@dataclass(frozen=True)
class BoundParams:
    """Parameter bundle for the capacity and variance bounds.

    Construction does not validate, so that boundary cases (``a = 0``,
    ``g = 1``) can reach the operations that define their own errors. Call
    :meth:`validate` before simulating.
    """

    a: float
    a_prime: float
    sigma_a_sq: float
    cov_a: float
    g: float
    r_max: float

    @property
    def r(self) -> float:
        """Mean per-service resource, ``a * r_max``."""
        return self.a * self.r_max

    def validate(self) -> "BoundParams":
        if not self.a > 0:
            raise ValidationError("a", "must be positive")
        if not self.a <= self.a_prime:
            raise ValidationError("a_prime", "must be at least a")
        if not self.a_prime <= 1:
            raise ValidationError("a_prime", "must not exceed 1")
        if not self.sigma_a_sq >= 0:
            raise ValidationError("sigma_a_sq", "must be non-negative")
        if not self.cov_a >= 0:
            raise ValidationError("cov_a", "must be non-negative")
        if not self.g > 1:
            raise ValidationError("g", "g must exceed 1")
        if not self.r_max > 0:
            raise ValidationError("r_max", "must be positive")
        return self


@dataclass(frozen=True)
class VarianceBreakdown:
    term_sigma: float
    term_cov: float
    term_mean: float
    total: float
    u_effective: float


@dataclass(frozen=True)
class CategoryCapacity:
    category: int
    admitted: int


def _exact(x: float) -> Fraction:
    # repr gives the shortest decimal that round-trips, so 0.1 -> 1/10
    return Fraction(repr(float(x)))


def cap_arguments(g: float, r_max: float, r: float, a: float) -> tuple[Fraction, Fraction]:
    """Exact ``(g r_max / r, g / a)`` from the decimal form of the inputs."""
    if r <= 0 or a <= 0:
        raise InputError("r and a must be positive")
    g_, a_ = _exact(g), _exact(a)
    return g_ * _exact(r_max) / _exact(r), g_ / a_


def service_cap(p: BoundParams) -> int:
    """Maximum services per category: floor(min(g r_max / r, g / a)).

    Evaluated in exact rational arithmetic on the decimal form of the
    inputs so that e.g. ``g=1.5, a=0.5`` gives exactly 3. With ``r = a
    r_max`` both arguments coincide; an infinite budget leaves ``g / a``.
    """
    if p.a == 0:
        raise InputError("a = 0 leaves the service count unbounded")
    if p.a < 0:
        raise InputError("a must be positive")
    by_share = _exact(p.g) / _exact(p.a)
    if math.isinf(p.r_max):
        return math.floor(by_share)
    by_budget = _exact(p.g) * _exact(p.r_max) / (_exact(p.a) * _exact(p.r_max))
    return math.floor(min(by_budget, by_share))


def variance_bound(p: BoundParams, *, quarter_cov: bool = False) -> VarianceBreakdown:
    """Upper bound on V[R] with U fixed at g / a.

    ``quarter_cov`` applies the ``cov_a / 4`` coefficient from the
    intermediate algebra instead of the final ``cov_a``.
    """
    if p.a <= 0:
        raise InputError("a must be positive")
    u = p.g / p.a
    term_sigma = p.sigma_a_sq * (u * u + u) / 2.0
    cov = p.cov_a / 4.0 if quarter_cov else p.cov_a
    term_cov = cov * (u**4 - u * u)
    # covariance of the constants E[U^2], E[U]
    term_mean = 0.0
    return VarianceBreakdown(
        term_sigma=term_sigma,
        term_cov=term_cov,
        term_mean=term_mean,
        total=term_sigma + term_cov + term_mean,
        u_effective=u,
    )


def cantelli_lower_bound(variance: float, mean_load: float) -> float:
    """P[R <= 1] >= 1 - V / (V + (1 - mean)^2) for mean < 1, else 0."""
    if mean_load < 0:
        raise InputError("mean_load must be non-negative")
    if mean_load >= 1:
        return 0.0
    gap = (1.0 - mean_load) ** 2
    bound = 1.0 - variance / (variance + gap)
    return min(1.0, max(0.0, bound))


def sla_lower_bound(p: BoundParams, mean_load: float, *, quarter_cov: bool = False) -> float:
    return cantelli_lower_bound(variance_bound(p, quarter_cov=quarter_cov).total, mean_load)


Schedule = Callable[[float], tuple[float, float, float]]


@dataclass(frozen=True)
class LimitReport:
    grid: tuple[float, ...]
    sigma_series: tuple[float, ...]
    cov_series: tuple[float, ...]
    mean_series: tuple[float, ...]
    tail_monotone: tuple[bool, bool, bool]
    final_values: tuple[float, float, float]
    eps: float

    @property
    def verdict(self) -> bool:
        return all(self.tail_monotone) and all(v < self.eps for v in self.final_values)


def _tail_non_increasing(series: Sequence[float]) -> bool:
    tail = series[len(series) // 2 :]
    return all(b <= a for a, b in zip(tail, tail[1:]))


def limit_conditions(
    schedule: Schedule,
    a_grid: Iterable[float],
    g: float,
    eps: float = DEFAULT_LIMIT_EPS,
) -> LimitReport:
    """Evaluate the three vanishing-variance conditions along a shrinking grid of ``a``.

    ``schedule(a)`` returns ``(sigma_a_sq, cov_a, a_prime)``. A condition is
    taken to hold when its series is non-increasing over the last half of
    the grid and its final value is below ``eps``.
    """
    grid = tuple(float(a) for a in a_grid)
    if not grid:
        raise InputError("a_grid must not be empty")
    if any(a <= 0 for a in grid):
        raise InputError("a_grid values must be positive")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise InputError("a_grid must be strictly decreasing")

    s1, s2, s3 = [], [], []
    for a in grid:
        sigma_a_sq, cov_a, a_prime = schedule(a)
        u = g / a
        s1.append(sigma_a_sq * (u * u + u) / 2.0)
        s2.append(cov_a * (u**4 - u * u))
        # a'^2/4 * 2 Cov(E[U^2], E[U]) with both expectations constant
        s3.append(a_prime * a_prime / 4.0 * 2.0 * 0.0)
    series = (s1, s2, s3)
    return LimitReport(
        grid=grid,
        sigma_series=tuple(s1),
        cov_series=tuple(s2),
        mean_series=tuple(s3),
        tail_monotone=tuple(_tail_non_increasing(s) for s in series),
        final_values=tuple(s[-1] for s in series),
        eps=eps,
    )


def slice_capacity_sum(categories: Iterable[CategoryCapacity | int]) -> int:
    total = 0
    for c in categories:
        total += c.admitted if isinstance(c, CategoryCapacity) else int(c)
    return total
