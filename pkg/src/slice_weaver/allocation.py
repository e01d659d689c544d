"""Probabilistic per-service resource estimation.

The score maximized for an incoming service is the first service's
exponential SNR density plus, for every later service ``n``, the ratio of
Poisson pmfs ``P(n; lam_n) / P(n - 1; lam_{n-1})``, where::

    lam_n = (f_d / delta_t) * sum_{i <= n} i * exp(beta * r_i * s_i) / c

The sum mixes a density with pmf ratios, so it is treated as a score and
not as a probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InputError, NumericError, ValidationError

GRID_POINTS = 1024
TIE_TOL = 1e-9
REFINE_RTOL = 1e-6
FD_REL_STEP = 1e-5
_EXP_LIMIT = math.log(np.finfo(float).max)
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AllocationModelParams:
    """Constants of the utility throughput model.

    ``index_weighted=False`` switches the service-count rate to the plain
    sum of throughputs over the cell throughput, without the index weight.
    """

    f_d: float
    beta: float
    delta_t: float
    sigma_s_sq: float
    cell_throughput: float
    index_weighted: bool = True

    def validate(self) -> "AllocationModelParams":
        for name in ("f_d", "delta_t", "sigma_s_sq", "cell_throughput"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(name, "must be positive and finite")
        if not math.isfinite(self.beta):
            raise ValidationError("beta", "must be finite")
        return self

    @property
    def rate_scale(self) -> float:
        return self.f_d / (self.delta_t * self.cell_throughput)


@dataclass(frozen=True)
class ServiceState:
    resource: float
    snr: float

    def __post_init__(self):
        for name in ("resource", "snr"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise InputError(f"{name} must be finite and non-negative, got {value}")


@dataclass(frozen=True)
class ObjectiveEval:
    value: float
    rayleigh_term: float
    conditional_terms: tuple[float, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ResourceEstimate:
    resource: float
    objective: float
    s_derivative: float
    grid_index: int


def _exp_checked(exponent: float) -> float:
    if exponent > _EXP_LIMIT:
        raise NumericError(f"exponent {exponent:.6g} overflows exp()")
    return math.exp(exponent)


def throughput(p: AllocationModelParams, r_i: float, s_i: float) -> float:
    """f_d * exp(beta r_i s_i) / delta_t."""
    if not p.delta_t > 0:
        raise InputError("delta_t must be positive")
    return p.f_d * _exp_checked(p.beta * r_i * s_i) / p.delta_t


def rayleigh_term(sigma_s_sq: float, x: float) -> float:
    if not sigma_s_sq > 0:
        raise InputError("sigma_s_sq must be positive")
    if x < 0:
        raise InputError("x must be non-negative")
    return math.exp(-x / sigma_s_sq) / sigma_s_sq


def poisson_pmf(lam: float, n: int) -> float:
    if lam < 0:
        raise InputError("rate must be non-negative")
    if n < 0:
        raise InputError("count must be non-negative")
    if lam == 0:
        return 1.0 if n == 0 else 0.0
    if n > 20:
        return math.exp(-lam + n * math.log(lam) - math.lgamma(n + 1))
    return math.exp(-lam) * lam**n / math.factorial(n)


def _check_prefix(states: Sequence[ServiceState], n: int) -> None:
    if n < 1 or n > len(states):
        raise InputError(f"n={n} must lie in 1..{len(states)}")


def _weights(p: AllocationModelParams, states: Sequence[ServiceState], n: int) -> list[float]:
    return [
        ((i + 1) if p.index_weighted else 1) * _exp_checked(p.beta * st.resource * st.snr)
        for i, st in enumerate(states[:n])
    ]


def lambda_weighted(p: AllocationModelParams, states: Sequence[ServiceState], n: int) -> float:
    _check_prefix(states, n)
    if not p.cell_throughput > 0:
        raise InputError("cell_throughput must be positive")
    if not p.delta_t > 0:
        raise InputError("delta_t must be positive")
    return (p.f_d / p.delta_t) * math.fsum(_weights(p, states, n)) / p.cell_throughput


def conditional_prob(p: AllocationModelParams, states: Sequence[ServiceState], n: int) -> float:
    """P(n; lam_n) / P(n-1; lam_{n-1}) in closed form.

    Evaluated as exp(-(lam1 - lam2)) * lam1^n / (lam2^(n-1) * n) in log
    space, with lam1 - lam2 taken directly from the n-th weight.
    """
    if n < 2:
        raise InputError("conditioning needs n >= 2")
    _check_prefix(states, n)
    lam1 = lambda_weighted(p, states, n)
    lam2 = lambda_weighted(p, states, n - 1)
    if lam2 == 0:
        raise NumericError("rate of the conditioning services is zero")
    step = p.rate_scale * _weights(p, states, n)[-1]
    return math.exp(-step + n * math.log(lam1) - (n - 1) * math.log(lam2) - math.log(n))


def total_probability(
    p: AllocationModelParams, states: Sequence[ServiceState], x: float
) -> ObjectiveEval:
    if not states:
        raise InputError("need at least one service state")
    first = rayleigh_term(p.sigma_s_sq, x)
    terms = tuple(conditional_prob(p, states, n) for n in range(2, len(states) + 1))
    value = first
    for t in terms:
        value += t
    return ObjectiveEval(value=value, rayleigh_term=first, conditional_terms=terms)


def _objective_rows(
    p: AllocationModelParams,
    base_r: np.ndarray,
    base_s: np.ndarray,
    cand_r: np.ndarray,
    cand_s: np.ndarray,
    rayleigh: float,
) -> np.ndarray:
    m = cand_r.shape[0]
    r = np.empty((m, base_r.size + 1))
    s = np.empty_like(r)
    r[:, :-1] = base_r
    s[:, :-1] = base_s
    r[:, -1] = cand_r
    s[:, -1] = cand_s
    return kernels.objective_batch(r, s, p.rate_scale, p.beta, p.index_weighted, rayleigh)


def _check_finite(values: np.ndarray, where: np.ndarray, what: str) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        i = int(bad[0])
        raise NumericError(f"non-finite {what} at r={where[i]:.9g} (grid index {i})")


def estimate_resource(
    p: AllocationModelParams,
    states: Sequence[ServiceState],
    new_snr: float,
    r_range: tuple[float, float],
) -> ResourceEstimate:
    """Pick the incoming service's resource share.

    The objective (total score at ``x = new_snr`` with the candidate state
    ``(r, new_snr)`` appended) is maximized over ``r`` on a uniform grid.
    Grid points within ``TIE_TOL`` of the best value are filtered by the
    smallest central-difference derivative with respect to the candidate's
    SNR, lowest ``r`` winning exact ties. The winner is refined by
    golden-section search inside its neighbouring grid cells.

    With no existing states the score does not depend on ``r`` and
    ``r_lo`` is returned.
    """
    r_lo, r_hi = (float(v) for v in r_range)
    if not (math.isfinite(r_lo) and math.isfinite(r_hi)) or r_lo > r_hi:
        raise InputError(f"invalid resource range [{r_lo}, {r_hi}]")
    if new_snr < 0:
        raise InputError("new_snr must be non-negative")

    rayleigh = rayleigh_term(p.sigma_s_sq, new_snr)
    base_r = np.array([st.resource for st in states], dtype=float)
    base_s = np.array([st.snr for st in states], dtype=float)
    h = FD_REL_STEP * max(1.0, new_snr)

    def objective(rs: np.ndarray, snr: float = new_snr) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return _objective_rows(p, base_r, base_s, rs, np.full(rs.shape, snr), rayleigh)

    def s_derivative(rs: np.ndarray) -> np.ndarray:
        return (objective(rs, new_snr + h) - objective(rs, new_snr - h)) / (2.0 * h)

    grid = np.linspace(r_lo, r_hi, GRID_POINTS) if r_hi > r_lo else np.array([r_lo])
    values = objective(grid)
    _check_finite(values, grid, "objective")
    near = np.flatnonzero(values >= values.max() - TIE_TOL)
    deriv = np.abs(s_derivative(grid[near]))
    _check_finite(deriv, grid[near], "SNR derivative")
    # argmin returns the first (lowest-r) index on exact ties
    j = int(near[np.argmin(deriv)])

    if grid.size == 1:
        return ResourceEstimate(r_lo, float(values[0]), float(s_derivative(grid)[0]), 0)

    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, grid.size - 1)]
    tol = REFINE_RTOL * (r_hi - r_lo)
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = objective(np.array([x1, x2]))
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = float(objective(np.array([x1]))[0])
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = float(objective(np.array([x2]))[0])

    # candidates sorted by r so that ties go to the lowest r
    cands = np.array(sorted({float(grid[j]), float(lo), float(hi), 0.5 * (lo + hi)}))
    cvals = objective(cands)
    _check_finite(cvals, cands, "objective")
    if cvals.max() - values[j] <= 0.0:
        best_r = float(grid[j])
        best_v = float(values[j])
    else:
        k = int(np.argmax(cvals))
        best_r, best_v = float(cands[k]), float(cvals[k])
    d = float(s_derivative(np.array([best_r]))[0])
    return ResourceEstimate(resource=best_r, objective=best_v, s_derivative=d, grid_index=j)
