"""Sequential-arrival scheduling loop for one network slice.

Each arrival names its category and SNR. The simulator estimates the
service's resource against the category's admitted services, admits it if
both the budget and the per-category service cap allow, and rebuilds and
greedily colors that category's dependency graph. A color is an opaque
resource-pool label; quantitative allocation is governed by the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .allocation import AllocationModelParams, ServiceState, estimate_resource
from .capacity_model import (
    BoundParams,
    CategoryCapacity,
    VarianceBreakdown,
    cantelli_lower_bound,
    service_cap,
    slice_capacity_sum,
    variance_bound,
)
from .errors import SliceWeaverError, ValidationError
from .graph_core import build_dependency_graph, greedy_color
from .stochastic import FactorModel, McEstimate, mc_sla_probability, mc_variance_of_load


@dataclass(frozen=True)
class Arrival:
    category: int
    snr: float


@dataclass(frozen=True)
class ScenarioConfig:
    category_count: int
    arrivals: tuple[Arrival, ...]
    bound_params: BoundParams
    allocation_params: AllocationModelParams
    r_range: tuple[float, float]
    seed: int = 0
    mean_load: float | None = None
    quarter_cov: bool = False
    mc_samples: int = 0

    def validate(self) -> "ScenarioConfig":
        if self.category_count < 1:
            raise ValidationError("category_count", "must be a positive integer")
        for i, arr in enumerate(self.arrivals):
            if not 0 <= arr.category < self.category_count:
                raise ValidationError(
                    "arrival", f"arrival {i} names category {arr.category}, "
                    f"expected 0..{self.category_count - 1}"
                )
            if not (math.isfinite(arr.snr) and arr.snr >= 0):
                raise ValidationError("arrival", f"arrival {i} has invalid snr {arr.snr}")
        r_lo, r_hi = self.r_range
        if not (math.isfinite(r_lo) and math.isfinite(r_hi) and 0 <= r_lo <= r_hi):
            raise ValidationError("r_range", "need 0 <= r_lo <= r_hi, both finite")
        if self.mean_load is not None and not self.mean_load >= 0:
            raise ValidationError("mean_load", "must be non-negative")
        if self.mc_samples < 0 or self.mc_samples == 1:
            raise ValidationError("mc_samples", "must be 0 (disabled) or at least 2")
        self.bound_params.validate()
        self.allocation_params.validate()
        return self


@dataclass(frozen=True)
class ArrivalRecord:
    index: int
    category: int
    resource: float
    admitted: bool
    total_after: float
    color: int | None
    category_count: int


@dataclass(frozen=True)
class SimulationReport:
    capacities: tuple[CategoryCapacity, ...]
    slice_capacity: int
    service_cap: int
    colors_used: tuple[int, ...]
    variance: VarianceBreakdown
    mean_load: float
    sla_lower_bound: float
    total_allocated: float
    records: tuple[ArrivalRecord, ...]
    seed: int
    mc_variance: McEstimate | None = None
    mc_sla: McEstimate | None = None

    @property
    def admitted_count(self) -> int:
        return sum(1 for r in self.records if r.admitted)


class ScenarioError(SliceWeaverError):
    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"arrival {index}: {cause}")


def admit(candidate_resource: float, current_total: float, current_count: int, p: BoundParams) -> bool:
    """Budget check on total resources plus the per-category service cap."""
    return current_total + candidate_resource <= p.r_max and current_count + 1 <= service_cap(p)


@dataclass
class _Category:
    states: list[ServiceState] = field(default_factory=list)
    colors_used: int = 0


def run_scenario(config: ScenarioConfig) -> SimulationReport:
    config.validate()
    bp = config.bound_params
    cap = service_cap(bp)
    categories = [_Category() for _ in range(config.category_count)]
    total = 0.0
    records = []

    for idx, arr in enumerate(config.arrivals):
        cat = categories[arr.category]
        try:
            est = estimate_resource(config.allocation_params, cat.states, arr.snr, config.r_range)
            ok = admit(est.resource, total, len(cat.states), bp)
            color = None
            if ok:
                total += est.resource
                cat.states.append(ServiceState(est.resource, arr.snr))
                coloring = greedy_color(build_dependency_graph(len(cat.states)))
                cat.colors_used = coloring.colors_used
                color = coloring.assignment[-1]
        except SliceWeaverError as exc:
            raise ScenarioError(idx, exc) from exc
        records.append(
            ArrivalRecord(
                index=idx,
                category=arr.category,
                resource=est.resource,
                admitted=ok,
                total_after=total,
                color=color,
                category_count=len(cat.states),
            )
        )

    capacities = tuple(CategoryCapacity(m, len(c.states)) for m, c in enumerate(categories))
    vb = variance_bound(bp, quarter_cov=config.quarter_cov)
    if config.mean_load is not None:
        mean_load = config.mean_load
    elif math.isinf(bp.r_max):
        mean_load = 0.0
    else:
        mean_load = total / bp.r_max

    mc_var = mc_sla = None
    if config.mc_samples:
        u = max(1, cap)
        model = FactorModel(bp.a_prime, bp.sigma_a_sq, min(bp.cov_a, bp.sigma_a_sq), u)
        mc_var = mc_variance_of_load(model, config.mc_samples, config.seed)
        mc_sla = mc_sla_probability(model, config.mc_samples, config.seed)

    return SimulationReport(
        capacities=capacities,
        slice_capacity=slice_capacity_sum(capacities),
        service_cap=cap,
        colors_used=tuple(c.colors_used for c in categories),
        variance=vb,
        mean_load=mean_load,
        sla_lower_bound=cantelli_lower_bound(vb.total, mean_load),
        total_allocated=total,
        records=tuple(records),
        seed=config.seed,
        mc_variance=mc_var,
        mc_sla=mc_sla,
    )


def exponential_arrivals(
    count: int, category_count: int, sigma_s_sq: float, seed: int
) -> list[Arrival]:
    """Seeded arrivals with uniform categories and exponential (Rayleigh-power) SNR."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(1 << 32,))))
    cats = rng.integers(0, category_count, size=count)
    snrs = rng.exponential(sigma_s_sq, size=count)
    return [Arrival(int(m), float(s)) for m, s in zip(cats, snrs)]


def admitted_per_category(records: Sequence[ArrivalRecord], category_count: int) -> list[int]:
    counts = [0] * category_count
    for r in records:
        if r.admitted:
            counts[r.category] += 1
    return counts
