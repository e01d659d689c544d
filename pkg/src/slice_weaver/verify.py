"""Oracle-backed property checks behind ``slice-weaver verify``.

Every check pairs a library routine with an independent computation:
exhaustive enumeration for the graph results, scipy's Poisson pmf and
quadrature for the probability pieces, a dense grid for the optimizer, and
Monte Carlo for the variance and SLA bounds. Checks look functions up
through their modules at call time, so a patched routine is what gets
verified.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, stats

from . import allocation, capacity_model, graph_core, stochastic
from .allocation import AllocationModelParams, ServiceState

BUDGETS = {
    "small": {"mc_samples": 20_000, "scenarios": 5, "dense_points": 100_000, "pmf_cases": 1000},
    "full": {"mc_samples": 100_000, "scenarios": 20, "dense_points": 100_000, "pmf_cases": 1000},
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} {self.detail}  ({self.seconds:.2f}s)"


# -- graph checks ---------------------------------------------------------


def check_chromatic_poly(budget: dict) -> tuple[bool, str]:
    mismatches = []
    for u in range(0, 9):
        g = graph_core.build_dependency_graph(u)
        for k in range(0, 6):
            want = graph_core.count_proper_colorings(g, k)
            got = graph_core.chromatic_poly_complete(u, k)
            if got != want:
                mismatches.append((u, k, got, want))
    if mismatches:
        u, k, got, want = mismatches[0]
        return False, f"{len(mismatches)} mismatches, first u={u} k={k}: {got} != {want}"
    return True, "u<=8, k<=5 match enumeration"


def check_greedy_cliques(budget: dict) -> tuple[bool, str]:
    for u in range(1, 11):
        g = graph_core.build_dependency_graph(u)
        col = graph_core.greedy_color(g)
        chi = graph_core.chromatic_number_brute(g)
        if not (col.is_proper(g) and col.colors_used == u == chi):
            return False, f"u={u}: greedy={col.colors_used} chi={chi}"
    return True, "greedy == chi == u for u<=10"


def check_perfectness(budget: dict) -> tuple[bool, str]:
    for u in range(0, 9):
        if not graph_core.is_perfect_brute(graph_core.build_dependency_graph(u)):
            return False, f"K_{u} reported imperfect"
    c5 = graph_core.DependencyGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    if graph_core.is_perfect_brute(c5):
        return False, "5-cycle reported perfect"
    return True, "K_u perfect for u<=8; C5 rejected"


def check_layered_partite(budget: dict) -> tuple[bool, str]:
    for n in range(1, 7):
        path = graph_core.LayeredPartite((1,) * n).to_graph()
        for k in range(1, 6):
            want = graph_core.count_proper_colorings(path, k)
            got = graph_core.chromatic_poly_layered_partite(n, k)
            if got != want:
                return False, f"n={n} k={k}: {got} != {want}"
    return True, "n<=6, k<=5 match block enumeration"


# -- allocation checks ----------------------------------------------------


def random_allocation_case(rng: np.random.Generator):
    u = int(rng.integers(2, 7))
    params = AllocationModelParams(
        f_d=float(rng.uniform(0.5, 2.0)),
        beta=float(rng.uniform(0.0, 0.5)),
        delta_t=float(rng.uniform(0.5, 2.0)),
        sigma_s_sq=float(rng.uniform(0.5, 2.0)),
        cell_throughput=float(rng.uniform(0.5, 5.0)),
    )
    states = [
        ServiceState(float(rng.uniform(0, 3)), float(rng.uniform(0, 3))) for _ in range(u)
    ]
    n = int(rng.integers(2, u + 1))
    return params, states, n


def pmf_ratio_oracle(params, states, n) -> float:
    lam1 = allocation.lambda_weighted(params, states, n)
    lam2 = allocation.lambda_weighted(params, states, n - 1)
    return float(stats.poisson.pmf(n, lam1) / stats.poisson.pmf(n - 1, lam2))


def check_pmf_ratio(budget: dict) -> tuple[bool, str]:
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for _ in range(budget["pmf_cases"]):
        params, states, n = random_allocation_case(rng)
        got = allocation.conditional_prob(params, states, n)
        want = pmf_ratio_oracle(params, states, n)
        worst = max(worst, abs(got - want) / abs(want))
    return worst <= 1e-12, f"max rel err {worst:.2e} over {budget['pmf_cases']} cases (tol 1e-12)"


@dataclass(frozen=True)
class OptimizerScenario:
    params: AllocationModelParams
    states: tuple[ServiceState, ...]
    new_snr: float
    r_range: tuple[float, float]


def monotone_scenarios(count: int, seed: int = 7) -> list[OptimizerScenario]:
    """Random scenarios whose objective rises in ``r`` over the whole range.

    The cell throughput is scaled so that the rate including the candidate
    stays below the service count at ``r_hi``; below that point the
    candidate's pmf-ratio term is increasing in its rate.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        existing = int(rng.integers(1, 5))
        states = tuple(
            ServiceState(float(rng.uniform(0, 2)), float(rng.uniform(0.2, 2.0)))
            for _ in range(existing)
        )
        new_snr = float(rng.uniform(0.5, 2.0))
        beta = float(rng.uniform(0.05, 0.3))
        r_hi = float(rng.uniform(1.0, 5.0))
        u = existing + 1
        probe = AllocationModelParams(1.0, beta, 1.0, float(rng.uniform(0.5, 2.0)), 1.0)
        lam_at_hi = allocation.lambda_weighted(probe, states + (ServiceState(r_hi, new_snr),), u)
        target = float(rng.uniform(0.2, 0.8)) * u
        params = AllocationModelParams(
            f_d=1.0, beta=beta, delta_t=1.0, sigma_s_sq=probe.sigma_s_sq,
            cell_throughput=lam_at_hi / target,
        )
        out.append(OptimizerScenario(params, states, new_snr, (0.0, r_hi)))
    return out


def dense_grid_oracle(sc: OptimizerScenario, points: int) -> tuple[float, float]:
    """Argmax and max of the objective on a uniform grid, via scipy pmfs."""
    p = sc.params
    r_lo, r_hi = sc.r_range
    grid = np.linspace(r_lo, r_hi, points)
    weights = [
        (i + 1) * math.exp(p.beta * st.resource * st.snr) for i, st in enumerate(sc.states)
    ]
    scale = p.f_d / p.delta_t / p.cell_throughput
    u = len(sc.states) + 1
    lam_fixed = [scale * sum(weights[:n]) for n in range(1, u)]
    value = np.full(points, math.exp(-sc.new_snr / p.sigma_s_sq) / p.sigma_s_sq)
    for n in range(2, u):
        value += stats.poisson.pmf(n, lam_fixed[n - 1]) / stats.poisson.pmf(n - 1, lam_fixed[n - 2])
    lam_last = lam_fixed[-1] + scale * u * np.exp(p.beta * grid * sc.new_snr)
    value += stats.poisson.pmf(u, lam_last) / stats.poisson.pmf(u - 1, lam_fixed[-1])
    k = int(np.argmax(value))
    return float(grid[k]), float(value[k])


def check_optimizer(budget: dict) -> tuple[bool, str]:
    worst_loc = worst_val = 0.0
    for sc in monotone_scenarios(budget["scenarios"]):
        est = allocation.estimate_resource(sc.params, sc.states, sc.new_snr, sc.r_range)
        r_star, f_star = dense_grid_oracle(sc, budget["dense_points"])
        width = sc.r_range[1] - sc.r_range[0]
        worst_loc = max(worst_loc, abs(est.resource - r_star) / width)
        worst_val = max(worst_val, abs(est.objective - f_star))
    ok = worst_loc <= 1e-6 and worst_val <= 1e-9
    return ok, (
        f"{budget['scenarios']} scenarios: max loc err {worst_loc:.1e}*width, "
        f"max value err {worst_val:.1e}"
    )


def check_normalization(budget: dict) -> tuple[bool, str]:
    worst_int = 0.0
    for s2 in (0.5, 1.0, 2.0):
        val, _ = integrate.quad(lambda x: allocation.rayleigh_term(s2, x), 0, np.inf,
                                epsabs=1e-13, epsrel=1e-13)
        worst_int = max(worst_int, abs(val - 1.0))
    worst_sum = 0.0
    for lam in (0.0, 0.1, 0.5, 1.0, 2.5, 5.0, 7.5, 10.0):
        total = math.fsum(allocation.poisson_pmf(lam, n) for n in range(0, 80))
        worst_sum = max(worst_sum, abs(total - 1.0))
    ok = worst_int <= 1e-8 and worst_sum <= 1e-12
    return ok, f"density err {worst_int:.1e}, pmf sum err {worst_sum:.1e}"


# -- capacity / Monte Carlo checks ----------------------------------------


def dominance_grid():
    for a in (0.1, 0.25, 0.5):
        for s2 in (0.0, 0.005, 0.02):
            for c in (0.0, s2 / 2, s2):
                yield capacity_model.BoundParams(
                    a=a, a_prime=2 * a, sigma_a_sq=s2, cov_a=c, g=1.5, r_max=1.0
                )


def _model_for(bp) -> stochastic.FactorModel:
    return stochastic.FactorModel(bp.a_prime, bp.sigma_a_sq, bp.cov_a, round(bp.g / bp.a))


def check_variance_dominance(budget: dict) -> tuple[bool, str]:
    n = budget["mc_samples"]
    worst = -math.inf
    for i, bp in enumerate(dominance_grid()):
        est = stochastic.mc_variance_of_load(_model_for(bp), n, seed=1000 + i)
        bound = capacity_model.variance_bound(bp).total
        worst = max(worst, est.variance - bound - 3 * est.std_error)
    return worst <= 0, f"27 points, n={n}: max(mc - bound - 3se) = {worst:.3g}"


def sla_grid():
    """Points whose mean load u * a_prime lies below 1."""
    for u in (2, 4, 8):
        for load in (0.3, 0.6, 0.9):
            for s2 in (0.0, 0.005, 0.02):
                for c in (0.0, s2 / 2, s2):
                    a_prime = load / u
                    yield u, capacity_model.BoundParams(
                        a=a_prime / 2, a_prime=a_prime, sigma_a_sq=s2, cov_a=c,
                        g=u * a_prime / 2, r_max=1.0,
                    )


def check_sla_consistency(budget: dict) -> tuple[bool, str]:
    n = budget["mc_samples"]
    worst = math.inf
    count = 0
    for i, (u, bp) in enumerate(sla_grid()):
        model = stochastic.FactorModel(bp.a_prime, bp.sigma_a_sq, bp.cov_a, u)
        est = stochastic.mc_sla_probability(model, n, seed=5000 + i)
        bound = capacity_model.sla_lower_bound(bp, model.load_mean)
        worst = min(worst, est.mean - (bound - 3 * est.std_error))
        count += 1
    return worst >= 0, f"{count} points with mean load < 1, n={n}: min margin {worst:.3g}"


def check_limit_conditions(budget: dict) -> tuple[bool, str]:
    g = 1.5
    deep = [0.5 * 2.0**-j for j in range(0, 41)]
    good = capacity_model.limit_conditions(lambda a: (a**3, (2 * a) ** 5, 2 * a), deep, g)
    bad = capacity_model.limit_conditions(lambda a: (0.1, (2 * a) ** 5, 2 * a), deep, g)
    ok = good.verdict and not bad.verdict
    finals = ", ".join(f"{v:.1e}" for v in good.final_values)
    return ok, f"vanishing schedule finals [{finals}]; constant sigma verdict={bad.verdict}"


CHECKS: list[tuple[str, Callable[[dict], tuple[bool, str]]]] = [
    ("chromatic polynomial (complete)", check_chromatic_poly),
    ("greedy optimality on cliques", check_greedy_cliques),
    ("perfectness", check_perfectness),
    ("layered partite count", check_layered_partite),
    ("pmf-ratio identity", check_pmf_ratio),
    ("optimizer vs dense grid", check_optimizer),
    ("normalization", check_normalization),
    ("variance-bound dominance", check_variance_dominance),
    ("SLA bound consistency", check_sla_consistency),
    ("vanishing-variance conditions", check_limit_conditions),
]


def run_checks(budget: str = "small") -> list[CheckResult]:
    cfg = BUDGETS[budget]
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = fn(cfg)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return results
