"""Exit criteria. Each test prints one PASS/FAIL line (also collected in the
terminal summary). Oracles here are written independently of the library
paths they check.
"""

import math
import time

import numpy as np
import pytest
from scipy import integrate, stats

from slice_weaver import allocation, capacity_model, graph_core, stochastic
from slice_weaver.allocation import AllocationModelParams, ServiceState
from slice_weaver.capacity_model import BoundParams
from slice_weaver.config import parse_config
from slice_weaver.report import emit_report
from slice_weaver.simulator import run_scenario
from slice_weaver.verify import monotone_scenarios

from oracles import complete_adj, count_colorings_product, path_adj

MC_SAMPLES = 100_000


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def criterion_grid():
    for a in (0.1, 0.25, 0.5):
        for s2 in (0.0, 0.005, 0.02):
            for c in (0.0, s2 / 2, s2):
                yield BoundParams(a=a, a_prime=2 * a, sigma_a_sq=s2, cov_a=c, g=1.5, r_max=1.0)


def test_c01_chromatic_polynomial_vs_enumeration(report_criterion):
    with Timer() as t:
        bad = [
            (u, k)
            for u in range(0, 9)
            for k in range(0, 6)
            if graph_core.chromatic_poly_complete(u, k) != count_colorings_product(complete_adj(u), k)
        ]
    ok = not bad and t.seconds < 10
    report_criterion(1, "chromatic polynomial vs enumeration", ok,
                     f"54 (u,k) pairs, mismatches={bad}, {t.seconds:.2f}s (limit 10s)")
    assert ok


def test_c02_greedy_optimality_on_cliques(report_criterion):
    with Timer() as t:
        rows = []
        for u in range(1, 11):
            g = graph_core.build_dependency_graph(u)
            rows.append((u, graph_core.greedy_color(g).colors_used,
                         graph_core.chromatic_number_brute(g)))
    bad = [r for r in rows if not r[0] == r[1] == r[2]]
    ok = not bad and t.seconds < 30
    report_criterion(2, "greedy optimality on cliques", ok,
                     f"u=1..10, mismatches={bad}, {t.seconds:.2f}s (limit 30s)")
    assert ok


def test_c03_perfectness(report_criterion):
    with Timer() as t:
        cliques = [graph_core.is_perfect_brute(graph_core.build_dependency_graph(u)) for u in range(0, 9)]
        c5 = graph_core.DependencyGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
        c5_perfect = graph_core.is_perfect_brute(c5)
    ok = all(cliques) and not c5_perfect and t.seconds < 20
    report_criterion(3, "perfectness", ok,
                     f"K_0..K_8 perfect={all(cliques)}, C5 perfect={c5_perfect}, "
                     f"{t.seconds:.2f}s (limit 20s)")
    assert ok


def test_c04_layered_partite_count(report_criterion):
    bad = [
        (n, k)
        for n in range(1, 7)
        for k in range(1, 6)
        if graph_core.chromatic_poly_layered_partite(n, k) != count_colorings_product(path_adj(n), k)
    ]
    report_criterion(4, "layered partite count", not bad, f"n<=6, k<=5, mismatches={bad}")
    assert not bad


def test_c05_variance_bound_dominance(report_criterion):
    worst = -math.inf
    with Timer() as t:
        for i, bp in enumerate(criterion_grid()):
            u = round(bp.g / bp.a)
            assert u == pytest.approx(bp.g / bp.a)
            model = stochastic.FactorModel(bp.a_prime, bp.sigma_a_sq, bp.cov_a, u)
            est = stochastic.mc_variance_of_load(model, MC_SAMPLES, seed=31 + i)
            bound = capacity_model.variance_bound(bp).total
            worst = max(worst, est.variance - (bound + 3 * est.std_error))
    ok = worst <= 0 and t.seconds < 60
    report_criterion(5, "variance-bound dominance", ok,
                     f"27 points, n=1e5, max(mc - bound - 3se)={worst:.3g}, "
                     f"{t.seconds:.2f}s (limit 60s)")
    assert ok


def _vanishing(a):
    return a**3, (2 * a) ** 5, 2 * a


def test_c06a_vanishing_variance_schedule(report_criterion):
    grid = [0.5 * 2.0**-j for j in range(10)]
    rep = capacity_model.limit_conditions(_vanishing, grid, g=1.5, eps=1e-3)
    ok = rep.verdict and all(v < 1e-3 for v in rep.final_values)
    finals = ", ".join(f"{v:.3g}" for v in rep.final_values)
    report_criterion(6, "vanishing-variance schedule", ok,
                     f"verdict={rep.verdict}, tail monotone={rep.tail_monotone}, "
                     f"final values [{finals}] (need all < 1e-3)")
    assert ok


def test_c06b_constant_sigma_rejected(report_criterion):
    grid = [0.5 * 2.0**-j for j in range(10)]
    rep = capacity_model.limit_conditions(lambda a: (0.1, (2 * a) ** 5, 2 * a), grid, g=1.5,
                                          eps=1e-3)
    report_criterion(6, "constant sigma rejected", not rep.verdict, f"verdict={rep.verdict}")
    assert not rep.verdict


def _sla_margin(points):
    worst, count = math.inf, 0
    for i, (u, bp) in enumerate(points):
        model = stochastic.FactorModel(bp.a_prime, bp.sigma_a_sq, bp.cov_a, u)
        mean_load = u * bp.a_prime
        est = stochastic.mc_sla_probability(model, MC_SAMPLES, seed=71 + i)
        bound = capacity_model.sla_lower_bound(bp, mean_load)
        worst = min(worst, est.mean - (bound - 3 * est.std_error))
        count += 1
    return worst, count


def test_c07_sla_bound_consistency(report_criterion):
    stated = [
        (round(bp.g / bp.a), bp) for bp in criterion_grid() if round(bp.g / bp.a) * bp.a_prime < 1
    ]
    # On the stated grid u * a' = (g / a) * 2a = 2g = 3 at every point, so the
    # restriction is empty. The companion grid keeps u and the moments but
    # lowers a' so that u * a' < 1.
    companion = []
    for bp in criterion_grid():
        u = round(bp.g / bp.a)
        for load in (0.3, 0.6, 0.9):
            a_prime = load / u
            companion.append((u, BoundParams(a=a_prime / 2, a_prime=a_prime,
                                             sigma_a_sq=bp.sigma_a_sq, cov_a=bp.cov_a,
                                             g=u * a_prime / 2, r_max=1.0)))
    with Timer() as t:
        worst_stated, n_stated = _sla_margin(stated) if stated else (math.inf, 0)
        worst_comp, n_comp = _sla_margin(companion)
    ok = worst_stated >= 0 and worst_comp >= 0
    report_criterion(7, "SLA bound consistency", ok,
                     f"stated grid: {n_stated}/27 points have mean load < 1; "
                     f"companion grid: {n_comp} points, min margin {worst_comp:.3g}, "
                     f"{t.seconds:.2f}s")
    assert ok


def test_c08_conditional_probability_identity(report_criterion):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(1000):
        u = int(rng.integers(2, 7))
        p = AllocationModelParams(
            f_d=float(rng.uniform(0.5, 2)), beta=float(rng.uniform(0, 0.5)),
            delta_t=float(rng.uniform(0.5, 2)), sigma_s_sq=1.0,
            cell_throughput=float(rng.uniform(0.5, 5)),
            index_weighted=bool(rng.integers(0, 2)),
        )
        sts = [ServiceState(float(rng.uniform(0, 3)), float(rng.uniform(0, 3))) for _ in range(u)]
        n = int(rng.integers(2, u + 1))
        idx = np.arange(1, n + 1) if p.index_weighted else np.ones(n)
        w = idx * np.exp(p.beta * np.array([s.resource * s.snr for s in sts[:n]]))
        lam1 = p.f_d / p.delta_t * w.sum() / p.cell_throughput
        lam2 = p.f_d / p.delta_t * w[:-1].sum() / p.cell_throughput
        want = stats.poisson.pmf(n, lam1) / stats.poisson.pmf(n - 1, lam2)
        got = allocation.conditional_prob(p, sts, n)
        worst = max(worst, abs(got - want) / want)
    ok = worst <= 1e-12
    report_criterion(8, "conditional-probability identity", ok,
                     f"1000 cases, max rel err {worst:.2e} (tol 1e-12)")
    assert ok


def dense_argmax(sc, points=100_000):
    p = sc.params
    rs = np.linspace(sc.r_range[0], sc.r_range[1], points)
    u = len(sc.states) + 1
    prefix = [(i + 1) * math.exp(p.beta * s.resource * s.snr) for i, s in enumerate(sc.states)]
    scale = p.f_d / p.delta_t / p.cell_throughput
    lam = [scale * sum(prefix[:n]) for n in range(1, u)]
    score = np.full(points, stats.expon.pdf(sc.new_snr, scale=p.sigma_s_sq))
    for n in range(2, u):
        score += stats.poisson.pmf(n, lam[n - 1]) / stats.poisson.pmf(n - 1, lam[n - 2])
    lam_new = lam[-1] + scale * u * np.exp(p.beta * rs * sc.new_snr)
    score += stats.poisson.pmf(u, lam_new) / stats.poisson.pmf(u - 1, lam[-1])
    k = int(np.argmax(score))
    return float(rs[k]), float(score[k])


def test_c09_optimizer_vs_dense_grid(report_criterion):
    scenarios = monotone_scenarios(20, seed=909)
    assert all(len(sc.states) + 1 <= 5 for sc in scenarios)
    worst_loc = worst_val = 0.0
    with Timer() as t:
        for sc in scenarios:
            est = allocation.estimate_resource(sc.params, sc.states, sc.new_snr, sc.r_range)
            r_star, f_star = dense_argmax(sc)
            width = sc.r_range[1] - sc.r_range[0]
            worst_loc = max(worst_loc, abs(est.resource - r_star) / width)
            worst_val = max(worst_val, abs(est.objective - f_star))
    ok = worst_loc <= 1e-6 and worst_val <= 1e-9 and t.seconds < 60
    report_criterion(9, "optimizer vs dense grid", ok,
                     f"20 scenarios, max loc err {worst_loc:.1e}*width (tol 1e-6), "
                     f"max value err {worst_val:.1e} (tol 1e-9), {t.seconds:.2f}s (limit 60s)")
    assert ok


def test_c10_normalization(report_criterion):
    dens = []
    for s2 in (0.5, 1.0, 2.0):
        val, _ = integrate.quad(lambda x: allocation.rayleigh_term(s2, x), 0, np.inf,
                                epsabs=1e-12, epsrel=1e-12)
        dens.append(abs(val - 1))
    sums = []
    for lam in np.linspace(0, 10, 21):
        sums.append(abs(math.fsum(allocation.poisson_pmf(float(lam), n) for n in range(100)) - 1))
    ok = max(dens) <= 1e-8 and max(sums) <= 1e-12
    report_criterion(10, "normalization", ok,
                     f"density err {max(dens):.1e} (tol 1e-8), pmf sum err {max(sums):.1e} (tol 1e-12)")
    assert ok


BUDGET = """\
category_count = 1
a = 0.25
a_prime = 0.25
g = 1.5
r_max = 100
r_lo = 25
r_hi = 25
""" + "".join(f"arrival = 0, {1 + i / 10}\n" for i in range(6))


def test_c11_end_to_end_determinism(report_criterion, tmp_path):
    rep = run_scenario(parse_config(BUDGET, env={}))
    admitted = sum(r.admitted for r in rep.records)
    emit_report(rep, tmp_path / "one")
    emit_report(run_scenario(parse_config(BUDGET, env={})), tmp_path / "two")
    identical = all(
        (tmp_path / "one" / f).read_bytes() == (tmp_path / "two" / f).read_bytes()
        for f in ("arrivals.csv", "summary.txt")
    )

    stress = parse_config(
        "category_count = 3\na = 0.2\na_prime = 0.3\ng = 1.7\nr_max = inf\n"
        "r_lo = 0\nr_hi = 4\nrandom_arrivals = 60\nseed = 4\n",
        env={},
    )
    srep = run_scenario(stress)
    cap = math.floor(1.7 / 0.2)
    within_cap = all(c.admitted <= cap for c in srep.capacities)
    saturated = all(c.admitted == cap for c in srep.capacities)

    ok = admitted == 4 and rep.total_allocated == 100.0 and identical and within_cap
    report_criterion(11, "end-to-end determinism and constraints", ok,
                     f"budget scenario admitted {admitted}/6 (T={rep.total_allocated:g}), "
                     f"byte-identical={identical}, cap {cap} respected={within_cap} "
                     f"(saturated={saturated})")
    assert ok
