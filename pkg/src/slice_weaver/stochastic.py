"""Seeded Monte Carlo for the relative load of a category.

Allocations follow a single common factor::

    A_i = a_prime + sqrt(cov_a) * X0 + sqrt(sigma_a_sq - cov_a) * X_i

with independent standard normals, so mean, variance and pairwise
covariance hit the bounded moments exactly.

Replications are generated in fixed blocks of ``BLOCK_SIZE``; block ``b``
draws from ``SeedSequence(seed, spawn_key=(b,))``. Results therefore depend
only on ``(seed, n_samples)``, never on how blocks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InputError, ModelError

BLOCK_SIZE = 8192
SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class FactorModel:
    a_prime: float
    sigma_a_sq: float
    cov_a: float
    u: int

    def __post_init__(self):
        if self.u < 1:
            raise ModelError("u must be a positive integer")
        if self.a_prime < 0:
            raise ModelError("a_prime must be non-negative")
        if self.cov_a < 0:
            raise ModelError("cov_a must be non-negative")
        if self.cov_a > self.sigma_a_sq:
            raise ModelError(
                f"cov_a={self.cov_a} exceeds sigma_a_sq={self.sigma_a_sq}; "
                "single-factor model is not realizable"
            )

    @property
    def load_mean(self) -> float:
        return self.u * self.a_prime

    @property
    def load_variance(self) -> float:
        """Exact V[R] = u sigma^2 + u(u-1) c."""
        return self.u * self.sigma_a_sq + self.u * (self.u - 1) * self.cov_a

    def _scales(self) -> tuple[float, float]:
        return math.sqrt(self.cov_a), math.sqrt(self.sigma_a_sq - self.cov_a)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    variance: float
    std_error: float
    n_samples: int
    seed: int


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise InputError("seed must be an unsigned 64-bit integer")
    return seed


def block_rng(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=(block,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_allocations(model: FactorModel, rng: np.random.Generator) -> list[float]:
    """One replication: the ``u`` relative allocations."""
    z = rng.standard_normal(model.u + 1)
    sc, si = model._scales()
    return [model.a_prime + sc * z[0] + si * z[i] for i in range(1, model.u + 1)]


def sample_allocation_matrix(model: FactorModel, n_samples: int, seed: int) -> np.ndarray:
    """``(n_samples, u)`` array of allocations, blockwise seeded."""
    sc, si = model._scales()
    out = np.empty((n_samples, model.u))
    for start in range(0, n_samples, BLOCK_SIZE):
        m = min(BLOCK_SIZE, n_samples - start)
        z = block_rng(seed, start // BLOCK_SIZE).standard_normal((m, model.u + 1))
        out[start : start + m] = model.a_prime + sc * z[:, :1] + si * z[:, 1:]
    return out


def sample_loads(model: FactorModel, n_samples: int, seed: int) -> np.ndarray:
    """Relative load R for each of ``n_samples`` replications."""
    sc, si = model._scales()
    out = np.empty(n_samples)
    for start in range(0, n_samples, BLOCK_SIZE):
        m = min(BLOCK_SIZE, n_samples - start)
        z = block_rng(seed, start // BLOCK_SIZE).standard_normal((m, model.u + 1))
        out[start : start + m] = kernels.factor_loads(z, model.a_prime, sc, si)
    return out


def _variance_std_error(x: np.ndarray, mean: float, var: float) -> float:
    n = x.shape[0]
    if var == 0.0:
        return 0.0
    m4 = float(np.mean((x - mean) ** 4))
    # Var(s^2) ~ (m4 - (n-3)/(n-1) s^4) / n
    return math.sqrt(max(0.0, m4 - (n - 3) / (n - 1) * var * var) / n)


def mc_variance_of_load(model: FactorModel, n_samples: int, seed: int) -> McEstimate:
    if n_samples < 2:
        raise InputError("n_samples must be at least 2")
    seed = _check_seed(seed)
    loads = sample_loads(model, n_samples, seed)
    mean, var = kernels.shifted_mean_var(loads)
    return McEstimate(
        mean=float(mean),
        variance=float(var),
        std_error=_variance_std_error(loads, mean, var),
        n_samples=n_samples,
        seed=seed,
    )


def mc_sla_probability(model: FactorModel, n_samples: int, seed: int) -> McEstimate:
    """Fraction of replications with R <= 1."""
    if n_samples < 1:
        raise InputError("n_samples must be at least 1")
    seed = _check_seed(seed)
    loads = sample_loads(model, n_samples, seed)
    p = float(np.count_nonzero(loads <= 1.0)) / n_samples
    return McEstimate(
        mean=p,
        variance=p * (1.0 - p),
        std_error=math.sqrt(p * (1.0 - p) / n_samples),
        n_samples=n_samples,
        seed=seed,
    )
