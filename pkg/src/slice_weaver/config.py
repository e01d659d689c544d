"""Flat ``key = value`` scenario files.

Example::

    # one category, two services
    category_count = 1
    g = 1.5
    a = 0.25
    r_max = 100
    arrival = 0, 3.5
    arrival = 0, 1.2

``arrival`` may repeat and keeps file order; every other key may appear
once. ``random_arrivals = N`` appends N seeded arrivals (uniform category,
exponential SNR with mean ``sigma_s_sq``) after the explicit ones.
"""

from __future__ import annotations

import math
import os
from typing import Callable, Mapping

from .allocation import AllocationModelParams
from .capacity_model import BoundParams
from .errors import ParseError, ValidationError
from .simulator import Arrival, ScenarioConfig, exponential_arrivals
from .stochastic import SEED_MAX

SEED_ENV = "SLICE_WEAVER_SEED"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _float(text: str) -> float:
    value = float(text)
    if math.isnan(value):
        raise ValueError("nan is not allowed")
    return value


def _int(text: str) -> int:
    return int(text, 10)


def _bool(text: str) -> bool:
    low = text.lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _seed(text: str) -> int:
    value = int(text, 10)
    if not 0 <= value <= SEED_MAX:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return value


# key -> (converter, default); None default means "absent unless given"
SCALAR_KEYS: dict[str, tuple[Callable[[str], object], object]] = {
    "category_count": (_int, None),
    "a": (_float, 0.1),
    "a_prime": (_float, 0.2),
    "sigma_a_sq": (_float, 0.005),
    "cov_a": (_float, 0.001),
    "g": (_float, 1.5),
    "r_max": (_float, 100.0),
    "f_d": (_float, 1.0),
    "beta": (_float, 0.1),
    "delta_t": (_float, 1.0),
    "sigma_s_sq": (_float, 1.0),
    "cell_throughput": (_float, 10.0),
    "index_weighted": (_bool, True),
    "quarter_cov": (_bool, False),
    "r_lo": (_float, 0.0),
    "r_hi": (_float, 10.0),
    "seed": (_seed, None),
    "mean_load": (_float, None),
    "mc_samples": (_int, 0),
    "random_arrivals": (_int, 0),
}


def _parse_arrival(text: str, line: int) -> Arrival:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"arrival needs 'category, snr', got {text!r}", line)
    try:
        return Arrival(_int(parts[0]), _float(parts[1]))
    except ValueError as exc:
        raise ParseError(f"bad arrival {text!r}: {exc}", line) from None


def resolve_seed(
    config_seed: int | None, override: int | None, env: Mapping[str, str] | None = None
) -> int:
    """CLI override, then the config file, then ``SLICE_WEAVER_SEED``, then 0."""
    if override is not None:
        return _seed(str(override))
    if config_seed is not None:
        return config_seed
    env = os.environ if env is None else env
    raw = env.get(SEED_ENV)
    if raw is not None and raw.strip():
        try:
            return _seed(raw.strip())
        except ValueError as exc:
            raise ValidationError("seed", f"{SEED_ENV}: {exc}") from None
    return 0


def parse_config(
    text: str, seed_override: int | None = None, env: Mapping[str, str] | None = None
) -> ScenarioConfig:
    values: dict[str, object] = {}
    seen_at: dict[str, int] = {}
    arrivals: list[Arrival] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if not key or not value:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key == "arrival":
            arrivals.append(_parse_arrival(value, lineno))
            continue
        if key not in SCALAR_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in seen_at:
            raise ParseError(
                f"duplicate key {key!r} (first set on line {seen_at[key]}, again on line {lineno})",
                lineno,
            )
        convert = SCALAR_KEYS[key][0]
        try:
            values[key] = convert(value)
        except ValueError as exc:
            raise ParseError(f"bad value for {key!r}: {exc}", lineno) from None
        seen_at[key] = lineno

    merged = {k: values.get(k, default) for k, (_, default) in SCALAR_KEYS.items()}
    if merged["category_count"] is None:
        raise ValidationError("category_count", "is required")
    if merged["random_arrivals"] < 0:
        raise ValidationError("random_arrivals", "must be non-negative")

    seed = resolve_seed(merged["seed"], seed_override, env)
    bound = BoundParams(
        a=merged["a"],
        a_prime=merged["a_prime"],
        sigma_a_sq=merged["sigma_a_sq"],
        cov_a=merged["cov_a"],
        g=merged["g"],
        r_max=merged["r_max"],
    )
    alloc = AllocationModelParams(
        f_d=merged["f_d"],
        beta=merged["beta"],
        delta_t=merged["delta_t"],
        sigma_s_sq=merged["sigma_s_sq"],
        cell_throughput=merged["cell_throughput"],
        index_weighted=merged["index_weighted"],
    )
    if merged["random_arrivals"]:
        if merged["category_count"] < 1:
            raise ValidationError("category_count", "must be a positive integer")
        arrivals += exponential_arrivals(
            merged["random_arrivals"], merged["category_count"], merged["sigma_s_sq"], seed
        )
    config = ScenarioConfig(
        category_count=merged["category_count"],
        arrivals=tuple(arrivals),
        bound_params=bound,
        allocation_params=alloc,
        r_range=(merged["r_lo"], merged["r_hi"]),
        seed=seed,
        mean_load=merged["mean_load"],
        quarter_cov=merged["quarter_cov"],
        mc_samples=merged["mc_samples"],
    )
    return config.validate()


def load_config(path, seed_override: int | None = None) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), seed_override)
