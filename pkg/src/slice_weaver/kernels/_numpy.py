"""Pure-numpy kernels. Same signatures and semantics as the numba versions."""

import numpy as np


def count_colorings(adj: np.ndarray, k: int) -> int:
    """Count proper k-colorings by extending a frontier of partial colorings.

    Every proper partial coloring of vertices 0..v-1 is kept, so the final
    frontier is the full list of proper colorings. Fine for the small graphs
    the oracles use; memory grows with the number of colorings.
    """
    n = adj.shape[0]
    if n == 0:
        return 1
    if k <= 0:
        return 0
    palette = np.arange(k)
    frontier = np.zeros((1, 0), dtype=np.int64)
    for v in range(n):
        nb = np.flatnonzero(adj[v, :v])
        conflict = (frontier[:, nb][:, :, None] == palette[None, None, :]).any(axis=1)
        rows, cols = np.nonzero(~conflict)
        if rows.size == 0:
            return 0
        frontier = np.column_stack([frontier[rows], cols])
    return int(frontier.shape[0])


def is_colorable(adj: np.ndarray, k: int) -> bool:
    """True if a proper coloring with at most k colors exists.

    Colors are introduced in canonical order (vertex v may use at most one
    color beyond those already used by 0..v-1), which removes palette
    permutations from the frontier.
    """
    n = adj.shape[0]
    if n == 0:
        return True
    if k <= 0:
        return False
    palette = np.arange(k)
    frontier = np.zeros((1, 1), dtype=np.int64)
    for v in range(1, n):
        nb = np.flatnonzero(adj[v, :v])
        conflict = (frontier[:, nb][:, :, None] == palette[None, None, :]).any(axis=1)
        limit = frontier.max(axis=1) + 1
        conflict |= palette[None, :] > limit[:, None]
        rows, cols = np.nonzero(~conflict)
        if rows.size == 0:
            return False
        frontier = np.column_stack([frontier[rows], cols])
    return True


def max_clique_size(adj: np.ndarray) -> int:
    n = adj.shape[0]
    if n == 0:
        return 0
    bits = np.int64(1) << np.arange(n, dtype=np.int64)
    nbr = (adj.astype(np.int64) * bits[None, :]).sum(axis=1)
    masks = np.arange(1, 1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    size = np.zeros(masks.shape, dtype=np.int64)
    for v in range(n):
        has = (masks >> v) & 1
        size += has
        allowed = nbr[v] | bits[v]
        ok &= (has == 0) | ((masks & ~allowed) == 0)
    return int(size[ok].max())


def factor_loads(z: np.ndarray, a_prime: float, sqrt_cov: float, sqrt_idio: float) -> np.ndarray:
    """Row sums R = sum_i (a' + sqrt(c) z0 + sqrt(s2 - c) z_i) for z of shape (n, u + 1)."""
    alloc = a_prime + sqrt_cov * z[:, :1] + sqrt_idio * z[:, 1:]
    return np.cumsum(alloc, axis=1)[:, -1]


def shifted_mean_var(x: np.ndarray) -> tuple[float, float]:
    """Mean and unbiased variance, accumulated in index order around x[0]."""
    n = x.shape[0]
    d = x - x[0]
    dm = np.cumsum(d)[-1] / n
    dev = d - dm
    var = np.cumsum(dev * dev)[-1] / (n - 1) if n > 1 else 0.0
    return float(x[0] + dm), float(var)


def objective_batch(
    r: np.ndarray,
    s: np.ndarray,
    scale: float,
    beta: float,
    weighted: bool,
    rayleigh: float,
) -> np.ndarray:
    """Total-probability objective for each row of (r, s), shape (m, U)."""
    m, u = r.shape
    idx = np.arange(1, u + 1, dtype=np.float64) if weighted else np.ones(u)
    w = idx[None, :] * np.exp(beta * r * s)
    lam = scale * np.cumsum(w, axis=1)
    out = np.full(m, rayleigh)
    for n in range(2, u + 1):
        lam1 = lam[:, n - 1]
        lam2 = lam[:, n - 2]
        out = out + np.exp(
            -scale * w[:, n - 1] + n * np.log(lam1) - (n - 1) * np.log(lam2) - np.log(n)
        )
    return out
