import math

import numpy as np
from numba import njit


@njit(cache=True)
def count_colorings(adj, k):
    n = adj.shape[0]
    if n == 0:
        return 1
    if k <= 0:
        return 0
    colors = np.full(n, -1, dtype=np.int64)
    count = 0
    v = 0
    while v >= 0:
        c = colors[v] + 1
        while c < k:
            ok = True
            for w in range(v):
                if adj[v, w] and colors[w] == c:
                    ok = False
                    break
            if ok:
                break
            c += 1
        if c < k:
            colors[v] = c
            if v == n - 1:
                count += 1
            else:
                v += 1
        else:
            colors[v] = -1
            v -= 1
    return count


@njit(cache=True)
def is_colorable(adj, k):
    n = adj.shape[0]
    if n == 0:
        return True
    if k <= 0:
        return False
    colors = np.full(n, -1, dtype=np.int64)
    colors[0] = 0
    if n == 1:
        return True
    v = 1
    while v >= 1:
        used = -1
        for w in range(v):
            if colors[w] > used:
                used = colors[w]
        limit = min(k, used + 2)
        c = colors[v] + 1
        while c < limit:
            ok = True
            for w in range(v):
                if adj[v, w] and colors[w] == c:
                    ok = False
                    break
            if ok:
                break
            c += 1
        if c < limit:
            colors[v] = c
            if v == n - 1:
                return True
            v += 1
        else:
            colors[v] = -1
            v -= 1
    return False


@njit(cache=True)
def max_clique_size(adj):
    n = adj.shape[0]
    if n == 0:
        return 0
    nbr = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for w in range(n):
            if adj[v, w]:
                nbr[v] |= np.int64(1) << w
    best = 0
    for mask in range(1, 1 << n):
        size = 0
        ok = True
        for v in range(n):
            if (mask >> v) & 1:
                size += 1
                allowed = nbr[v] | (np.int64(1) << v)
                if mask & ~allowed:
                    ok = False
                    break
        if ok and size > best:
            best = size
    return best


@njit(cache=True)
def factor_loads(z, a_prime, sqrt_cov, sqrt_idio):
    n, cols = z.shape
    out = np.empty(n)
    for row in range(n):
        common = sqrt_cov * z[row, 0]
        total = 0.0
        for i in range(1, cols):
            total += a_prime + common + sqrt_idio * z[row, i]
        out[row] = total
    return out


@njit(cache=True)
def shifted_mean_var(x):
    n = x.shape[0]
    x0 = x[0]
    acc = 0.0
    for i in range(n):
        acc += x[i] - x0
    dm = acc / n
    ss = 0.0
    for i in range(n):
        dev = (x[i] - x0) - dm
        ss += dev * dev
    var = ss / (n - 1) if n > 1 else 0.0
    return x0 + dm, var


@njit(cache=True)
def objective_batch(r, s, scale, beta, weighted, rayleigh):
    m, u = r.shape
    out = np.empty(m)
    w = np.empty(u)
    lam = np.empty(u)
    for row in range(m):
        acc = 0.0
        for i in range(u):
            weight = (i + 1.0) if weighted else 1.0
            w[i] = weight * math.exp(beta * r[row, i] * s[row, i])
            acc += w[i]
            lam[i] = scale * acc
        total = rayleigh
        for n in range(2, u + 1):
            total += math.exp(
                -scale * w[n - 1]
                + n * math.log(lam[n - 1])
                - (n - 1) * math.log(lam[n - 2])
                - math.log(n)
            )
        out[row] = total
    return out
