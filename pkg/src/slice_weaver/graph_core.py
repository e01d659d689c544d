"""Service-dependency graphs, greedy coloring and chromatic polynomials.

A service entering a category conditions its throughput/resource estimate
on every service already present, so the dependency graph over ``u``
services is the complete graph ``K_u``. The brute-force oracles here
(clique number, chromatic number, perfectness, coloring counts) back the
structural claims with exhaustive search on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, InputError

MAX_CLIQUE_VERTICES = 16
MAX_CHROMATIC_VERTICES = 10
MAX_PERFECT_VERTICES = 8


@dataclass(frozen=True, eq=False)
class DependencyGraph:
    """Undirected simple graph stored as a read-only boolean adjacency matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=np.bool_, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InputError("adjacency must be a square matrix")
        if not np.array_equal(adj, adj.T):
            raise InputError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise InputError("self-loops are not allowed")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "DependencyGraph":
        if vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        adj = np.zeros((vertex_count, vertex_count), dtype=np.bool_)
        for v, w in edges:
            if not (0 <= v < vertex_count and 0 <= w < vertex_count):
                raise InputError(f"edge ({v}, {w}) out of range")
            if v == w:
                raise InputError(f"self-loop at vertex {v}")
            adj[v, w] = adj[w, v] = True
        return cls(adj)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    def degree(self, v: int) -> int:
        return int(np.count_nonzero(self.adjacency[v]))

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adjacency[v]).tolist()

    def edges(self) -> list[tuple[int, int]]:
        vs, ws = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(vs.tolist(), ws.tolist()))

    def induced(self, vertices: Sequence[int]) -> "DependencyGraph":
        idx = np.asarray(list(vertices), dtype=np.int64)
        return DependencyGraph(self.adjacency[np.ix_(idx, idx)])

    def __eq__(self, other):
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.vertex_count, self.adjacency.tobytes()))

    def __repr__(self):
        return f"DependencyGraph(vertices={self.vertex_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class Coloring:
    """``assignment[v]`` is the color index of vertex ``v``."""

    assignment: tuple[int, ...]

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment))

    def is_proper(self, g: DependencyGraph) -> bool:
        if len(self.assignment) != g.vertex_count:
            return False
        return all(self.assignment[v] != self.assignment[w] for v, w in g.edges())


@dataclass(frozen=True)
class LayeredPartite:
    """Independent layers joined completely to the next layer only."""

    layer_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.layer_sizes)
        if not sizes:
            raise InputError("need at least one layer")
        if any(s <= 0 for s in sizes):
            raise InputError("layer sizes must be positive")
        object.__setattr__(self, "layer_sizes", sizes)

    @property
    def layer_count(self) -> int:
        return len(self.layer_sizes)

    def layers(self) -> list[list[int]]:
        out, start = [], 0
        for size in self.layer_sizes:
            out.append(list(range(start, start + size)))
            start += size
        return out

    def to_graph(self) -> DependencyGraph:
        layers = self.layers()
        n = sum(self.layer_sizes)
        adj = np.zeros((n, n), dtype=np.bool_)
        for left, right in zip(layers, layers[1:]):
            adj[np.ix_(left, right)] = True
            adj[np.ix_(right, left)] = True
        return DependencyGraph(adj)


def build_dependency_graph(u: int) -> DependencyGraph:
    """Service ``n`` depends on every earlier service, which gives ``K_u``."""
    if u < 0:
        raise InputError("service count must be non-negative")
    adj = np.ones((u, u), dtype=np.bool_)
    np.fill_diagonal(adj, False)
    return DependencyGraph(adj)


def _check_vertices(g: DependencyGraph, vertices: Iterable[int]) -> list[int]:
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} out of range for {g.vertex_count} vertices")
    return vs


def is_maximal_clique(g: DependencyGraph, vertices: Iterable[int]) -> bool:
    vs = _check_vertices(g, vertices)
    adj = g.adjacency
    if any(not adj[v, w] for v, w in combinations(vs, 2)):
        return False
    members = set(vs)
    for x in range(g.vertex_count):
        if x not in members and all(adj[x, v] for v in vs):
            return False
    return True


def max_clique_size_brute(g: DependencyGraph) -> int:
    """Clique number by enumerating every vertex subset."""
    if g.vertex_count > MAX_CLIQUE_VERTICES:
        raise CapacityError(
            f"clique enumeration limited to {MAX_CLIQUE_VERTICES} vertices, got {g.vertex_count}"
        )
    return int(kernels.max_clique_size(g.adjacency))


def degree_ordering(g: DependencyGraph) -> list[int]:
    """Vertices by non-increasing degree, ties by ascending index."""
    return sorted(range(g.vertex_count), key=lambda v: (-g.degree(v), v))


def greedy_color(g: DependencyGraph) -> Coloring:
    assignment = [-1] * g.vertex_count
    for v in degree_ordering(g):
        taken = {assignment[w] for w in g.neighbors(v) if assignment[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        assignment[v] = c
    return Coloring(tuple(assignment))


def earlier_neighbors(g: DependencyGraph, ordering: Sequence[int], position: int) -> int:
    """Neighbors of ``ordering[position]`` that appear before it in ``ordering``."""
    if not 0 <= position < len(ordering):
        raise InputError(f"position {position} out of range for ordering of length {len(ordering)}")
    _check_vertices(g, ordering)
    v = ordering[position]
    return sum(1 for w in ordering[:position] if g.adjacency[v, w])


def chromatic_number_brute(g: DependencyGraph) -> int:
    if g.vertex_count > MAX_CHROMATIC_VERTICES:
        raise CapacityError(
            f"chromatic search limited to {MAX_CHROMATIC_VERTICES} vertices, got {g.vertex_count}"
        )
    if g.vertex_count == 0:
        return 0
    k = 1
    while not kernels.is_colorable(g.adjacency, k):
        k += 1
    return k


def is_perfect_brute(g: DependencyGraph) -> bool:
    """Check chromatic number == clique number on every induced subgraph."""
    n = g.vertex_count
    if n > MAX_PERFECT_VERTICES:
        raise CapacityError(
            f"perfectness check limited to {MAX_PERFECT_VERTICES} vertices, got {n}"
        )
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            h = g.induced(subset)
            if chromatic_number_brute(h) != max_clique_size_brute(h):
                return False
    return True


def count_proper_colorings(g: DependencyGraph, k: int) -> int:
    """Exhaustive count of proper colorings using at most ``k`` colors."""
    if k < 0:
        raise InputError("color count must be non-negative")
    if g.vertex_count > MAX_CHROMATIC_VERTICES:
        raise CapacityError(
            f"coloring enumeration limited to {MAX_CHROMATIC_VERTICES} vertices, got {g.vertex_count}"
        )
    return int(kernels.count_colorings(g.adjacency, k))


def chromatic_poly_complete(u: int, k: int) -> int:
    """Falling factorial k(k-1)...(k-u+1); 0 once a factor reaches zero."""
    if u < 0 or k < 0:
        raise InputError("u and k must be non-negative")
    result = 1
    for n in range(1, u + 1):
        factor = k - n + 1
        if factor <= 0:
            return 0
        result *= factor
    return result


def chromatic_poly_layered_partite(n: int, k: int) -> int:
    """Block colorings of ``n`` layers where consecutive layers differ: k(k-1)^(n-1)."""
    if n < 1:
        raise InputError("layer count must be at least 1")
    if k < 1:
        raise InputError("color count must be at least 1")
    return k * (k - 1) ** (n - 1)
