"""Immutable topology representation and pure structural metrics.

Everything in this module is a function of a :class:`Topology` value. The
expensive metrics (betweenness, Laplacian spectrum, component partition) are
memoised on the topology so that scenario steps which do not change the graph
never pay for recomputation.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical key for an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Topology:
    """Undirected simple graph over integer node ids.

    Instances are immutable and hashable; build them through
    :meth:`from_edges`, which canonicalises edge keys and validates that
    there are no self-loops and no dangling endpoints.
    """

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(
        cls, nodes: Iterable[int], edges: Iterable[tuple[int, int]] = ()
    ) -> "Topology":
        node_tuple = tuple(sorted({int(v) for v in nodes}))
        node_set = set(node_tuple)
        canonical: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u} is not allowed")
            if u not in node_set or v not in node_set:
                raise ValueError(f"edge ({u}, {v}) references an unknown node")
            canonical.add(edge_key(u, v))
        return cls(nodes=node_tuple, edges=frozenset(canonical))

    @cached_property
    def adjacency(self) -> Mapping[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(ns) for v, ns in self.adjacency.items()}

    def has_node(self, v: int) -> bool:
        return v in self.adjacency

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)


class UnionFind:
    """Disjoint-set forest with path compression and union by size."""

    def __init__(self, items: Iterable[int]):
        self._parent = {x: x for x in items}
        self._size = {x: 1 for x in self._parent}

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components in deterministic order.

    ``components`` are sorted internally and ordered by their smallest
    member; ``component_of`` maps every node to its component index.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: Mapping[int, int]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def largest_size(self) -> int:
        return max(self.sizes, default=0)


@lru_cache(maxsize=256)
def connected_components(topo: Topology) -> ComponentPartition:
    """Partition the nodes of ``topo`` into connected components."""
    uf = UnionFind(topo.nodes)
    for u, v in topo.edges:
        uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in topo.nodes:
        groups.setdefault(uf.find(v), []).append(v)
    components = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0])
    component_of = {v: i for i, comp in enumerate(components) for v in comp}
    return ComponentPartition(components=tuple(components), component_of=component_of)


def flow_robustness(topo: Topology, total_nodes: int | None = None) -> float:
    """Fraction of ordered node pairs that can still reach each other.

    ``total_nodes`` overrides the pair-count denominator; by default it is
    the node count of ``topo`` itself. Passing the original node count of a
    partially destroyed network scores missing nodes as unreachable instead
    of ignoring them.
    """
    n = topo.n if total_nodes is None else int(total_nodes)
    if n < 2:
        raise ValueError("flow robustness needs at least two nodes")
    part = connected_components(topo)
    reachable = sum(s * (s - 1) for s in part.sizes)
    return reachable / (n * (n - 1))


def laplacian_matrix(topo: Topology) -> np.ndarray:
    """Dense combinatorial Laplacian (degree matrix minus adjacency)."""
    index = {v: i for i, v in enumerate(topo.nodes)}
    lap = np.zeros((topo.n, topo.n), dtype=float)
    for u, v in topo.edges:
        iu, iv = index[u], index[v]
        lap[iu, iu] += 1.0
        lap[iv, iv] += 1.0
        lap[iu, iv] -= 1.0
        lap[iv, iu] -= 1.0
    return lap


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending Laplacian eigenvalues plus the threshold below which an
    eigenvalue is treated as numerically zero."""

    eigenvalues: tuple[float, ...]
    zero_tolerance: float

    def nonzero(self) -> list[float]:
        return [lam for lam in self.eigenvalues if lam > self.zero_tolerance]


@lru_cache(maxsize=256)
def laplacian_spectrum(topo: Topology) -> SpectrumResult:
    if topo.n == 0:
        return SpectrumResult(eigenvalues=(), zero_tolerance=1e-9)
    eig = np.sort(np.linalg.eigvalsh(laplacian_matrix(topo)))
    tol = 1e-9 * max(1.0, float(eig[-1]))
    return SpectrumResult(eigenvalues=tuple(float(x) for x in eig), zero_tolerance=tol)


def effective_graph_resistance(spectrum: SpectrumResult, n: int) -> float:
    """Normalised effective resistance score ``(n-1) / (n * sum(1/lambda))``.

    The sum runs over the non-zero Laplacian eigenvalues. A graph with no
    edges has no non-zero eigenvalues and scores 0 by convention. ``n`` is
    passed explicitly so a caller can score a damaged network against its
    original size (extra destroyed nodes only contribute zero eigenvalues,
    which never enter the sum).
    """
    nonzero = spectrum.nonzero()
    if not nonzero:
        return 0.0
    return (n - 1) / (n * sum(1.0 / lam for lam in nonzero))


@lru_cache(maxsize=128)
def betweenness_raw(topo: Topology) -> tuple[Mapping[int, float], Mapping[tuple[int, int], float]]:
    """Raw shortest-path betweenness for nodes and edges in one pass.

    Values are unordered-pair counts: for each node, the number of shortest
    paths through it (endpoints excluded, pair-fractional for ties); for
    each edge, the number of shortest paths using it. Callers must not
    mutate the returned mappings, they are shared through the cache.
    """
    order_nodes = topo.nodes
    index = {v: i for i, v in enumerate(order_nodes)}
    n = topo.n
    adj = [[index[w] for w in topo.adjacency[v]] for v in order_nodes]
    node_acc = [0.0] * n
    edge_acc: dict[tuple[int, int], float] = {}
    for u, v in topo.edges:
        iu, iv = index[u], index[v]
        edge_acc[(iu, iv) if iu < iv else (iv, iu)] = 0.0

    for s in range(n):
        if not adj[s]:
            continue
        dist = [-1] * n
        sigma = [0.0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1.0
        order: list[int] = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v] + 1
            sv = sigma[v]
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sv
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                contribution = sigma[v] * coeff
                key = (v, w) if v < w else (w, v)
                edge_acc[key] += contribution
                delta[v] += contribution
            if w != s:
                node_acc[w] += delta[w]

    # each unordered pair was visited from both endpoints
    node_map = {order_nodes[i]: node_acc[i] / 2.0 for i in range(n)}
    edge_map = {
        edge_key(order_nodes[a], order_nodes[b]): val / 2.0
        for (a, b), val in edge_acc.items()
    }
    return node_map, edge_map


def node_betweenness(topo: Topology) -> dict[int, float]:
    """Betweenness centrality of every node, normalised by the number of
    node pairs excluding the node itself, ``(n-1)(n-2)/2``. Graphs with
    fewer than three nodes have no interior pairs and score all zeros."""
    if topo.n < 3:
        return {v: 0.0 for v in topo.nodes}
    raw, _ = betweenness_raw(topo)
    denom = (topo.n - 1) * (topo.n - 2) / 2.0
    return {v: x / denom for v, x in raw.items()}


def edge_betweenness(topo: Topology) -> dict[tuple[int, int], float]:
    """Betweenness centrality of every edge, normalised by the total number
    of node pairs ``n(n-1)/2``."""
    if topo.m == 0:
        return {}
    _, raw = betweenness_raw(topo)
    denom = topo.n * (topo.n - 1) / 2.0
    return {e: x / denom for e, x in raw.items()}


def structure_entropy(topo: Topology) -> float:
    """Shannon entropy of the degree-share distribution.

    Each node contributes its degree divided by the total degree; nodes of
    degree zero carry no probability mass and are skipped. An edgeless
    graph has no distribution to measure and raises ``ValueError``.
    """
    degs = [len(topo.adjacency[v]) for v in topo.nodes]
    total = sum(degs)
    if total == 0:
        raise ValueError("structure entropy is undefined for an edgeless graph")
    h = 0.0
    for d in degs:
        if d:
            share = d / total
            h -= share * math.log(share)
    return h
