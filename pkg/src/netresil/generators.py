"""Topology sources: seeded random generators and GraphML ingestion."""

from __future__ import annotations

import logging
import warnings
from pathlib import Path

import networkx as nx
import numpy as np

from .graph import Topology, edge_key

logger = logging.getLogger(__name__)


def generate_er(n: int, p: float, seed: int = 0) -> Topology:
    """Random graph where each of the ``n*(n-1)/2`` possible edges exists
    independently with probability ``p``."""
    if n < 2:
        raise ValueError("need at least two nodes")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = rng.random(len(pairs)) < p
    return Topology.from_edges(range(n), (e for e, k in zip(pairs, keep) if k))


def generate_ba(n: int, m: int, seed: int = 0) -> Topology:
    """Hub-forming growth model: start from a clique on ``m + 1`` nodes,
    then attach each new node to the ``m`` highest-degree existing nodes
    (degree ties broken by a seeded shuffle). Produces exactly
    ``(m+1)m/2 + (n-m-1)m`` edges.
    """
    if m < 1:
        raise ValueError("attachment count must be at least 1")
    if n <= m:
        raise ValueError("need more nodes than the attachment count")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = [
        (i, j) for i in range(m + 1) for j in range(i + 1, m + 1)
    ]
    degree = {v: m for v in range(m + 1)}
    for new in range(m + 1, n):
        tiebreak = rng.permutation(new)
        order = sorted(range(new), key=lambda v: (-degree[v], tiebreak[v]))
        for target in order[:m]:
            edges.append((target, new))
            degree[target] += 1
        degree[new] = m
    return Topology.from_edges(range(n), edges)


def generate_ba_classic(n: int, m: int, seed: int = 0) -> Topology:
    """Classic preferential-attachment variant (probability proportional to
    degree rather than a deterministic top-degree choice)."""
    if m < 1:
        raise ValueError("attachment count must be at least 1")
    if n <= m:
        raise ValueError("need more nodes than the attachment count")
    g = nx.barabasi_albert_graph(n, m, seed=int(seed))
    return Topology.from_edges(g.nodes(), g.edges())


def load_graphml(path: str | Path) -> Topology:
    """Read a GraphML file as an undirected simple topology.

    Node ids are mapped to consecutive integers in sorted-id order.
    Self-loops are dropped and parallel (or anti-parallel) edges collapsed,
    each with a warning. Missing files raise ``FileNotFoundError``;
    malformed XML raises ``ValueError`` carrying the parser diagnostic.
    """
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such GraphML file: {p}")
    try:
        g = nx.read_graphml(p)
    except Exception as exc:
        raise ValueError(f"cannot parse GraphML file {p}: {exc}") from exc
    mapping = {raw: idx for idx, raw in enumerate(sorted(g.nodes(), key=str))}
    self_loops = 0
    collapsed = 0
    edges: set[tuple[int, int]] = set()
    for u, v in g.edges():
        if u == v:
            self_loops += 1
            continue
        key = edge_key(mapping[u], mapping[v])
        if key in edges:
            collapsed += 1
        else:
            edges.add(key)
    if self_loops:
        warnings.warn(f"dropped {self_loops} self-loop(s) while reading {p.name}")
    if collapsed:
        warnings.warn(f"collapsed {collapsed} parallel edge(s) while reading {p.name}")
    logger.info("loaded %s: %d nodes, %d edges", p.name, len(mapping), len(edges))
    return Topology.from_edges(mapping.values(), edges)
