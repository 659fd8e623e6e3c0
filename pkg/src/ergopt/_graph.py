"""Weighted-digraph internals: maximum cycle mean and critical subgraphs.

Weights may be Fractions (exact) or floats.  Edges are a mapping
(u, v) -> weight; parallel edges never occur in the word graphs built by
the optimizer.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterable, Mapping

import networkx as nx

Node = Hashable
Edge = tuple[Node, Node]


def _digraph(nodes: Iterable[Node], edges: Iterable[Edge]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    return g


def strongly_connected_components(nodes: Iterable[Node], edges: Iterable[Edge]) -> list[set[Node]]:
    return [set(c) for c in nx.strongly_connected_components(_digraph(nodes, edges))]


def max_cycle_mean(nodes: list[Node], edges: Mapping[Edge, Fraction | float]):
    """Karp's maximum cycle mean, run per strongly connected component.

    Returns None when the graph has no cycle.  Exact when weights are
    rational.
    """
    best = None
    for comp in strongly_connected_components(nodes, edges):
        internal = {(u, v): w for (u, v), w in edges.items() if u in comp and v in comp}
        if not internal:
            continue
        mean = _karp_scc(sorted(comp, key=repr), internal)
        if mean is not None and (best is None or mean > best):
            best = mean
    return best


def _karp_scc(comp: list[Node], edges: Mapping[Edge, Fraction | float]):
    n = len(comp)
    source = comp[0]
    preds: dict[Node, list[tuple[Node, Fraction | float]]] = {v: [] for v in comp}
    for (u, v), w in edges.items():
        preds[v].append((u, w))
    # D[k][v] = max weight of a k-edge walk source -> v, None meaning -inf
    D: list[dict[Node, Fraction | float | None]] = [{v: None for v in comp} for _ in range(n + 1)]
    D[0][source] = 0 if isinstance(next(iter(edges.values())), Rational) else 0.0
    for k in range(1, n + 1):
        row = D[k]
        prev = D[k - 1]
        for v in comp:
            cand = None
            for u, w in preds[v]:
                if prev[u] is None:
                    continue
                val = prev[u] + w
                if cand is None or val > cand:
                    cand = val
            row[v] = cand
    best = None
    for v in comp:
        if D[n][v] is None:
            continue
        inner = None
        for k in range(n):
            if D[k][v] is None:
                continue
            val = (D[n][v] - D[k][v]) / (n - k)
            if inner is None or val < inner:
                inner = val
        if inner is not None and (best is None or inner > best):
            best = inner
    return best


def critical_subgraph(
    nodes: list[Node],
    edges: Mapping[Edge, Fraction | float],
    beta: Fraction | float,
    tol: Fraction | float = 0,
) -> set[Edge]:
    """Edges lying on some cycle of mean exactly beta.

    Subtract beta, compute node potentials as maximal reduced walk weights
    (all reduced cycle weights are <= 0, so |nodes| Bellman passes reach the
    fixed point), keep tight edges, then keep only edges inside a strongly
    connected component of the tight graph.
    """
    reduced = {e: w - beta for e, w in edges.items()}
    zero = beta - beta  # 0 of the right numeric type
    phi: dict[Node, Fraction | float] = {v: zero for v in nodes}
    for _ in range(len(nodes)):
        changed = False
        for (u, v), w in reduced.items():
            val = phi[u] + w
            if val > phi[v]:
                phi[v] = val
                changed = True
        if not changed:
            break
    tight = {(u, v) for (u, v), w in reduced.items() if abs(phi[u] + w - phi[v]) <= tol}
    comp_of: dict[Node, int] = {}
    for i, comp in enumerate(strongly_connected_components(nodes, tight)):
        for v in comp:
            comp_of[v] = i
    # an edge inside one strongly connected component of the tight graph
    # always lies on a tight cycle; any other tight edge is transient
    return {(u, v) for (u, v) in tight if comp_of[u] == comp_of[v]}


def simple_cycles(nodes: Iterable[Node], edges: Iterable[Edge]) -> list[list[Node]]:
    """Simple cycles as node lists (first node not repeated at the end)."""
    return [list(c) for c in nx.simple_cycles(_digraph(nodes, edges))]
