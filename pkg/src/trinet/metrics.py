"""Graph metrics: normalized betweenness, centralization, density,
components, and connector (bridging) analysis.

Betweenness is computed on the binarized simple graph; edge weights are
kept for reporting only. Values are normalized into [0, 1]: a node on
every shortest path between all other pairs scores 1, and a star center
yields group centralization exactly 1. Accumulation is sequential in
sorted node order, so results are bit-identical across runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .netbuild import Network


def betweenness(net: Network) -> dict[str, float]:
    """Normalized betweenness for every node, in [0, 1].

    Brandes single-source accumulation with shortest-path multiplicity
    fractions; divisor (n-1)(n-2)/2 over unordered pairs with n the
    total node count, isolated nodes included. Graphs with n < 3 score
    all zeros; disconnected pairs contribute nothing.
    """
    nodes = sorted(net.nodes)
    n = len(nodes)
    if n < 3:
        return {v: 0.0 for v in nodes}
    adj = {v: sorted(nbrs) for v, nbrs in net.adjacency().items()}
    raw = {v: 0.0 for v in nodes}
    for s in nodes:
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in nodes}
        sigma = {v: 0 for v in nodes}
        dist = {v: -1 for v in nodes}
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != s:
                raw[w] += delta[w]
    # raw counts ordered pairs; (n-1)(n-2) == 2 * (n-1)(n-2)/2
    scale = (n - 1) * (n - 2)
    return {v: raw[v] / scale for v in nodes}


def centralization(values: dict[str, float]) -> float:
    """Freeman-style group centralization over normalized betweenness.

    sum(b_max - b_i) / (n - 1); 0 for n <= 1 or all-equal values. The
    star attains exactly 1.0.
    """
    n = len(values)
    if n <= 1:
        return 0.0
    b_max = max(values.values())
    total = sum(b_max - v for v in values.values())
    return total / (n - 1)


def density(net: Network) -> float:
    n = len(net.nodes)
    if n < 2:
        return 0.0
    return 2.0 * len(net.edges) / (n * (n - 1))


def components(net: Network) -> list[set[str]]:
    """Connected components, largest first; ties by smallest member id."""
    adj = net.adjacency()
    seen: set[str] = set()
    comps: list[set[str]] = []
    for start in sorted(net.nodes):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


@dataclass(frozen=True)
class ConnectorReport:
    """Who depends on a focal node for their link to its component.

    dependents are the members of the focal node's component that end up
    outside the largest remaining fragment once the focal node and its
    edges are deleted. Ties for largest fragment go to the fragment
    containing the smallest node id. Component sizes cover the whole
    network, largest first.
    """

    focal: str
    dependents: frozenset[str]
    component_sizes_before: tuple[int, ...]
    component_sizes_after: tuple[int, ...]


def connector_report(net: Network, focal: str) -> ConnectorReport:
    if focal not in net.nodes:
        raise ValueError(f"unknown focal node: {focal!r}")
    before = components(net)
    focal_comp = next(c for c in before if focal in c)

    remaining_nodes = frozenset(net.nodes - {focal})
    remaining_edges = {
        (a, b): w for (a, b), w in net.edges.items() if focal not in (a, b)
    }
    after_net = Network(kind=net.kind, nodes=remaining_nodes, edges=remaining_edges)
    after = components(after_net)

    fragments = [c for c in after if c <= focal_comp]
    if fragments:
        # components() order already encodes the size-then-smallest-id tie-break
        largest = fragments[0]
        dependents = focal_comp - {focal} - largest
    else:
        dependents = frozenset()
    return ConnectorReport(
        focal=focal,
        dependents=frozenset(dependents),
        component_sizes_before=tuple(len(c) for c in before),
        component_sizes_after=tuple(len(c) for c in after),
    )
