"""Exact min-cost transportation via successive shortest paths.

Small complete bipartite instances with rational supplies, demands and
nonnegative rational costs.  Dijkstra with node potentials keeps reduced
costs nonnegative; all arithmetic is exact.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Sequence

MAX_AUGMENTATIONS = 100000


def min_cost_transport(
    supplies: Sequence[Fraction],
    demands: Sequence[Fraction],
    cost: Callable[[int, int], Fraction],
) -> Fraction:
    """Minimal cost of moving the supply masses onto the demand masses.

    ``cost(i, j)`` prices one unit from supply i to demand j.  Total supply
    must equal total demand; both must be positive entrywise.
    """
    k, l = len(supplies), len(demands)
    total = sum(supplies, Fraction(0))
    if total != sum(demands, Fraction(0)):
        raise ValueError("supplies and demands must balance")
    if total == 0:
        return Fraction(0)
    if any(s <= 0 for s in supplies) or any(d <= 0 for d in demands):
        raise ValueError("masses must be positive")

    source = k + l
    sink = k + l + 1
    n_nodes = k + l + 2
    big = total  # effective infinity for middle arcs

    # arcs as parallel lists; arc i^1 is the reverse of arc i
    to: list[int] = []
    cap: list[Fraction] = []
    cst: list[Fraction] = []
    graph: list[list[int]] = [[] for _ in range(n_nodes)]

    def add_arc(u: int, v: int, capacity: Fraction, c: Fraction) -> None:
        graph[u].append(len(to))
        to.append(v)
        cap.append(capacity)
        cst.append(c)
        graph[v].append(len(to))
        to.append(u)
        cap.append(Fraction(0))
        cst.append(-c)

    for i, s in enumerate(supplies):
        add_arc(source, i, s, Fraction(0))
    for j, d in enumerate(demands):
        add_arc(k + j, sink, d, Fraction(0))
    for i in range(k):
        for j in range(l):
            c = Fraction(cost(i, j))
            if c < 0:
                raise ValueError("costs must be nonnegative")
            add_arc(i, k + j, big, c)

    zero = Fraction(0)
    potential = [zero] * n_nodes
    total_cost = zero
    shipped = zero
    rounds = 0
    while shipped < total:
        rounds += 1
        if rounds > MAX_AUGMENTATIONS:
            raise RuntimeError("augmentation limit exceeded")
        dist: list[Fraction | None] = [None] * n_nodes
        parent_arc = [-1] * n_nodes
        dist[source] = zero
        heap = [(zero, source)]
        done = [False] * n_nodes
        while heap:
            d_u, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for arc in graph[u]:
                if cap[arc] <= 0:
                    continue
                v = to[arc]
                nd = d_u + cst[arc] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent_arc[v] = arc
                    heapq.heappush(heap, (nd, v))
        if dist[sink] is None:
            raise RuntimeError("transport network disconnected")
        d_sink = dist[sink]
        for v in range(n_nodes):
            potential[v] += d_sink if dist[v] is None else min(dist[v], d_sink)

        bottleneck = None
        v = sink
        while v != source:
            arc = parent_arc[v]
            if bottleneck is None or cap[arc] < bottleneck:
                bottleneck = cap[arc]
            v = to[arc ^ 1]
        v = sink
        while v != source:
            arc = parent_arc[v]
            cap[arc] -= bottleneck
            cap[arc ^ 1] += bottleneck
            total_cost += bottleneck * cst[arc]
            v = to[arc ^ 1]
        shipped += bottleneck

    return total_cost
