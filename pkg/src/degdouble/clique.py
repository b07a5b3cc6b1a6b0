"""Maximum clique by branch and bound over Python-int bitsets.

Greedy colouring of the candidate set gives the upper bound at each node
(each colour class is an independent set, so a clique takes at most one
vertex per class).  Vertices are renumbered by non-increasing degree first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class BudgetExhausted(Exception):
    pass


class TargetReached(Exception):
    pass


@dataclass
class CliqueResult:
    clique: list[int]
    exact: bool
    nodes: int
    elapsed: float = field(default=0.0)


def _colour_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    colours: list[int] = []
    U = P
    k = 0
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            U &= ~low
            order.append(v)
            colours.append(k)
    return order, colours


def max_clique(adj: list[int], budget: float | None = None, initial: list[int] | None = None,
               root: int | None = None, target: int | None = None) -> CliqueResult:
    """Maximum clique of the graph with bitset adjacency ``adj`` (symmetric, irreflexive).

    ``root`` forces that vertex into the clique; for a vertex-transitive graph
    this loses nothing and removes most of the search tree.  ``budget`` is in
    seconds; when it runs out the best clique found so far is returned with
    ``exact=False``.  ``target`` is a proven upper bound on the clique number;
    the search stops as soon as a clique of that size is found.
    """
    N = len(adj)
    start = time.perf_counter()
    if N == 0:
        return CliqueResult([], True, 0)

    rank = sorted(range(N), key=lambda v: (-adj[v].bit_count(), v))
    pos = {v: i for i, v in enumerate(rank)}
    radj = [0] * N
    for i, v in enumerate(rank):
        m = adj[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        radj[i] = r

    best: list[int] = [pos[v] for v in initial] if initial else []
    nodes = 0
    deadline = None if budget is None else start + budget

    def expand(R: list[int], P: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if deadline is not None and nodes & 255 == 0 and time.perf_counter() > deadline:
            raise BudgetExhausted
        order, colours = _colour_sort(P, radj)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colours[i] <= len(best):
                return
            v = order[i]
            R.append(v)
            NP = P & radj[v]
            if NP:
                expand(R, NP)
            elif len(R) > len(best):
                best = list(R)
                if target is not None and len(best) >= target:
                    raise TargetReached
            R.pop()
            P &= ~(1 << v)

    exact = True
    try:
        if root is not None:
            r = pos[root]
            if not best:
                best = [r]
            if radj[r]:
                expand([r], radj[r])
        else:
            expand([], (1 << N) - 1)
    except BudgetExhausted:
        exact = False
    except TargetReached:
        pass
    clique = sorted(rank[i] for i in best)
    return CliqueResult(clique, exact, nodes, time.perf_counter() - start)
