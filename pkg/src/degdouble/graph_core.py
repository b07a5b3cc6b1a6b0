"""Labeled simple graphs on [n] = {1..n} stored as bitmasks over the C(n,2) vertex pairs.

Union and intersection are single integer operations, which keeps the
pairwise loops over thousands of candidate graphs cheap.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction or mismatched vertex counts."""


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[dict[tuple[int, int], int], tuple[tuple[int, int], ...]]:
    """Bit index of each pair (u, v), u < v, in lexicographic order, and the inverse table."""
    pairs = tuple(combinations(range(1, n + 1), 2))
    return {p: i for i, p in enumerate(pairs)}, pairs


@lru_cache(maxsize=None)
def incidence_masks(n: int) -> tuple[int, ...]:
    """incidence_masks(n)[v] is the mask of all pairs touching vertex v (index 0 unused)."""
    index, _ = pair_table(n)
    masks = [0] * (n + 1)
    for (u, v), i in index.items():
        masks[u] |= 1 << i
        masks[v] |= 1 << i
    return tuple(masks)


@dataclass(frozen=True, order=False)
class LabeledGraph:
    n: int
    mask: int = 0

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        _, pairs = pair_table(self.n)
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(pairs[low.bit_length() - 1])
            m ^= low
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return self.mask.bit_count()

    def degree(self, v: int) -> int:
        return (self.mask & incidence_masks(self.n)[v]).bit_count()

    def degrees(self) -> tuple[int, ...]:
        inc = incidence_masks(self.n)
        return tuple((self.mask & inc[v]).bit_count() for v in range(1, self.n + 1))

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        index, _ = pair_table(self.n)
        i = index.get((u, v))
        return i is not None and bool(self.mask >> i & 1)

    def relabel(self, perm: Sequence[int]) -> "LabeledGraph":
        """Image under the vertex map v -> perm[v-1]."""
        index, _ = pair_table(self.n)
        mask = 0
        for u, v in self.edges:
            a, b = perm[u - 1], perm[v - 1]
            mask |= 1 << index[(a, b) if a < b else (b, a)]
        return LabeledGraph(self.n, mask)

    def without_edge(self, u: int, v: int) -> "LabeledGraph":
        if u > v:
            u, v = v, u
        index, _ = pair_table(self.n)
        return LabeledGraph(self.n, self.mask & ~(1 << index[(u, v)]))

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, edges={list(self.edges)})"


def make_graph(n: int, edge_list: Iterable[Sequence[int]]) -> LabeledGraph:
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    index, _ = pair_table(n)
    mask = 0
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"endpoint outside 1..{n} in edge ({u}, {v})")
        bit = 1 << index[(u, v) if u < v else (v, u)]
        if mask & bit:
            raise GraphError(f"duplicate edge ({u}, {v})")
        mask |= bit
    return LabeledGraph(n, mask)


def cycle_graph(n: int, order: Sequence[int]) -> LabeledGraph:
    """Cycle visiting ``order`` (length >= 3) inside a graph on [n]."""
    k = len(order)
    return make_graph(n, [(order[i], order[(i + 1) % k]) for i in range(k)])


def path_graph(n: int, order: Sequence[int]) -> LabeledGraph:
    return make_graph(n, [(order[i], order[i + 1]) for i in range(len(order) - 1)])


def _check_same_n(F: LabeledGraph, G: LabeledGraph) -> None:
    if F.n != G.n:
        raise GraphError(f"mismatched vertex counts {F.n} and {G.n}")


def union(F: LabeledGraph, G: LabeledGraph) -> LabeledGraph:
    _check_same_n(F, G)
    return LabeledGraph(F.n, F.mask | G.mask)


def intersection(F: LabeledGraph, G: LabeledGraph) -> LabeledGraph:
    _check_same_n(F, G)
    return LabeledGraph(F.n, F.mask & G.mask)


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    average: Fraction


def degree_profile(G: LabeledGraph) -> DegreeProfile:
    degs = G.degrees()
    return DegreeProfile(degs, max(degs, default=0), Fraction(2 * G.edge_count, G.n))


@dataclass(frozen=True)
class MaxDegreeAtLeast:
    d: int = 4

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree threshold must be non-negative")

    def holds(self, G: LabeledGraph) -> bool:
        if self.d == 0:
            return True
        inc = incidence_masks(G.n)
        m = G.mask
        return any((m & inc[v]).bit_count() >= self.d for v in range(1, G.n + 1))

    def compatible(self, F: LabeledGraph, G: LabeledGraph) -> bool:
        return self.holds(union(F, G))

    def __str__(self) -> str:
        return f"maxdeg:{self.d}"


@dataclass(frozen=True)
class AverageDegreeAtLeast:
    alpha: Fraction = field(default=Fraction(4))

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha < 0:
            raise ValueError("average-degree threshold must be non-negative")

    def holds(self, G: LabeledGraph) -> bool:
        # 2|E|/n >= alpha, kept in integers
        return 2 * G.edge_count * self.alpha.denominator >= self.alpha.numerator * G.n

    def compatible(self, F: LabeledGraph, G: LabeledGraph) -> bool:
        return self.holds(union(F, G))

    def __str__(self) -> str:
        return f"avgdeg:{self.alpha}"


DoublingPredicate = MaxDegreeAtLeast | AverageDegreeAtLeast
DEFAULT_PREDICATE = MaxDegreeAtLeast(4)


def parse_predicate(text: str) -> DoublingPredicate:
    """Parse ``maxdeg:4`` or ``avgdeg:7/2`` (decimals such as ``avgdeg:3.5`` are read exactly)."""
    kind, _, value = text.partition(":")
    kind = kind.strip().lower()
    if kind == "maxdeg":
        return MaxDegreeAtLeast(int(value) if value else 4)
    if kind == "avgdeg":
        if not value:
            raise ValueError("avgdeg needs a threshold, e.g. avgdeg:4")
        return AverageDegreeAtLeast(Fraction(value))
    raise ValueError(f"unknown predicate {text!r}")


def doubling_compatible(F: LabeledGraph, G: LabeledGraph, pred: DoublingPredicate = DEFAULT_PREDICATE) -> bool:
    return pred.holds(union(F, G))


def isolated_vertices(G: LabeledGraph) -> frozenset[int]:
    inc = incidence_masks(G.n)
    return frozenset(v for v in range(1, G.n + 1) if not G.mask & inc[v])


def is_two_regular(G: LabeledGraph) -> bool:
    return all(d == 2 for d in G.degrees())


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    kind: str
    size: int
    edge_count: int


def _classify(k: int, e: int, degs: list[int]) -> str:
    if k == 1:
        return "isolated vertex"
    if k == 2 and e == 1:
        return "single edge"
    if e == k and all(d == 2 for d in degs):
        return f"cycle of length {k}"
    if e == k - 1 and max(degs) <= 2:
        return "2-edge path" if k == 3 else f"path of {k} vertices"
    return "other"


def components(G: LabeledGraph) -> tuple[list[Component], tuple[int, ...]]:
    """Connected components with a coarse classification, plus the non-increasing size multiset."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, G.n + 1)}
    for u, v in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    comps = []
    for start in range(1, G.n + 1):
        if start in seen:
            continue
        stack, block = [start], {start}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in block:
                    block.add(y)
                    stack.append(y)
        seen |= block
        degs = [len(adj[x]) for x in block]
        e = sum(degs) // 2
        comps.append(Component(frozenset(block), _classify(len(block), e, degs), len(block), e))
    shape = tuple(sorted((c.size for c in comps), reverse=True))
    return comps, shape


def canonical_key(G: LabeledGraph) -> bytes:
    """n followed by the sorted edge list, two bytes per number, big-endian."""
    if not isinstance(G, LabeledGraph):
        return G.key()
    flat = [G.n]
    for u, v in G.edges:
        flat.extend((u, v))
    return struct.pack(f">{len(flat)}H", *flat)


def to_edge_list_text(G: LabeledGraph) -> str:
    lines = [f"n {G.n}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> LabeledGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise GraphError("edge-list text must start with 'n <count>'")
    n = int(lines[0].split()[1])
    return make_graph(n, [tuple(map(int, ln.split())) for ln in lines[1:]])


def to_json_obj(G: LabeledGraph) -> dict:
    if not isinstance(G, LabeledGraph):
        return G.to_json_obj()
    return {"n": G.n, "edges": [list(e) for e in G.edges]}


def from_json_obj(obj: dict) -> LabeledGraph:
    if "arcs" in obj:
        from .distinguish import make_digraph
        return make_digraph(int(obj["n"]), obj["arcs"])
    return make_graph(int(obj["n"]), obj["edges"])
