"""Exhaustive generators for the graph universes: Hamilton cycles and paths,
2-regular graphs (optionally of a fixed component shape), perfect matchings,
near-matchings, triangle factors, integer partitions, and minimal coverings.

Every generator is lazy and deterministic: two iterators with the same
arguments yield the same sequence.  ``canonical_order`` sorts a stream by
``canonical_key`` when a key-ordered list is wanted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .graph_core import (
    GraphError,
    LabeledGraph,
    canonical_key,
    components,
    cycle_graph,
    is_two_regular,
    make_graph,
    pair_table,
    path_graph,
)


@dataclass(frozen=True)
class PartitionShape:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def odd_parts(self) -> int:
        return sum(1 for p in self.parts if p % 2)

    def check_two_regular(self, n: int | None = None) -> None:
        if min(self.parts) < 3:
            raise ValueError(f"shape {self.parts} has a part smaller than 3")
        if n is not None and self.n != n:
            raise ValueError(f"shape {self.parts} sums to {self.n}, not {n}")

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def parse_shape(text: str) -> PartitionShape:
    return PartitionShape(tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()))


def canonical_order(graphs: Iterable[LabeledGraph]) -> list[LabeledGraph]:
    return sorted(graphs, key=canonical_key)


def hamilton_cycles(n: int) -> Iterator[LabeledGraph]:
    """Each labeled Hamilton cycle once, as 1, p1, ..., p_{n-1} with p1 < p_{n-1}."""
    if n < 3:
        raise ValueError(f"Hamilton cycles need n >= 3, got {n}")
    for perm in permutations(range(2, n + 1)):
        if perm[0] < perm[-1]:
            yield cycle_graph(n, (1,) + perm)


def hamilton_paths(n: int) -> Iterator[LabeledGraph]:
    if n < 2:
        raise ValueError(f"Hamilton paths need n >= 2, got {n}")
    for perm in permutations(range(1, n + 1)):
        if perm[0] < perm[-1]:
            yield path_graph(n, perm)


def _cyclic_orders(block: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # block[0] fixed first; reflections removed by first < last
    head, rest = block[0], block[1:]
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield (head,) + perm


def _cycle_covers(free: tuple[int, ...], sizes: Counter) -> Iterator[list[tuple[int, ...]]]:
    # The smallest free vertex determines its component, so every cover appears once.
    if not free:
        yield []
        return
    v, rest = free[0], free[1:]
    for k in sorted(sizes):
        if not sizes[k]:
            continue
        sizes[k] -= 1
        for others in combinations(rest, k - 1):
            left = tuple(x for x in rest if x not in others)
            for order in _cyclic_orders((v,) + others):
                for tail in _cycle_covers(left, sizes):
                    yield [order] + tail
        sizes[k] += 1


def two_regular_graphs(n: int, shape: PartitionShape | None = None) -> Iterator[LabeledGraph]:
    if n < 3:
        raise ValueError(f"2-regular graphs need n >= 3, got {n}")
    shapes = [shape] if shape is not None else list(partitions(n, 3))
    for p in shapes:
        p.check_two_regular(n)
    seen: set[bytes] = set()
    for p in shapes:
        for cover in _cycle_covers(tuple(range(1, n + 1)), Counter(p.parts)):
            edges = [(c[i], c[(i + 1) % len(c)]) for c in cover for i in range(len(c))]
            G = make_graph(n, edges)
            key = canonical_key(G)
            if key in seen:  # safety net; the construction never repeats
                continue
            seen.add(key)
            yield G


def _matchings(free: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not free:
        yield []
        return
    v = free[0]
    for i in range(1, len(free)):
        w = free[i]
        left = free[1:i] + free[i + 1:]
        for tail in _matchings(left):
            yield [(v, w)] + tail


def perfect_matchings(n: int) -> Iterator[LabeledGraph]:
    if n < 2 or n % 2:
        raise ValueError(f"perfect matchings need even n >= 2, got {n}")
    for m in _matchings(tuple(range(1, n + 1))):
        yield make_graph(n, m)


def near_matchings(n: int) -> Iterator[LabeledGraph]:
    """One 2-edge path on three vertices plus a perfect matching of the remaining n - 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"near-matchings need odd n >= 3, got {n}")
    everything = tuple(range(1, n + 1))
    for triple in combinations(everything, 3):
        left = tuple(x for x in everything if x not in triple)
        for center in triple:
            a, b = (x for x in triple if x != center)
            for m in _matchings(left):
                yield make_graph(n, [(a, center), (center, b)] + m)


def _triangle_covers(free: tuple[int, ...]) -> Iterator[list[tuple[int, int, int]]]:
    if not free:
        yield []
        return
    v, rest = free[0], free[1:]
    for a, b in combinations(rest, 2):
        left = tuple(x for x in rest if x != a and x != b)
        for tail in _triangle_covers(left):
            yield [(v, a, b)] + tail


def triangle_factors(n: int, vertices: Sequence[int] | None = None) -> Iterator[LabeledGraph]:
    """Partitions of ``vertices`` (default [n]) into triangles, as graphs on [n]."""
    vs = tuple(vertices) if vertices is not None else tuple(range(1, n + 1))
    if len(vs) % 3:
        raise ValueError(f"triangle factors need a multiple of 3 vertices, got {len(vs)}")
    for cover in _triangle_covers(vs):
        yield make_graph(n, [e for a, b, c in cover for e in ((a, b), (b, c), (a, c))])


def partitions(n: int, min_part: int = 1) -> Iterator[PartitionShape]:
    """Partitions of n with all parts >= min_part, in decreasing lexicographic order."""
    if n < 1 or min_part < 1:
        raise ValueError("partitions need n >= 1 and min_part >= 1")

    def rec(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), min_part - 1, -1):
            for tail in rec(remaining - first, first):
                yield (first,) + tail

    for parts in rec(n, n):
        yield PartitionShape(parts)


def pattern_P(shape: PartitionShape) -> LabeledGraph:
    """One 2-edge path per odd part on the lowest vertex blocks, then single edges on consecutive pairs."""
    shape.check_two_regular()
    n, k = shape.n, shape.odd_parts
    edges = []
    for i in range(k):
        a = 3 * i + 1
        edges += [(a, a + 1), (a + 1, a + 2)]
    for v in range(3 * k + 1, n + 1, 2):
        edges.append((v, v + 1))
    return make_graph(n, edges)


def labeled_copies(G):
    """Distinct images of G (a LabeledGraph or Digraph) under all relabelings of [n], G first."""
    seen = set()
    for perm in permutations(range(1, G.n + 1)):
        H = G.relabel(perm)
        if H not in seen:
            seen.add(H)
            yield H


UNIVERSE_KINDS = ("hamilton-cycles", "hamilton-paths", "two-regular", "perfect-matchings",
                  "near-matchings", "triangle-factors")


def universe(kind: str, n: int) -> Iterator[LabeledGraph]:
    """Dispatch on a universe tag; ``two-regular:3,3`` restricts to one shape."""
    name, _, arg = kind.partition(":")
    if name == "hamilton-cycles":
        return hamilton_cycles(n)
    if name == "hamilton-paths":
        return hamilton_paths(n)
    if name == "two-regular":
        return two_regular_graphs(n, parse_shape(arg) if arg else None)
    if name == "perfect-matchings":
        return perfect_matchings(n)
    if name == "near-matchings":
        return near_matchings(n)
    if name == "triangle-factors":
        return triangle_factors(n)
    raise ValueError(f"unknown universe {kind!r}")


def members_containing(pattern: LabeledGraph, members: Iterable[LabeledGraph]) -> Iterator[LabeledGraph]:
    for G in members:
        if G.n != pattern.n:
            raise GraphError(f"mismatched vertex counts {pattern.n} and {G.n}")
        if G.mask & pattern.mask == pattern.mask:
            yield G


@dataclass(frozen=True)
class MinimalCovering:
    host: LabeledGraph
    edges: LabeledGraph
    component_count: int
    two_edge_paths: int


def is_hamilton_cycle(G: LabeledGraph) -> bool:
    if G.n < 3 or not is_two_regular(G):
        return False
    comps, _ = components(G)
    return len(comps) == 1


def minimal_coverings(H: LabeledGraph) -> Iterator[MinimalCovering]:
    """Inclusion-minimal subsets of H's edges that touch every vertex, by exhaustive subset search."""
    if not is_hamilton_cycle(H):
        raise ValueError("minimal coverings are defined for Hamilton cycles only")
    n = H.n
    _, pairs = pair_table(n)
    host_bits = [1 << (pairs.index(e)) for e in H.edges]
    full = (1 << n) - 1

    def covered(mask: int) -> int:
        seen = 0
        for i, bit in enumerate(host_bits):
            if mask & bit:
                u, v = pairs[bit.bit_length() - 1]
                seen |= 1 << (u - 1) | 1 << (v - 1)
        return seen

    for size in range(1, n + 1):
        for chosen in combinations(host_bits, size):
            mask = sum(chosen)
            if covered(mask) != full:
                continue
            if any(covered(mask ^ b) == full for b in chosen):
                continue
            G = LabeledGraph(n, mask)
            comps, _ = components(G)
            comps = [c for c in comps if c.size > 1]
            s = len(comps)
            yield MinimalCovering(H, G, s, sum(1 for c in comps if c.kind == "2-edge path"))
