"""Shannon distinguishability of labeled copies, the copy-packing number nu,
and the channel digraph with small constant-composition demos."""

from __future__ import annotations

import csv
import io
import json
import struct
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .bounds import BoundValue, Interval
from .enumeration import labeled_copies
from .families import SolveReport, max_family_exact
from .graph_core import GraphError, LabeledGraph


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(b for a, b in self.arcs if a == v)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        return Digraph(self.n, frozenset((perm[a - 1], perm[b - 1]) for a, b in self.arcs))

    def key(self) -> bytes:
        flat = [self.n] + [x for arc in sorted(self.arcs) for x in arc]
        return b"D" + struct.pack(f">{len(flat)}H", *flat)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in sorted(self.arcs)]}


def make_digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    out = set()
    for a, b in arcs:
        a, b = int(a), int(b)
        if a == b:
            raise GraphError(f"self-arc ({a}, {b})")
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphError(f"endpoint outside 1..{n} in arc ({a}, {b})")
        out.add((a, b))
    return Digraph(n, frozenset(out))


def _neighborhoods(G) -> tuple[frozenset[int], ...]:
    if isinstance(G, Digraph):
        return tuple(G.out_neighbors(v) for v in range(1, G.n + 1))
    return tuple(G.neighbors(v) for v in range(1, G.n + 1))


def shannon_distinguishable(F, G) -> bool:
    """Some vertex has disjoint (out-)neighbourhoods in F and G; two empty sets count as disjoint."""
    if type(F) is not type(G):
        raise TypeError("both arguments must be graphs or both digraphs")
    if F.n != G.n:
        raise GraphError(f"mismatched vertex counts {F.n} and {G.n}")
    if F == G:
        raise ValueError("distinguishability is defined for different graphs")
    return any(not (a & b) for a, b in zip(_neighborhoods(F), _neighborhoods(G)))


class ShannonDistinguishable:
    """Predicate object for the family/clique machinery."""

    def compatible(self, F, G) -> bool:
        return shannon_distinguishable(F, G)

    def __str__(self) -> str:
        return "shannon"

    def __eq__(self, other) -> bool:
        return isinstance(other, ShannonDistinguishable)

    def __hash__(self) -> int:
        return hash("shannon")


SHANNON = ShannonDistinguishable()


def nu(G, budget: float = 300.0) -> SolveReport:
    """Maximum number of pairwise Shannon-distinguishable labeled copies of G."""
    copies = list(labeled_copies(G))
    # copies form one orbit of S_n, so fixing G itself in the family loses nothing
    return max_family_exact(copies, SHANNON, budget, universe_tag="copies-of(G)", transitive=True)


def has_isolated_vertex(G) -> bool:
    return any(not nb for nb in _neighborhoods(G))


def has_disjoint_pair(G, include_self: bool = False) -> bool:
    """Two distinct vertices with disjoint neighbourhoods; with ``include_self`` an isolated vertex also counts."""
    nbs = _neighborhoods(G)
    if include_self and any(not nb for nb in nbs):
        return True
    return any(not (a & b) for a, b in combinations(nbs, 2))


def isomorphism_classes(n: int) -> list[LabeledGraph]:
    """One representative per isomorphism class of simple graphs on [n]."""
    from .graph_core import pair_table

    _, pairs = pair_table(n)
    seen: set[LabeledGraph] = set()
    reps = []
    for mask in range(1 << len(pairs)):
        G = LabeledGraph(n, mask)
        if G in seen:
            continue
        reps.append(G)
        seen.update(labeled_copies(G))
    return reps


@dataclass(frozen=True)
class RemarkRecord:
    n: int
    edges: tuple[tuple[int, int], ...]
    copies: int
    nu: int
    disjoint_pair_strict: bool
    disjoint_pair_with_isolated: bool

    @property
    def counterexample_strict(self) -> bool:
        return not self.disjoint_pair_strict and self.nu != 1

    @property
    def counterexample_with_isolated(self) -> bool:
        return not self.disjoint_pair_with_isolated and self.nu != 1


def remark_check(max_n: int = 5, budget: float = 60.0) -> list[RemarkRecord]:
    """nu for every graph class on up to ``max_n`` vertices, next to both readings of the
    "no two vertices with disjoint neighbourhoods" hypothesis."""
    out = []
    for n in range(1, max_n + 1):
        for G in isomorphism_classes(n):
            rep = nu(G, budget)
            copies = sum(1 for _ in labeled_copies(G))
            out.append(RemarkRecord(n, G.edges, copies, rep.value,
                                    has_disjoint_pair(G), has_disjoint_pair(G, include_self=True)))
    return out


# ---------------------------------------------------------------- channels

@dataclass(frozen=True)
class Channel:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    W: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.inputs or not self.outputs:
            raise ValueError("alphabets must be non-empty")
        if len(self.W) != len(self.inputs) or any(len(r) != len(self.outputs) for r in self.W):
            raise ValueError("matrix shape does not match the alphabets")
        for x, row in zip(self.inputs, self.W):
            if any(p < 0 for p in row):
                raise ValueError(f"negative probability in row {x!r}")
            if sum(row) != 1:
                raise ValueError(f"row {x!r} sums to {sum(row)}, not 1")

    def prob(self, y: int, x: int) -> Fraction:
        return self.W[x][y]

    def support(self, x: int) -> tuple[int, ...]:
        return tuple(j for j, p in enumerate(self.W[x]) if p > 0)


def make_channel(rows: Sequence[Sequence], inputs=None, outputs=None) -> Channel:
    W = tuple(tuple(Fraction(p) for p in r) for r in rows)
    inputs = tuple(inputs) if inputs else tuple(f"x{i + 1}" for i in range(len(W)))
    outputs = tuple(outputs) if outputs else tuple(f"y{j + 1}" for j in range(len(W[0]) if W else 0))
    return Channel(inputs, outputs, W)


def parse_channel_csv(text: str) -> Channel:
    """Header row: a corner cell then the output symbols; each later row: input symbol then
    probabilities written as fractions ("1/3") or decimals ("0.25"), both read exactly."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise ValueError("channel CSV needs a header and at least one row")
    outputs = tuple(c.strip() for c in rows[0][1:])
    inputs = tuple(r[0].strip() for r in rows[1:])
    W = tuple(tuple(Fraction(c.strip()) for c in r[1:]) for r in rows[1:])
    return Channel(inputs, outputs, W)


def channel_digraph(W: Channel) -> Digraph:
    """Vertices 1..|X| are inputs, |X|+1..|X|+|Y| outputs.  x -> y when W(y|x) > 0; every
    output has an arc to every other vertex."""
    nx_, ny = len(W.inputs), len(W.outputs)
    n = nx_ + ny
    arcs = {(i + 1, nx_ + j + 1) for i in range(nx_) for j in W.support(i)}
    arcs |= {(nx_ + j + 1, v) for j in range(ny) for v in range(1, n + 1) if v != nx_ + j + 1}
    return Digraph(n, frozenset(arcs))


@dataclass(frozen=True)
class Composition:
    m: int
    counts: tuple[int, ...]  # indexed like Channel.inputs

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("composition counts must be non-negative")
        if sum(self.counts) != self.m:
            raise ValueError(f"composition counts sum to {sum(self.counts)}, not m = {self.m}")

    def sequences(self) -> list[tuple[int, ...]]:
        """The constant-composition class, in lexicographic order."""
        base = [i for i, c in enumerate(self.counts) for _ in range(c)]
        return sorted(set(permutations(base)))


@dataclass
class CompositionReport:
    m: int
    counts: tuple[int, ...]
    class_size: int
    product_vertices: int
    product_arcs: int
    nu: int
    status: str
    code: list[tuple[str, ...]]
    rate: BoundValue

    def data(self) -> dict:
        lo, hi = self.rate.render()
        return {"m": self.m, "composition": list(self.counts), "class_size": self.class_size,
                "product_vertices": self.product_vertices, "product_arcs": self.product_arcs,
                "nu": self.nu, "status": self.status, "code": [list(c) for c in self.code],
                "rate_lo": lo, "rate_hi": hi}

    def to_json(self) -> str:
        return json.dumps(self.data(), sort_keys=True)


def iroot_interval(x: int, m: int, prec: int = 64) -> Interval:
    """Enclosure of x^(1/m) for a non-negative integer x."""
    if m == 1:
        return Interval.exact(x)
    scaled = x << (prec * m)
    lo, hi = 0, 1 << (scaled.bit_length() // m + 1)
    while lo < hi:  # largest r with r^m <= scaled
        mid = (lo + hi + 1) // 2
        if mid ** m <= scaled:
            lo = mid
        else:
            hi = mid - 1
    exact = lo ** m == scaled
    return Interval(Fraction(lo, 1 << prec), Fraction(lo if exact else lo + 1, 1 << prec))


def composition_class_nu(W: Channel, m: int, P: Composition, budget: float = 60.0,
                         max_m: int = 2) -> CompositionReport:
    """Largest set of sequences in the class whose out-neighbourhoods in the m-fold product
    digraph are pairwise disjoint, i.e. a zero-error code of that composition."""
    if m < 1:
        raise ValueError("block length must be positive")
    if m > max_m:
        raise ValueError(f"block length {m} exceeds the configured cap {max_m}")
    if P.m != m or len(P.counts) != len(W.inputs):
        raise ValueError("composition does not match the block length or the input alphabet")
    cls = P.sequences()
    outs = list(product(range(len(W.outputs)), repeat=m))
    out_index = {y: i for i, y in enumerate(outs)}
    # product digraph vertices: class sequences first, then all of Y^m
    base = len(cls)
    nv = base + len(outs)
    arcs = set()
    for i, x in enumerate(cls):
        for y in product(*(W.support(a) for a in x)):
            arcs.add((i + 1, base + out_index[y] + 1))
    for j in range(len(outs)):
        arcs |= {(base + j + 1, v) for v in range(1, nv + 1) if v != base + j + 1}
    D = Digraph(nv, frozenset(arcs))
    # one single-source copy per class sequence: its own arcs into Y^m
    stars = [Digraph(nv, frozenset(a for a in arcs if a[0] == i + 1)) for i in range(base)]
    rep = max_family_exact(stars, DISJOINT_OUTPUTS, budget, universe_tag="composition-class")
    chosen = sorted(next(iter(G.arcs))[0] - 1 for G in rep.witness.members)
    code = [tuple(W.inputs[a] for a in cls[i]) for i in chosen]
    rate = BoundValue.enclosing(iroot_interval(rep.value, m), 64)
    if m == 1:
        rate = BoundValue.of(rep.value)
    return CompositionReport(m, P.counts, base, nv, len(D.arcs), rep.value, rep.status, code, rate)


class _DisjointOutputs:
    """Two class sequences are compatible when their sources' out-neighbourhoods are disjoint."""

    def compatible(self, F: Digraph, G: Digraph) -> bool:
        return not ({b for _, b in F.arcs} & {b for _, b in G.arcs})

    def __str__(self) -> str:
        return "disjoint-outputs"


DISJOINT_OUTPUTS = _DisjointOutputs()
