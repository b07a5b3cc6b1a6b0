"""Degree-doubling families: greedy construction, exact maximum via clique
search, the triangle-factor construction, double-counting certificates and
the cycle-to-path reduction."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .clique import max_clique
from .enumeration import (
    PartitionShape,
    canonical_order,
    cycle_graph,
    hamilton_cycles,
    is_hamilton_cycle,
    labeled_copies,
    near_matchings,
    parse_shape,
    partitions,
    pattern_P,
    perfect_matchings,
    triangle_factors,
    two_regular_graphs,
    universe,
)
from .graph_core import (
    DEFAULT_PREDICATE,
    AverageDegreeAtLeast,
    DoublingPredicate,
    GraphError,
    LabeledGraph,
    MaxDegreeAtLeast,
    canonical_key,
    intersection,
    isolated_vertices,
    pair_table,
    parse_predicate,
    to_json_obj,
    from_json_obj,
)


@dataclass(frozen=True)
class Family:
    n: int
    members: tuple[LabeledGraph, ...]
    predicate: DoublingPredicate = DEFAULT_PREDICATE
    universe_tag: str = ""

    def __len__(self) -> int:
        return len(self.members)

    def header(self) -> dict:
        return {"n": self.n, "predicate": str(self.predicate), "universe": self.universe_tag, "size": len(self)}

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header())] + [json.dumps(to_json_obj(G)) for G in self.members]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "Family":
        rows = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
        head = rows[0]
        members = tuple(from_json_obj(r) for r in rows[1:])
        if len(members) != head["size"]:
            raise ValueError(f"header says {head['size']} members, found {len(members)}")
        if head["predicate"] == "shannon":
            from .distinguish import SHANNON
            pred = SHANNON
        else:
            pred = parse_predicate(head["predicate"])
        return cls(head["n"], members, pred, head["universe"])


@dataclass
class CompatibilityGraph:
    order: int
    adjacency: list[int]
    candidate_keys: tuple[bytes, ...]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2


def _edge_matrix(candidates: Sequence[LabeledGraph]) -> np.ndarray:
    n = candidates[0].n
    m = n * (n - 1) // 2
    masks = [G.mask for G in candidates]
    E = np.zeros((len(candidates), m), dtype=np.float32)
    for e in range(m):
        E[:, e] = [(x >> e) & 1 for x in masks]
    return E


def _incidence_matrix(n: int) -> np.ndarray:
    _, pairs = pair_table(n)
    A = np.zeros((len(pairs), n), dtype=np.float32)
    for i, (u, v) in enumerate(pairs):
        A[i, u - 1] = A[i, v - 1] = 1
    return A


def _compat_rows(E: np.ndarray, A: np.ndarray, rows: slice, pred: DoublingPredicate) -> np.ndarray:
    # float32 products are exact here: every entry is a small integer count
    Er = E[rows]
    if isinstance(pred, MaxDegreeAtLeast):
        out = np.zeros((Er.shape[0], E.shape[0]), dtype=bool)
        if pred.d == 0:
            out[:] = True
            return out
        D = E @ A
        Dr = D[rows]
        for v in range(A.shape[1]):
            inter = (Er * A[:, v]) @ E.T
            out |= (Dr[:, v][:, None] + D[:, v][None, :] - inter) >= pred.d
        return out
    n = A.shape[1]
    size = E.sum(axis=1)
    union_edges = size[rows][:, None] + size[None, :] - Er @ E.T
    lhs = 2 * np.rint(union_edges).astype(np.int64) * pred.alpha.denominator
    return lhs >= pred.alpha.numerator * n


def compatibility_matrix(candidates: Sequence[LabeledGraph], pred: DoublingPredicate = DEFAULT_PREDICATE,
                         threads: int = 1) -> np.ndarray:
    """Boolean N x N matrix, entry (i, j) true iff i != j and ``pred.compatible`` holds for the pair.

    Degree predicates are evaluated in bulk with numpy; any other predicate
    object falls back to pairwise calls.
    """
    N = len(candidates)
    if N == 0:
        return np.zeros((0, 0), dtype=bool)
    n = candidates[0].n
    if any(G.n != n for G in candidates):
        raise GraphError("candidates must share the vertex count")
    if len(set(candidates)) != N:
        raise ValueError("duplicate candidates")
    if not isinstance(pred, (MaxDegreeAtLeast, AverageDegreeAtLeast)):
        M = np.zeros((N, N), dtype=bool)
        for i, j in combinations(range(N), 2):
            M[i, j] = M[j, i] = pred.compatible(candidates[i], candidates[j])
        return M
    E = _edge_matrix(candidates)
    A = _incidence_matrix(n)
    block = max(1, -(-N // max(1, threads)))
    slices = [slice(i, min(N, i + block)) for i in range(0, N, block)]
    if threads > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: _compat_rows(E, A, s, pred), slices))
    else:
        parts = [_compat_rows(E, A, s, pred) for s in slices]
    M = np.vstack(parts)
    np.fill_diagonal(M, False)
    return M


def _bitset_rows(M: np.ndarray) -> list[int]:
    packed = np.packbits(M, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def compatibility_graph(candidates: Sequence[LabeledGraph], pred: DoublingPredicate = DEFAULT_PREDICATE,
                        threads: int = 1) -> CompatibilityGraph:
    M = compatibility_matrix(candidates, pred, threads)
    return CompatibilityGraph(len(candidates), _bitset_rows(M), tuple(canonical_key(G) for G in candidates))


def greedy_family(candidates: Iterable[LabeledGraph], pred: DoublingPredicate = DEFAULT_PREDICATE,
                  universe_tag: str = "") -> Family:
    """Take the first surviving candidate, drop everything incompatible with it, repeat.

    A candidate survives exactly when it is compatible with every member picked
    so far, so one pass over the stream suffices.
    """
    chosen: list[LabeledGraph] = []
    n = 0
    for G in candidates:
        n = G.n
        if all(pred.compatible(H, G) for H in chosen):
            chosen.append(G)
    return Family(n, tuple(chosen), pred, universe_tag)


@dataclass
class SolveReport:
    value: int
    status: str  # "exact" | "lower-bound"
    witness: Family
    elapsed: float
    nodes_explored: int
    certificate: str = ""
    upper_bound: int | None = None

    def data(self) -> dict:
        """Everything except wall-clock time; stable across runs."""
        return {
            "value": self.value,
            "status": self.status,
            "certificate": self.certificate,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "witness": {**self.witness.header(), "members": [to_json_obj(G) for G in self.witness.members]},
        }

    def to_json(self) -> str:
        return json.dumps({**self.data(), "elapsed_ms": round(self.elapsed * 1000, 3)}, sort_keys=True)


def max_family_exact(candidates: Sequence[LabeledGraph], pred: DoublingPredicate = DEFAULT_PREDICATE,
                     budget: float = 300.0, universe_tag: str = "", transitive: bool = False,
                     upper_bound: int | None = None, threads: int = 1) -> SolveReport:
    """Largest pairwise-compatible subfamily.

    ``transitive=True`` asserts that relabelings act transitively on the
    candidates (true for every S_n-orbit universe); the search then fixes the
    first candidate in the family.  ``upper_bound`` is a proven bound, e.g.
    from ``cover_upper_bound``; reaching it ends the search with status exact.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    start = time.perf_counter()
    candidates = list(candidates)
    n = candidates[0].n if candidates else 0
    if not candidates:
        return SolveReport(0, "exact", Family(n, (), pred, universe_tag), 0.0, 0, "empty universe", upper_bound)
    cg = compatibility_graph(candidates, pred, threads)
    greedy = greedy_family(candidates, pred)
    index = {canonical_key(G): i for i, G in enumerate(candidates)}
    initial = [index[canonical_key(G)] for G in greedy.members]
    remaining = budget - (time.perf_counter() - start)
    if upper_bound is not None and len(initial) >= upper_bound:
        clique, exact, nodes, cert = initial, True, 0, "upper-bound-met"
    else:
        res = max_clique(cg.adjacency, budget=max(remaining, 1e-3), initial=initial,
                         root=0 if transitive else None, target=upper_bound)
        clique, nodes = res.clique, res.nodes
        if upper_bound is not None and len(clique) >= upper_bound:
            exact, cert = True, "upper-bound-met"
        elif res.exact:
            exact, cert = True, "search-complete"
        else:
            exact, cert = False, "budget-exhausted"
    members = tuple(candidates[i] for i in sorted(clique))
    fam = Family(n, members, pred, universe_tag)
    return SolveReport(len(members), "exact" if exact else "lower-bound", fam,
                       time.perf_counter() - start, nodes, cert, upper_bound)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failing_pair: tuple[LabeledGraph, LabeledGraph] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_family(fam: Family) -> VerifyResult:
    keys = [canonical_key(G) for G in fam.members]
    if len(set(keys)) != len(keys):
        dup = next(G for G, k in zip(fam.members, keys) if keys.count(k) > 1)
        return VerifyResult(False, (dup, dup), "duplicate member")
    if any(G.n != fam.n for G in fam.members):
        return VerifyResult(False, None, "member with wrong vertex count")
    ordered = sorted(fam.members, key=canonical_key)
    for F, G in combinations(ordered, 2):
        if not fam.predicate.compatible(F, G):
            return VerifyResult(False, (F, G), "union fails the predicate")
    return VerifyResult(True)


def is_inclusion_maximal(fam: Family, universe: Iterable[LabeledGraph]) -> bool:
    chosen = {canonical_key(G) for G in fam.members}
    for G in universe:
        if canonical_key(G) in chosen:
            continue
        if all(fam.predicate.compatible(H, G) for H in fam.members):
            return False
    return True


def triangle_split(n: int) -> tuple[int, int]:
    """(q, r) with n = 3q + r, r = 0 when 3 | n, else r in {4, 5}."""
    if n % 3 == 0:
        return n // 3, 0
    q = n // 3 - 1
    return q, n - 3 * q


def triangle_family(n: int) -> Family:
    """Triangle factors of [3q], each completed by the same increasing r-cycle on the top r vertices."""
    if n < 3:
        raise ValueError(f"triangle_family needs n >= 3, got {n}")
    q, r = triangle_split(n)
    tag = "two-regular"
    if r == 0:
        return Family(n, tuple(triangle_factors(n)), DEFAULT_PREDICATE, tag)
    gadget = cycle_graph(n, list(range(3 * q + 1, n + 1)))
    if q == 0:
        return Family(n, (gadget,), DEFAULT_PREDICATE, tag)
    members = tuple(LabeledGraph(n, T.mask | gadget.mask) for T in triangle_factors(n, range(1, 3 * q + 1)))
    return Family(n, members, DEFAULT_PREDICATE, tag)


def triangle_family_size(n: int) -> int:
    q, _ = triangle_split(n)
    return math.factorial(3 * q) // (math.factorial(q) * 6 ** q)


@dataclass
class CoverBound:
    """Double-counting bound from a family of patterns whose containment classes are cliques of incompatibility."""
    n: int
    pattern_kind: str
    universe_size: int
    pattern_count: int
    class_size: int
    class_sizes_uniform: bool
    patterns_per_member: int
    members_uniform: bool
    double_counting: Fraction
    stated: Fraction
    witness_checked: bool | None = None
    witness_ok: bool | None = None

    @property
    def bound(self) -> Fraction:
        return self.stated

    @property
    def certified_max(self) -> int:
        """floor of the double-counting ratio; a valid family can never be larger."""
        return math.floor(self.double_counting)


def _pattern_setup(n: int, pattern_kind: str | PartitionShape):
    if isinstance(pattern_kind, PartitionShape) or pattern_kind.startswith("pattern"):
        shape = pattern_kind if isinstance(pattern_kind, PartitionShape) else \
            PartitionShape(tuple(int(x) for x in pattern_kind.split(":", 1)[1].split(",")))
        shape.check_two_regular(n)
        base = pattern_P(shape)
        universe = list(two_regular_graphs(n, shape))
        patterns = list(labeled_copies(base))
        return f"pattern_P({shape})", base, universe, patterns
    if pattern_kind == "matching":
        if n % 2 or n < 4:
            raise ValueError(f"matching patterns need even n >= 4, got {n}")
        patterns = list(perfect_matchings(n))
    elif pattern_kind == "near-matching":
        if n % 2 == 0 or n < 5:
            raise ValueError(f"near-matching patterns need odd n >= 5, got {n}")
        patterns = list(near_matchings(n))
    else:
        raise ValueError(f"unknown pattern kind {pattern_kind!r}")
    return pattern_kind, patterns[0], list(hamilton_cycles(n)), patterns


def _half_floor_bound(n: int) -> Fraction:
    h = n // 2
    return Fraction(math.factorial(n), math.factorial(h) * 2 ** h)


def cover_upper_bound(n: int, pattern_kind: str | PartitionShape, witness: Family | None = None) -> CoverBound:
    """Exhaustive containment counts for every copy of the pattern.

    ``stated`` is the closed form quoted for the bound: n!/(floor(n/2)! 2^floor(n/2))
    for (near-)matchings and |F(p)|/|C(p)| for shape patterns.  ``double_counting``
    is |universe| / |C(pattern)|, the bound the counting argument actually yields
    when containment is uniform.
    """
    label, base, universe, patterns = _pattern_setup(n, pattern_kind)
    masks = [G.mask for G in universe]
    class_sizes = [sum(1 for m in masks if m & P.mask == P.mask) for P in patterns]
    per_member = [sum(1 for P in patterns if m & P.mask == P.mask) for m in masks]
    base_size = sum(1 for m in masks if m & base.mask == base.mask)
    ratio = Fraction(len(universe), base_size)
    stated = ratio if label.startswith("pattern") else _half_floor_bound(n)
    cb = CoverBound(n, label, len(universe), len(patterns), base_size, len(set(class_sizes)) == 1,
                    per_member[0], len(set(per_member)) == 1, ratio, stated)
    if witness is not None:
        cb.witness_checked = True
        cb.witness_ok = meets_each_class_at_most_once(witness, patterns)
    return cb


def meets_each_class_at_most_once(fam: Family, patterns: Iterable[LabeledGraph]) -> bool:
    for P in patterns:
        if sum(1 for G in fam.members if G.mask & P.mask == P.mask) > 1:
            return False
    return True


def path_families(n: int, cycle_family: Family, edge: tuple[int, int] | None = None
                  ) -> tuple[Family, tuple[int, int]]:
    """Drop edge {a, b} from every member containing it.

    Without an explicit edge, the edge contained in the most members is used
    (ties go to the lexicographically smallest pair).
    """
    if edge is None:
        best = None
        for a, b in combinations(range(1, n + 1), 2):
            c = sum(1 for C in cycle_family.members if C.has_edge(a, b))
            if best is None or c > best[0]:
                best = (c, (a, b))
        edge = best[1]
    a, b = edge
    paths = tuple(C.without_edge(a, b) for C in cycle_family.members if C.has_edge(a, b))
    return Family(n, paths, cycle_family.predicate, "hamilton-paths"), edge


def incompatible_count(H: LabeledGraph, cycles: Iterable[LabeledGraph] | None = None) -> int:
    """Hamilton cycles (H included) whose common edges with H touch every vertex."""
    if not is_hamilton_cycle(H):
        raise ValueError("H must be a Hamilton cycle")
    pool = cycles if cycles is not None else hamilton_cycles(H.n)
    return sum(1 for C in pool if not isolated_vertices(intersection(H, C)))


TRANSITIVE_UNIVERSES = ("hamilton-cycles", "hamilton-paths", "perfect-matchings", "near-matchings",
                        "triangle-factors")


def _is_transitive(kind: str, n: int) -> bool:
    name, _, arg = kind.partition(":")
    if name in TRANSITIVE_UNIVERSES:
        return True
    if name == "two-regular":
        return bool(arg) or sum(1 for _ in partitions(n, 3)) == 1
    return False


def universe_upper_bound(kind: str, n: int, pred: DoublingPredicate) -> int | None:
    """A proven cap on family size from containment classes, or None when no argument applies.

    The classes are pattern copies without isolated vertices; two 2-regular
    graphs sharing one can never have a degree-4 vertex in their union, so
    this is valid for maximum-degree thresholds of 4 and above.
    """
    if not isinstance(pred, MaxDegreeAtLeast) or pred.d < 4:
        return None
    name, _, arg = kind.partition(":")
    if name == "hamilton-cycles":
        if n >= 4 and n % 2 == 0:
            return cover_upper_bound(n, "matching").certified_max
        if n >= 5:
            return cover_upper_bound(n, "near-matching").certified_max
        return 1
    if name == "two-regular":
        shapes = [parse_shape(arg)] if arg else list(partitions(n, 3))
        return sum(cover_upper_bound(n, p).certified_max for p in shapes)
    return None


def solve_universe(kind: str, n: int, pred: DoublingPredicate = DEFAULT_PREDICATE, budget: float = 300.0,
                   threads: int = 1, use_cover_bound: bool = True) -> SolveReport:
    candidates = canonical_order(universe(kind, n))
    ub = universe_upper_bound(kind, n, pred) if use_cover_bound else None
    return max_family_exact(candidates, pred, budget, universe_tag=kind, transitive=_is_transitive(kind, n),
                            upper_bound=ub, threads=threads)


@dataclass
class SandwichReport:
    n: int
    cycles: SolveReport
    paths: SolveReport
    best_edge: tuple[int, int]
    best_edge_paths: int
    required: int

    @property
    def lower_holds(self) -> bool:
        """M^H >= ceil(2 M / (n - 1))."""
        return self.paths.value >= self.required

    @property
    def cycles_dominate(self) -> bool:
        return self.cycles.value >= self.paths.value

    def data(self) -> dict:
        return {
            "n": self.n,
            "M_cycles": self.cycles.value, "M_cycles_status": self.cycles.status,
            "M_paths": self.paths.value, "M_paths_status": self.paths.status,
            "best_edge": list(self.best_edge), "best_edge_paths": self.best_edge_paths,
            "required_paths": self.required,
            "paths_lower_bound_holds": self.lower_holds,
            "cycles_ge_paths": self.cycles_dominate,
        }


def theorem3_sandwich(n: int, budget: float = 300.0, threads: int = 1) -> SandwichReport:
    cyc = solve_universe("hamilton-cycles", n, DEFAULT_PREDICATE, budget, threads)
    pth = solve_universe("hamilton-paths", n, DEFAULT_PREDICATE, budget, threads)
    fam, edge = path_families(n, cyc.witness)
    check = verify_family(fam)
    if not check:
        raise AssertionError(f"path family from edge {edge} is invalid: {check.reason}")
    required = -(-2 * cyc.value // (n - 1))
    return SandwichReport(n, cyc, pth, edge, len(fam), required)
