"""Formula-versus-enumeration checks behind ``degdouble verify``.

Each check returns a list of row dicts.  Rows carrying ``"pass": False`` are
assertion failures; rows with a ``"discrepancy"`` flag are reported findings
that do not fail the check.
"""

from __future__ import annotations

import math
from collections import Counter

from .bounds import (
    decide,
    eq1_count,
    hardy_ramanujan,
    near_count,
    partition_count,
    shape_bounds,
)
from .enumeration import (
    hamilton_cycles,
    members_containing,
    minimal_coverings,
    near_matchings,
    partitions,
    pattern_P,
    perfect_matchings,
    two_regular_graphs,
)
from .families import cover_upper_bound, solve_universe
from .graph_core import cycle_graph

CHECKS = ("eq1", "near", "coverings", "uniformity", "thm2-shapes", "partitions")


def check_eq1(n: int) -> list[dict]:
    P = next(perfect_matchings(n))
    oracle = sum(1 for _ in members_containing(P, hamilton_cycles(n)))
    formula = eq1_count(n)
    return [{"check": "eq1", "n": n, "expected": "(n/2)! 2^(n/2) / n",
             "formula": formula, "oracle": oracle, "pass": formula == oracle}]


def check_near(n: int) -> list[dict]:
    P = next(near_matchings(n))
    oracle = sum(1 for _ in members_containing(P, hamilton_cycles(n)))
    formula = near_count(n)
    return [{"check": "near", "n": n, "expected": "floor(n/2)! 2^floor(n/2) / (n-1)",
             "formula": formula, "oracle": oracle, "pass": formula == oracle}]


def check_coverings(n: int) -> list[dict]:
    """Minimal coverings of the n-cycle by component count s, next to C(s, n-2s); and Hamilton
    cycles through one covering next to 2^s (s-1)!."""
    H = cycle_graph(n, list(range(1, n + 1)))
    covs = list(minimal_coverings(H))
    cycles = list(hamilton_cycles(n))
    by_s = Counter(c.component_count for c in covs)
    lo, hi = -(-n // 3), n // 2
    rows = []
    for s in range(lo, hi + 1):
        group = [c for c in covs if c.component_count == s]
        invariants = all(c.two_edge_paths == n - 2 * s for c in group)
        through = sum(1 for _ in members_containing(group[0].edges, cycles)) if group else 0
        f_cov = math.comb(s, n - 2 * s)
        f_through = 2 ** s * math.factorial(s - 1)
        rows.append({"check": "coverings", "n": n, "s": s,
                     "expected": "C(s, n-2s) coverings; 2^s (s-1)! cycles through each",
                     "coverings_oracle": by_s.get(s, 0), "coverings_formula": f_cov,
                     "cycles_through_oracle": through, "cycles_through_formula": f_through,
                     "discrepancy": by_s.get(s, 0) != f_cov or through != f_through,
                     "pass": invariants})
    out_of_range = [s for s in by_s if not lo <= s <= hi]
    if out_of_range:
        rows.append({"check": "coverings", "n": n, "s": out_of_range, "expected": f"{lo} <= s <= {hi}",
                     "coverings_oracle": sum(by_s[s] for s in out_of_range), "coverings_formula": 0,
                     "pass": False})
    return rows


def check_uniformity(n: int) -> list[dict]:
    cycles = [C.mask for C in hamilton_cycles(n)]
    if n % 2 == 0:
        patterns, label = [P.mask for P in perfect_matchings(n)], "perfect matchings per cycle"
    else:
        patterns, label = [P.mask for P in near_matchings(n)], "near-matchings per cycle"
    per_cycle = Counter(sum(1 for p in patterns if c & p == p) for c in cycles)
    values = sorted(per_cycle)
    uniform = len(values) == 1
    ok = uniform and (n % 2 == 1 or values == [2])
    return [{"check": "uniformity", "n": n, "expected": label + (" == 2" if n % 2 == 0 else " constant"),
             "per_cycle": values[0] if uniform else values, "cycles": len(cycles), "patterns": len(patterns),
             "pass": ok}]


def check_thm2_shapes(n: int, budget: float = 60.0) -> list[dict]:
    rows = []
    for p in partitions(n, 3):
        sb = shape_bounds(p)
        F = list(two_regular_graphs(n, p))
        C = sum(1 for _ in members_containing(pattern_P(p), F))
        rep = solve_universe(f"two-regular:{p}", n, budget=budget)
        cb = cover_upper_bound(n, p)
        ratio = cb.double_counting
        flags = {
            "f_ok": len(F) <= sb.f_upper,
            "c_ok": C >= sb.c_lower,
            "m_cover_ok": rep.value <= ratio,
            "m_upper_ok": rep.value <= sb.m_upper,
            "kl_ok": sb.kl_at_least_third,
        }
        rows.append({"check": "thm2-shapes", "n": n, "shape": str(p), "k": sb.k, "l": sb.l,
                     "expected": "|F| <= f_upper; |C| >= c_lower; M <= |F|/|C|; M <= m_upper; k+l >= n/3",
                     "F": len(F), "f_upper": sb.f_upper, "C": C, "c_lower": sb.c_lower,
                     "M": rep.value, "M_status": rep.status, "F_over_C": ratio, "m_upper": sb.m_upper,
                     **flags, "pass": all(flags.values())})
    return rows


def check_partitions(n: int) -> list[dict]:
    rows = []
    for m in range(1, n + 1):
        direct = sum(1 for _ in partitions(m, 1))
        rec = partition_count(m)
        cmp, hr = decide(lambda prec: hardy_ramanujan(m, prec), rec)
        lo, hi = hr.render()
        # p(m) < e^sqrt(m)/m iff the enclosure lies strictly above p(m)
        holds = None if cmp is None else cmp > 0
        rows.append({"check": "partitions", "n": m, "expected": "recurrence == enumeration; p(n) < e^sqrt(n)/n",
                     "recurrence": rec, "enumeration": direct, "hr_lo": lo, "hr_hi": hi,
                     "hr_holds": holds, "discrepancy": holds is False, "pass": rec == direct})
    return rows


def run_check(name: str, n: int, budget: float = 60.0) -> list[dict]:
    if name == "eq1":
        return check_eq1(n)
    if name == "near":
        return check_near(n)
    if name == "coverings":
        return check_coverings(n)
    if name == "uniformity":
        return check_uniformity(n)
    if name == "thm2-shapes":
        return check_thm2_shapes(n, budget)
    if name == "partitions":
        return check_partitions(n)
    raise KeyError(name)
