"""Brute-force reference computations on plain Python edge sets.

Nothing here imports the package, so these stay independent of the code
they check.
"""

from itertools import combinations, permutations


def all_pairs(n):
    return list(combinations(range(1, n + 1), 2))


def degrees(n, edges):
    d = [0] * (n + 1)
    for u, v in edges:
        d[u] += 1
        d[v] += 1
    return d[1:]


def connected(n, edges):
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {1}, [1]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == n


def two_regular_edge_sets(n):
    """Every n-edge subset of K_n with all degrees 2."""
    return [frozenset(es) for es in combinations(all_pairs(n), n) if all(d == 2 for d in degrees(n, es))]


def hamilton_cycle_edge_sets(n):
    return [es for es in two_regular_edge_sets(n) if connected(n, es)]


def hamilton_path_edge_sets(n):
    out = set()
    for perm in permutations(range(1, n + 1)):
        out.add(frozenset(tuple(sorted(perm[i:i + 2])) for i in range(n - 1)))
    return out


def perfect_matching_edge_sets(n):
    return [frozenset(es) for es in combinations(all_pairs(n), n // 2) if all(d == 1 for d in degrees(n, es))]


def triangle_factor_count(n):
    def rec(free):
        if not free:
            return 1
        rest = free[1:]  # free[0] joins some pair from the rest
        total = 0
        for a, b in combinations(rest, 2):
            total += rec([x for x in rest if x not in (a, b)])
        return total
    return rec(list(range(1, n + 1)))


def union_max_degree(n, A, B):
    return max(degrees(n, set(A) | set(B)))


def max_family_bruteforce(members, compatible):
    """Largest subset with all pairs compatible, by checking every subset (small inputs only)."""
    members = list(members)
    N = len(members)
    ok = [[i != j and compatible(members[i], members[j]) for j in range(N)] for i in range(N)]
    best = 1 if N else 0
    for mask in range(1, 1 << N):
        idx = [i for i in range(N) if mask >> i & 1]
        if len(idx) <= best:
            continue
        if all(ok[i][j] for i, j in combinations(idx, 2)):
            best = len(idx)
    return best


def partition_count_enumerated(n):
    def rec(remaining, largest):
        if remaining == 0:
            return 1
        return sum(rec(remaining - k, k) for k in range(1, min(remaining, largest) + 1))
    return rec(n, n)
