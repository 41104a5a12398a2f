"""Exact independent-set counting.

count_independent_sets splits the graph into connected components, branches
on a maximum-degree vertex inside each component via the deletion recursion
  count(G) = count(G - x) + count(G - x - N(x)),
and multiplies the per-component counts.  A brute-force subset enumerator
serves as the independent testing oracle.
"""

from __future__ import annotations

from .graphs import Graph, components, delete_closed

DEFAULT_BUDGET = 10_000_000
_MEMO_MAX_VERTICES = 24

BRUTE_FORCE_LIMIT = 30


class CountBudgetExceeded(RuntimeError):
    """The recursion node budget ran out; the graph is too large for the
    configured budget.  Never a wrong number."""


class _Counter:
    __slots__ = ("nodes", "budget", "memo")

    def __init__(self, budget: int):
        self.nodes = 0
        self.budget = budget
        self.memo: dict[tuple[tuple[int, ...], ...], int] = {}

    def count_graph(self, g: Graph) -> int:
        total = 1
        for comp, _ in components(g):
            total *= self.count_component(comp)
        return total

    def count_component(self, g: Graph) -> int:
        self.nodes += 1
        if self.nodes > self.budget:
            raise CountBudgetExceeded(
                f"graph too large: counting exceeded the budget of {self.budget} recursion nodes"
            )
        if g.n == 0:
            return 1
        use_memo = g.n <= _MEMO_MAX_VERTICES
        if use_memo:
            cached = self.memo.get(g.adjacency)
            if cached is not None:
                return cached
        # branch vertex: highest degree, ties by lowest index
        best = 0
        best_deg = len(g.adjacency[0])
        for v in range(1, g.n):
            d = len(g.adjacency[v])
            if d > best_deg:
                best, best_deg = v, d
        if best_deg == 0:
            result = 1 << g.n  # all vertices isolated
        else:
            (g1, _), (g2, _) = delete_closed(g, best)
            result = self.count_graph(g1) + self.count_graph(g2)
        if use_memo:
            self.memo[g.adjacency] = result
        return result


def count_independent_sets(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact number of independent sets of g (the empty set included)."""
    return _Counter(budget).count_graph(g)


def count_bruteforce(g: Graph) -> int:
    """Testing oracle: check all 2^n subsets directly (n <= 30)."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at n <= {BRUTE_FORCE_LIMIT}, got n={g.n}")
    masks = [0] * g.n
    for v in range(g.n):
        m = 0
        for w in g.adjacency[v]:
            m |= 1 << w
        masks[v] = m
    count = 0
    for subset in range(1 << g.n):
        rest = subset
        ok = True
        while rest:
            v = (rest & -rest).bit_length() - 1
            if masks[v] & subset:
                ok = False
                break
            rest &= rest - 1
        if ok:
            count += 1
    return count
