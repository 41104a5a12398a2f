"""Exact verification of the d-regular case.

Rooted at any vertex of a d-regular bipartite graph, the reduced goodness
inequality collapses to the pure integer statement

    (2^(d+1) - 1)^(k-(d-1)) * 2^(d(d-1))  >=  prod_i (2^d + 2^(x_i) - 1)

over all level-2 counts k in [d-1, d(d-1)] and all profiles
(x_1 >= ... >= x_k) in {0..d-1}^k with sum x_i = kd - d(d-1), where x_i is
the number of level-3 neighbors of the i-th level-2 vertex.  Equality must
occur exactly once, at k = d-1 with every x_i = 0.  Profile counts are tiny
for d <= 5, so the check is exhaustive big-integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .products import Outcome, Verdict


@dataclass(frozen=True)
class RegularProfile:
    d: int
    k: int
    xs: tuple[int, ...]  # non-increasing, entries in {0..d-1}, sum = kd - d(d-1)

    def is_equality_profile(self) -> bool:
        return self.k == self.d - 1 and all(x == 0 for x in self.xs)


def _partitions(total: int, parts: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of length `parts` with entries in [0, bound]
    summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // parts)  # ceil: the first (largest) entry must reach the average
    for first in range(min(bound, total), max(lo, 0) - 1, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first, *rest)


def enumerate_profiles(d: int) -> Iterator[RegularProfile]:
    if not 1 <= d <= 5:
        raise ValueError(f"d must be in 1..5, got {d}")
    for k in range(d - 1, d * (d - 1) + 1):
        total = k * d - d * (d - 1)
        for xs in _partitions(total, k, d - 1):
            yield RegularProfile(d, k, xs)


def profile_sides(p: RegularProfile) -> tuple[int, int]:
    """(lhs, rhs) integers of the reduced regular inequality."""
    d, k = p.d, p.k
    lhs = ((1 << (d + 1)) - 1) ** (k - (d - 1)) * (1 << (d * (d - 1)))
    rhs = 1
    for x in p.xs:
        rhs *= (1 << d) + (1 << x) - 1
    return lhs, rhs


def check_profile(p: RegularProfile) -> Verdict:
    lhs, rhs = profile_sides(p)
    if lhs > rhs:
        outcome = Outcome.STRICTLY_GREATER
    elif lhs == rhs:
        outcome = Outcome.EQUAL
    else:
        outcome = Outcome.STRICTLY_LESS
    return Verdict(outcome, "exact", None, lhs, (), {"lhs": lhs, "rhs": rhs,
                                                     "d": p.d, "k": p.k, "xs": list(p.xs)})


@dataclass(frozen=True)
class RegularReport:
    d: int
    profiles: int
    strict: int
    equalities: tuple[RegularProfile, ...]
    violations: tuple[RegularProfile, ...]

    @property
    def passed(self) -> bool:
        # exactly one equality, at k = d-1 with all x_i = 0, and nothing below
        return (
            not self.violations
            and len(self.equalities) == 1
            and self.equalities[0].is_equality_profile()
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "profiles": self.profiles,
            "strict": self.strict,
            "equalities": [
                {"k": p.k, "xs": list(p.xs)} for p in self.equalities
            ],
            "violations": [
                {"k": p.k, "xs": list(p.xs)} for p in self.violations
            ],
            "verdict": "PASS" if self.passed else "FAIL",
        }


def verify_regular(d: int) -> RegularReport:
    """Check every profile; PASS iff all strictly greater except the single
    equality at (k = d-1, all x_i = 0)."""
    profiles = 0
    strict = 0
    equalities = []
    violations = []
    for p in enumerate_profiles(d):
        profiles += 1
        outcome = check_profile(p).outcome
        if outcome == Outcome.STRICTLY_GREATER:
            strict += 1
        elif outcome == Outcome.EQUAL:
            equalities.append(p)
        else:
            violations.append(p)
    return RegularReport(d, profiles, strict, tuple(equalities), tuple(violations))


def g_value(d: int, x: int) -> int:
    return (1 << d) + (1 << x) - 1


def check_g_ratio_monotone(d: int) -> bool:
    """g(x+1)/g(x) strictly increasing over x in {0..d}, verified by the
    cross-multiplied integer inequality g(x+2) * g(x) > g(x+1)^2."""
    if not 1 <= d <= 5:
        raise ValueError(f"d must be in 1..5, got {d}")
    return all(
        g_value(d, x + 2) * g_value(d, x) > g_value(d, x + 1) ** 2
        for x in range(0, d - 1)
    )


def exchange_increases(d: int, xi: int, xj: int) -> bool:
    """The exchange step (xi, xj) -> (xi+1, xj-1) strictly increases the
    product g(xi) * g(xj) whenever xi >= xj >= 1."""
    return g_value(d, xi + 1) * g_value(d, xj - 1) > g_value(d, xi) * g_value(d, xj)
