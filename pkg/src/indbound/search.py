"""Exhaustive certified searches over rooted local configurations.

Three searches back the main theorem:

  * statement 2 (max-degree root, Delta <= 4): every configuration rooted at
    a maximum-degree vertex certifies A >= B + C, with equality exactly on
    the complete-bipartite shapes;
  * statement 1 stage 1 (min-degree root, Delta = 5): all configurations
    certify except a fixed set of failing patterns, whose level-0..3
    appearances must match the fourteen expected exceptional neighborhoods;
  * statement 1 stage 2: around every exceptional pattern, re-rooting at any
    neighbor of the failed root certifies strictly, over every completion of
    the structure the pattern does not determine.

The searches run on degree-class aggregates: the three products of the
reduced inequality depend on a level-2 vertex only through its total degree
and how many neighbors it has in each level-1 degree class, never on which
same-degree vertices those are.  Aggregates whose per-class demands are not
realizable as a simple bipartite graph (Gale-Ryser) are skipped, so every
certified aggregate corresponds to at least one concrete configuration and
every concrete configuration to exactly one aggregate.  The rare
interesting aggregates (equal, failing, undecided) are expanded back into
canonical labeled configurations for reporting and for stage 2.

The space is sharded by (root degree, level-1 degree multiset); shards are
independent, so workers run in parallel and reports merge deterministically.
"""

from __future__ import annotations

import enum
import itertools
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .local import (
    LocalConfig,
    Record,
    canonical_config,
    canonical_tuple,
    config_describe,
    expand_appearances,
    leveled_canonical,
)
from .products import PRECISION_CAP, PRECISION_START, Outcome, certify_sum_outcome
from .reference import expected_appearance_keys


class RootRule(enum.Enum):
    MAX_DEGREE = "max_degree_root"  # the root has maximum degree
    MIN_DEGREE = "min_degree_root"  # the root has minimum degree


def _degree_bounds(rule: RootRule, d0: int, delta_eff: int) -> tuple[int, int]:
    if rule is RootRule.MAX_DEGREE:
        return 1, d0
    return max(1, d0), delta_eff


# --------------------------------------------------------------------------
# labeled enumeration (the exact per-vertex model)


def _record_multisets(
    quotas: Sequence[int], b_lo: int, b_hi: int
) -> Iterator[tuple[Record, ...]]:
    """All multisets of records (b, nonempty subset of positions) whose
    per-position attachment counts equal `quotas`, with
    b in [max(|subset|, b_lo), b_hi].  Deterministic order."""
    n = len(quotas)
    if not any(quotas):
        yield ()
        return
    types: list[tuple[int, tuple[int, ...], int]] = []  # (mask, bits, b)
    for mask in range(1, 1 << n):
        bits = tuple(i for i in range(n) if mask >> i & 1)
        lo = max(len(bits), b_lo)
        for b in range(lo, b_hi + 1):
            types.append((mask, bits, b))
    cover = [0] * (len(types) + 1)
    for i in range(len(types) - 1, -1, -1):
        cover[i] = cover[i + 1] | types[i][0]
    rem = list(quotas)
    records: list[Record] = []

    def rec(i: int, rem_mask: int):
        if rem_mask == 0:
            yield tuple(records)
            return
        if i == len(types) or rem_mask & ~cover[i]:
            return
        mask, bits, b = types[i]
        maxc = min(rem[u] for u in bits) if mask & rem_mask == mask else 0
        yield from rec(i + 1, rem_mask)
        for c in range(1, maxc + 1):
            new_mask = rem_mask
            for u in bits:
                rem[u] -= c
                if rem[u] == 0:
                    new_mask &= ~(1 << u)
            records.extend([(b, bits)] * c)
            yield from rec(i + 1, new_mask)
            del records[-c:]
            for u in bits:
                rem[u] += c

    rem_mask = 0
    for i, q in enumerate(rem):
        if q:
            rem_mask |= 1 << i
    yield from rec(0, rem_mask)


def _canonical_min(d0: int, degrees: tuple[int, ...], records: tuple[Record, ...]) -> bool:
    """True iff `records` (sorted) is lexicographically minimal among the
    relabelings of equal-degree level-1 vertices; degrees must arrive sorted
    non-increasing, so this equals full canonicity."""
    blocks = []
    start = 0
    for i in range(1, d0 + 1):
        if i == d0 or degrees[i] != degrees[start]:
            if i - start > 1:
                blocks.append(range(start, i))
            start = i
    if not blocks:
        return True
    pools = [list(itertools.permutations(block)) for block in blocks]
    for choice in itertools.product(*pools):
        mapping = list(range(d0))
        identity = True
        for block, perm in zip(blocks, choice):
            for src, dst in zip(block, perm):
                mapping[src] = dst
                if src != dst:
                    identity = False
        if identity:
            continue
        mapped = tuple(
            sorted((b, tuple(sorted(mapping[u] for u in nbrs))) for b, nbrs in records)
        )
        if mapped < records:
            return False
    return True


def degree_tuples(rule: RootRule, d0: int, delta_eff: int) -> list[tuple[int, ...]]:
    """Non-increasing level-1 degree tuples allowed by the root rule."""
    if d0 == 0:
        return [()]
    lo, hi = _degree_bounds(rule, d0, delta_eff)
    if lo > hi:
        return []
    return [
        tuple(c)
        for c in itertools.combinations_with_replacement(range(hi, lo - 1, -1), d0)
    ]


def enumerate_configs(delta_eff: int, rule: RootRule, d0: int) -> Iterator[LocalConfig]:
    """Every labeled configuration with the given root degree satisfying the
    root rule, one canonical representative each, in deterministic order.

    This is the exact per-vertex model; the large searches run on the
    degree-class aggregation instead and only expand back to this model for
    the interesting cases."""
    if delta_eff > 5:
        raise ValueError("searches are bounded at degree 5")
    if not 0 <= d0 <= delta_eff:
        raise ValueError(f"root degree {d0} out of range for delta_eff={delta_eff}")
    if d0 == 0:
        yield LocalConfig(delta_eff, 0, (), ())
        return
    lo, hi = _degree_bounds(rule, d0, delta_eff)
    for degrees in degree_tuples(rule, d0, delta_eff):
        quotas = [d - 1 for d in degrees]
        for records in _record_multisets(quotas, lo, hi):
            ordered = tuple(sorted(records))
            if _canonical_min(d0, degrees, ordered):
                yield LocalConfig(delta_eff, d0, degrees, ordered)


# --------------------------------------------------------------------------
# degree-class aggregation


@dataclass(frozen=True)
class AggConfig:
    """A configuration up to exchanging equal-degree level-1 vertices.

    class_degrees are the distinct level-1 degrees (descending) with their
    multiplicities in class_sizes; each level-2 record is (b, cvec) where
    cvec[i] counts neighbors in class i, carried with its multiplicity."""

    delta_eff: int
    d0: int
    class_degrees: tuple[int, ...]
    class_sizes: tuple[int, ...]
    records: tuple[tuple[tuple[int, tuple[int, ...]], int], ...]

    def degree_multiset(self) -> tuple[int, ...]:
        out = []
        for d, s in zip(self.class_degrees, self.class_sizes):
            out.extend([d] * s)
        return tuple(out)


def agg_fcounts(agg: AggConfig):
    """The same f-factor multiplicity maps config_fcounts builds, computed
    from the aggregate."""
    ca: dict[tuple[int, int], int] = {}
    cb: dict[tuple[int, int], int] = {}
    cc: dict[tuple[int, int], int] = {}

    def bump(counts, a, b, m):
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + m

    for d, s in zip(agg.class_degrees, agg.class_sizes):
        bump(ca, agg.d0, d, s)
    iso_c = 0
    for (b, cvec), cnt in agg.records:
        m = sum(cvec)
        for d, c in zip(agg.class_degrees, cvec):
            if c:
                bump(ca, d, b, c * cnt)
                bump(cb, d - 1, b, c * cnt)
        t = b - m
        if t:
            bump(ca, b, agg.delta_eff, t * cnt)
            bump(cb, b, agg.delta_eff, t * cnt)
            bump(cc, t, agg.delta_eff, t * cnt)
        else:
            iso_c += cnt
    iso_a = 1 if agg.d0 == 0 else 0
    iso_b = 0
    for d, s in zip(agg.class_degrees, agg.class_sizes):
        if d == 1:
            iso_b += s
    return ca, iso_a, cb, iso_b, cc, iso_c


def agg_outcome(
    agg: AggConfig,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> tuple[Outcome, str, int | None]:
    ca, iso_a, cb, iso_b, cc, iso_c = agg_fcounts(agg)
    return certify_sum_outcome(
        ca, iso_a, cb, iso_b, cc, iso_c,
        precision_start=precision_start, precision_cap=precision_cap,
    )


def agg_is_extremal(agg: AggConfig) -> bool:
    """Aggregate version of the complete-bipartite-or-isolated test."""
    if agg.d0 == 0:
        return True
    k = sum(cnt for _, cnt in agg.records)
    if any(d != 1 + k for d in agg.class_degrees):
        return False
    return all(
        b == sum(cvec) == agg.d0 for (b, cvec), _ in agg.records
    )


def gale_ryser_ok(n: int, q: int, demands: list[int]) -> bool:
    """Existence of a simple bipartite graph with n left vertices of degree
    exactly q and the given right-side degree demands (each <= n)."""
    if n == 0:
        return not demands or all(d == 0 for d in demands)
    if sum(demands) != n * q:
        return False
    if any(d > n for d in demands):
        return False
    for k in range(1, n + 1):
        if k * q > sum(min(d, k) for d in demands):
            return False
    return True


def agg_realizable(agg: AggConfig) -> bool:
    """Per degree class, the per-vertex upward quotas must be realizable
    against the record demands (classes are independent: edges to different
    classes never collide)."""
    for i, (d, s) in enumerate(zip(agg.class_degrees, agg.class_sizes)):
        demands = []
        for (b, cvec), cnt in agg.records:
            if cvec[i]:
                demands.extend([cvec[i]] * cnt)
        if not gale_ryser_ok(s, d - 1, demands):
            return False
    return True


def _agg_enum_for_degrees(
    delta_eff: int, rule: RootRule, d0: int, degrees: tuple[int, ...]
) -> Iterator[tuple[bool, AggConfig]]:
    """All aggregate configurations for one level-1 degree multiset; yields
    (realizable, aggregate).  Deterministic order, no duplicates (distinct
    degrees fix the class order, so aggregates have no leftover symmetry)."""
    if d0 == 0:
        yield True, AggConfig(delta_eff, 0, (), (), ())
        return
    lo, hi = _degree_bounds(rule, d0, delta_eff)
    class_degrees = tuple(sorted(set(degrees), reverse=True))
    class_sizes = tuple(degrees.count(d) for d in class_degrees)
    quotas = tuple(s * (d - 1) for d, s in zip(class_degrees, class_sizes))
    types: list[tuple[tuple[int, ...], int]] = []
    for cvec in itertools.product(*(range(s + 1) for s in class_sizes)):
        m = sum(cvec)
        if m == 0:
            continue
        for b in range(max(m, lo), hi + 1):
            types.append((cvec, b))
    ncls = len(class_degrees)

    def rec(i: int, rem: tuple[int, ...], acc: list):
        if all(r == 0 for r in rem):
            agg = AggConfig(delta_eff, d0, class_degrees, class_sizes, tuple(acc))
            yield agg_realizable(agg), agg
            return
        if i == len(types):
            return
        # prune: remaining types must be able to cover what remains
        remaining_cover = [False] * ncls
        for cvec, _ in types[i:]:
            for j in range(ncls):
                if cvec[j]:
                    remaining_cover[j] = True
        if any(rem[j] and not remaining_cover[j] for j in range(ncls)):
            return
        cvec, b = types[i]
        maxc = min((rem[j] // cvec[j] for j in range(ncls) if cvec[j]), default=0)
        yield from rec(i + 1, rem, acc)
        for c in range(1, maxc + 1):
            nrem = tuple(rem[j] - c * cvec[j] for j in range(ncls))
            acc.append(((b, cvec), c))
            yield from rec(i + 1, nrem, acc)
            acc.pop()

    yield from rec(0, quotas, [])


def aggregate_of_config(cfg: LocalConfig) -> AggConfig:
    """The degree-class aggregate a labeled configuration belongs to."""
    class_degrees = tuple(sorted(set(cfg.l1_degrees), reverse=True))
    class_of = {d: i for i, d in enumerate(class_degrees)}
    class_sizes = tuple(cfg.l1_degrees.count(d) for d in class_degrees)
    counted: dict[tuple[int, tuple[int, ...]], int] = {}
    for b, nbrs in cfg.l2:
        cvec = [0] * len(class_degrees)
        for u in nbrs:
            cvec[class_of[cfg.l1_degrees[u]]] += 1
        key = (b, tuple(cvec))
        counted[key] = counted.get(key, 0) + 1
    records = tuple(sorted(counted.items()))
    return AggConfig(cfg.delta_eff, cfg.d0, class_degrees, class_sizes, records)


def labeled_configs_for_aggregate(agg: AggConfig) -> list[LocalConfig]:
    """All canonical labeled configurations realizing an aggregate.  Only
    used on the rare interesting aggregates, which are small."""
    if agg.d0 == 0:
        return [LocalConfig(agg.delta_eff, 0, (), ())]
    degrees = agg.degree_multiset()
    class_members = []
    start = 0
    for s in agg.class_sizes:
        class_members.append(tuple(range(start, start + s)))
        start += s
    flat: list[tuple[int, tuple[int, ...]]] = []
    for (b, cvec), cnt in agg.records:
        flat.extend([(b, cvec)] * cnt)
    quotas = [d - 1 for d in degrees]
    found: dict[tuple, LocalConfig] = {}

    def rec(idx: int, acc: list[Record]):
        if idx == len(flat):
            cfg = canonical_config(
                LocalConfig(agg.delta_eff, agg.d0, degrees, tuple(sorted(acc)))
            )
            found.setdefault(canonical_tuple(cfg), cfg)
            return
        b, cvec = flat[idx]
        per_class_choices = []
        for j, c in enumerate(cvec):
            if not c:
                continue
            avail = [u for u in class_members[j] if quotas[u] > 0]
            if len(avail) < c:
                return
            per_class_choices.append(list(itertools.combinations(avail, c)))
        for combo in itertools.product(*per_class_choices):
            nbrs = tuple(sorted(u for group in combo for u in group))
            for u in nbrs:
                quotas[u] -= 1
            acc.append((b, nbrs))
            rec(idx + 1, acc)
            acc.pop()
            for u in nbrs:
                quotas[u] += 1

    rec(0, [])
    return [found[k] for k in sorted(found)]


# --------------------------------------------------------------------------
# shard execution


@dataclass
class ShardResult:
    raw: int = 0
    kept: int = 0
    unrealizable: int = 0
    strict: int = 0
    equal: int = 0
    failing: int = 0
    undecided: int = 0
    equal_configs: list[LocalConfig] = field(default_factory=list)
    failing_configs: list[LocalConfig] = field(default_factory=list)
    undecided_configs: list[LocalConfig] = field(default_factory=list)
    inconsistencies: list[LocalConfig] = field(default_factory=list)
    precision_stats: dict[str, int] = field(default_factory=dict)

    def absorb(self, other: "ShardResult") -> None:
        self.raw += other.raw
        self.kept += other.kept
        self.unrealizable += other.unrealizable
        self.strict += other.strict
        self.equal += other.equal
        self.failing += other.failing
        self.undecided += other.undecided
        self.equal_configs.extend(other.equal_configs)
        self.failing_configs.extend(other.failing_configs)
        self.undecided_configs.extend(other.undecided_configs)
        self.inconsistencies.extend(other.inconsistencies)
        for k, v in other.precision_stats.items():
            self.precision_stats[k] = self.precision_stats.get(k, 0) + v


def _method_key(method: str, precision: int | None) -> str:
    return method if precision is None else f"{method}_{precision}"


def _agg_search_shard(args) -> ShardResult:
    delta_eff, rule_value, d0, degrees, precision_start, precision_cap = args
    rule = RootRule(rule_value)
    result = ShardResult()
    for realizable, agg in _agg_enum_for_degrees(delta_eff, rule, d0, degrees):
        result.raw += 1
        if not realizable:
            result.unrealizable += 1
            continue
        result.kept += 1
        outcome, method, precision = agg_outcome(agg, precision_start, precision_cap)
        key = _method_key(method, precision)
        result.precision_stats[key] = result.precision_stats.get(key, 0) + 1
        structural = agg_is_extremal(agg)
        if outcome is Outcome.STRICTLY_GREATER:
            result.strict += 1
        elif outcome is Outcome.EQUAL:
            result.equal += 1
            result.equal_configs.extend(labeled_configs_for_aggregate(agg))
        elif outcome is Outcome.STRICTLY_LESS:
            result.failing += 1
            result.failing_configs.extend(labeled_configs_for_aggregate(agg))
        else:
            result.undecided += 1
            result.undecided_configs.extend(labeled_configs_for_aggregate(agg))
        if (outcome is Outcome.EQUAL) != structural:
            result.inconsistencies.extend(labeled_configs_for_aggregate(agg))
    return result


def _run_shards(shards: list, worker, jobs: int) -> ShardResult:
    merged = ShardResult()
    if jobs > 1 and len(shards) > 1:
        with multiprocessing.Pool(jobs) as pool:
            for res in pool.imap(worker, shards, chunksize=1):
                merged.absorb(res)
    else:
        for args in shards:
            merged.absorb(worker(args))
    return merged


def default_jobs() -> int:
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True, eq=False)
class SearchReport:
    statement: str
    delta: int
    root_rule: str
    configs_enumerated: int
    configs_after_dedup: int
    tally: dict
    equality_patterns: tuple[LocalConfig, ...]
    exceptional_patterns: tuple[LocalConfig, ...]
    undecided_patterns: tuple[LocalConfig, ...]
    equality_inconsistencies: tuple[LocalConfig, ...]
    precision_stats: dict
    wall_time_s: float
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "statement": self.statement,
            "delta": self.delta,
            "root_rule": self.root_rule,
            "configs_enumerated": self.configs_enumerated,
            "configs_after_dedup": self.configs_after_dedup,
            "tally": dict(self.tally),
            "equality_patterns": [_config_json(c) for c in self.equality_patterns],
            "exceptional_patterns": [_config_json(c) for c in self.exceptional_patterns],
            "undecided_patterns": [_config_json(c) for c in self.undecided_patterns],
            "equality_inconsistencies": [_config_json(c) for c in self.equality_inconsistencies],
            "precision_stats": dict(sorted(self.precision_stats.items())),
            "verdict": "PASS" if self.passed else "FAIL",
            "timing": {"wall_time_s": self.wall_time_s},
        }
        out.update(self.extra)
        return out


def _config_json(cfg: LocalConfig) -> dict:
    return {
        "delta_eff": cfg.delta_eff,
        "d0": cfg.d0,
        "l1_degrees": list(cfg.l1_degrees),
        "l2": [{"b": b, "level1_neighbors": list(nbrs)} for b, nbrs in cfg.l2],
        "description": config_describe(cfg),
    }


def _sorted_unique(configs: list[LocalConfig]) -> tuple[LocalConfig, ...]:
    seen = {}
    for c in configs:
        seen.setdefault(canonical_tuple(c), c)
    return tuple(seen[k] for k in sorted(seen))


def _make_shards(delta_eff_of, rule: RootRule, d0_range, precision_start, precision_cap):
    shards = []
    for d0 in d0_range:
        delta_eff = delta_eff_of(d0)
        for degrees in degree_tuples(rule, d0, delta_eff):
            shards.append((delta_eff, rule.value, d0, degrees, precision_start, precision_cap))
    return shards


def verify_statement2(
    delta: int,
    jobs: int | None = None,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> SearchReport:
    """Max-degree-root search: for every root degree d0 <= delta, pad level 3
    to d0 (the root has maximum degree) and certify every configuration.
    PASS means no failures, no undecided, and equality exactly on the
    complete-bipartite configurations."""
    if not 1 <= delta <= 4:
        raise ValueError("statement 2 is verified for delta in 1..4")
    jobs = jobs or default_jobs()
    t0 = time.monotonic()
    shards = _make_shards(lambda d0: d0, RootRule.MAX_DEGREE, range(0, delta + 1),
                          precision_start, precision_cap)
    merged = _run_shards(shards, _agg_search_shard, jobs)
    passed = (
        merged.failing == 0
        and merged.undecided == 0
        and not merged.inconsistencies
    )
    return SearchReport(
        statement="statement2",
        delta=delta,
        root_rule=RootRule.MAX_DEGREE.value,
        configs_enumerated=merged.raw,
        configs_after_dedup=merged.kept,
        tally={
            "strict": merged.strict,
            "equal": merged.equal,
            "failing": merged.failing,
            "undecided": merged.undecided,
        },
        equality_patterns=_sorted_unique(merged.equal_configs),
        exceptional_patterns=_sorted_unique(merged.failing_configs),
        undecided_patterns=_sorted_unique(merged.undecided_configs),
        equality_inconsistencies=_sorted_unique(merged.inconsistencies),
        precision_stats=merged.precision_stats,
        wall_time_s=time.monotonic() - t0,
        passed=passed,
        extra={
            "jobs": jobs,
            "aggregation": "level-1 degree classes",
            "unrealizable_skipped": merged.unrealizable,
        },
    )


def verify_statement1_stage1(
    delta: int = 5,
    jobs: int | None = None,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> SearchReport:
    """Min-degree-root search at Delta = 5 over root degrees 0..4 (a
    non-regular graph has a vertex of degree at most 4; regular graphs are
    handled by the regular verifier).  Failing configurations are collected
    as exceptional patterns; PASS requires no undecided configurations,
    equality exactly on the complete-bipartite shapes, and the level-0..3
    appearances of the failing patterns to match the fourteen expected
    exceptional neighborhoods."""
    if delta != 5:
        raise ValueError("stage 1 is defined for delta = 5")
    jobs = jobs or default_jobs()
    t0 = time.monotonic()
    shards = _make_shards(lambda d0: 5, RootRule.MIN_DEGREE, range(0, 5),
                          precision_start, precision_cap)
    merged = _run_shards(shards, _agg_search_shard, jobs)
    exceptional = _sorted_unique(merged.failing_configs)
    appearances = []
    for cfg in exceptional:
        appearances.extend(expand_appearances(cfg))
    appearance_keys = {leveled_canonical(*ap.leveled_graph()) for ap in appearances}
    expected = expected_appearance_keys()
    matches_expected = appearance_keys == expected and len(appearances) == len(expected)
    passed = (
        merged.undecided == 0
        and not merged.inconsistencies
        and matches_expected
    )
    return SearchReport(
        statement="statement1_stage1",
        delta=5,
        root_rule=RootRule.MIN_DEGREE.value,
        configs_enumerated=merged.raw,
        configs_after_dedup=merged.kept,
        tally={
            "strict": merged.strict,
            "equal": merged.equal,
            "failing": merged.failing,
            "undecided": merged.undecided,
        },
        equality_patterns=_sorted_unique(merged.equal_configs),
        exceptional_patterns=exceptional,
        undecided_patterns=_sorted_unique(merged.undecided_configs),
        equality_inconsistencies=_sorted_unique(merged.inconsistencies),
        precision_stats=merged.precision_stats,
        wall_time_s=time.monotonic() - t0,
        passed=passed,
        extra={
            "jobs": jobs,
            "aggregation": "level-1 degree classes",
            "unrealizable_skipped": merged.unrealizable,
            "appearances": len(appearances),
            "appearances_match_expected": matches_expected,
        },
    )


# --------------------------------------------------------------------------
# stage 2: clearing the exceptional patterns


def stage2_completions(pattern: LocalConfig, x1_index: int) -> Iterator[LocalConfig]:
    """Configurations rooted at the x1-th level-1 vertex of a failing
    pattern, covering every graph containing the pattern at a minimum-degree
    root.

    Around the new root everything the pattern determines is fixed: its
    neighbors are the old root (degree d0) and its pattern level-2 neighbors
    (their exact degrees); at distance two sit the other pattern level-1
    vertices (adjacencies forced by the pattern) and the endpoints of the
    pattern's level-3 edges, whose identification, degrees, and further
    structure range freely subject to degree >= d0 (the old root has minimum
    degree).  Duplicates are possible; callers deduplicate canonically."""
    if not 0 <= x1_index < pattern.d0:
        raise ValueError("x1_index must pick a level-1 vertex of the pattern")
    d_p = pattern.d0
    s_indices = [j for j, (b, nbrs) in enumerate(pattern.l2) if x1_index in nbrs]
    d_q = pattern.l1_degrees[x1_index]
    if d_q != 1 + len(s_indices):
        raise ValueError("pattern level-1 degree inconsistent with its records")
    l1_q = (d_p, *(pattern.l2[j][0] for j in s_indices))
    forced: list[Record] = []
    for u in range(d_p):
        if u == x1_index:
            continue
        nbrs_q = [0]
        for qpos, j in enumerate(s_indices):
            if u in pattern.l2[j][1]:
                nbrs_q.append(1 + qpos)
        forced.append((pattern.l1_degrees[u], tuple(sorted(nbrs_q))))
    quotas = [pattern.l2[j][0] - len(pattern.l2[j][1]) for j in s_indices]
    min_deg = max(1, d_p)
    for wrecords in _record_multisets(quotas, min_deg, 5):
        mapped = [
            (b, tuple(sorted(1 + pos for pos in positions)))
            for b, positions in wrecords
        ]
        records = tuple(sorted(forced + mapped))
        yield LocalConfig(5, d_q, l1_q, records)


def _stage2_shard(args) -> ShardResult:
    pattern, x1_index, precision_start, precision_cap = args
    result = ShardResult()
    seen = set()
    for cfg in stage2_completions(pattern, x1_index):
        result.raw += 1
        key = canonical_tuple(cfg)
        if key in seen:
            continue
        seen.add(key)
        result.kept += 1
        outcome, method, precision = certify_sum_outcome(
            *_cfg_counts(cfg), precision_start=precision_start, precision_cap=precision_cap
        )
        key2 = _method_key(method, precision)
        result.precision_stats[key2] = result.precision_stats.get(key2, 0) + 1
        if outcome is Outcome.STRICTLY_GREATER:
            result.strict += 1
        elif outcome is Outcome.EQUAL:
            result.equal += 1
            result.equal_configs.append(cfg)
        elif outcome is Outcome.STRICTLY_LESS:
            result.failing += 1
            result.failing_configs.append(cfg)
        else:
            result.undecided += 1
            result.undecided_configs.append(cfg)
    return result


def _cfg_counts(cfg: LocalConfig):
    from .local import config_fcounts

    return config_fcounts(cfg)


def verify_statement1_stage2(
    exceptions: Sequence[LocalConfig],
    jobs: int | None = None,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> SearchReport:
    """For every exceptional pattern and every neighbor of its root, certify
    that the neighbor is strictly good in every consistent completion.
    Equality anywhere is a failure here."""
    jobs = jobs or default_jobs()
    t0 = time.monotonic()
    shards = [
        (pattern, x1, precision_start, precision_cap)
        for pattern in exceptions
        for x1 in range(pattern.d0)
    ]
    merged = _run_shards(shards, _stage2_shard, jobs)
    passed = (
        bool(shards)
        and merged.failing == 0
        and merged.equal == 0
        and merged.undecided == 0
        and merged.kept > 0
    )
    # equality counts as failure for stage 2, so surface Equal configs too
    problems = _sorted_unique(merged.failing_configs + merged.equal_configs)
    return SearchReport(
        statement="statement1_stage2",
        delta=5,
        root_rule="pattern_neighbor_root",
        configs_enumerated=merged.raw,
        configs_after_dedup=merged.kept,
        tally={
            "strict": merged.strict,
            "equal": merged.equal,
            "failing": merged.failing,
            "undecided": merged.undecided,
        },
        equality_patterns=_sorted_unique(merged.equal_configs),
        exceptional_patterns=problems,
        undecided_patterns=_sorted_unique(merged.undecided_configs),
        equality_inconsistencies=(),
        precision_stats=merged.precision_stats,
        wall_time_s=time.monotonic() - t0,
        passed=passed,
        extra={"jobs": jobs, "patterns": len(exceptions), "rootings": len(shards)},
    )
