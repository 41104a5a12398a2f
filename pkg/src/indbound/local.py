"""Rooted local configurations.

A LocalConfig is the radius-2 data around a root x that determines the
reduced goodness inequality once every level-3 vertex is padded up to the
class degree bound delta_eff: the root degree, the level-1 degrees, the
level-1/level-2 bipartite adjacency, and each level-2 vertex's total degree
(its level-3 edge count is the difference).  Padding is sound because
raising a level-3 degree can only make the inequality harder to satisfy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph, from_edges
from .goodness import level_decomposition
from .products import (
    PRECISION_CAP,
    PRECISION_START,
    FactorProduct,
    Outcome,
    Verdict,
    certify_sum_inequality,
    certify_sum_outcome,
)

# level-2 record: (total degree b, sorted tuple of level-1 indices)
Record = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class LocalConfig:
    delta_eff: int
    d0: int
    l1_degrees: tuple[int, ...]
    l2: tuple[Record, ...]

    def m(self, j: int) -> int:
        """Number of level-1 neighbors of level-2 vertex j."""
        return len(self.l2[j][1])

    def t(self, j: int) -> int:
        """Number of level-3 edges at level-2 vertex j."""
        return self.l2[j][0] - len(self.l2[j][1])

    def t_counts(self) -> tuple[int, ...]:
        return tuple(b - len(nbrs) for b, nbrs in self.l2)

    def validate(self) -> None:
        if self.d0 != len(self.l1_degrees):
            raise ValueError("root degree does not match the level-1 list")
        if self.d0 == 0:
            if self.l2:
                raise ValueError("isolated root cannot have level-2 vertices")
            return
        if not 1 <= self.d0 <= self.delta_eff:
            raise ValueError("root degree out of range")
        for d in self.l1_degrees:
            if not 1 <= d <= self.delta_eff:
                raise ValueError(f"level-1 degree {d} out of range")
        upward = sum(d - 1 for d in self.l1_degrees)
        landing = 0
        for b, nbrs in self.l2:
            if not nbrs:
                raise ValueError("level-2 vertex with no level-1 neighbor")
            if len(set(nbrs)) != len(nbrs) or tuple(sorted(nbrs)) != nbrs:
                raise ValueError("level-1 neighbor list must be sorted and distinct")
            if any(not 0 <= u < self.d0 for u in nbrs):
                raise ValueError("level-1 neighbor index out of range")
            if not len(nbrs) <= b <= self.delta_eff:
                raise ValueError(f"level-2 degree {b} out of range for {len(nbrs)} neighbors")
            landing += len(nbrs)
        if upward != landing:
            raise ValueError(
                f"level-1 upward edges ({upward}) do not match level-2 attachments ({landing})"
            )


def pad_level3(cfg: LocalConfig, delta_eff: int | None = None) -> LocalConfig:
    """Mark every level-3 endpoint as having degree delta_eff.

    The stored fields already carry the padding through cfg.delta_eff, so
    with no argument this is the identity; passing a larger bound re-pads.
    """
    if delta_eff is None or delta_eff == cfg.delta_eff:
        return cfg
    needed = max(
        [cfg.d0, *cfg.l1_degrees, *(b for b, _ in cfg.l2)], default=0
    )
    if delta_eff < needed:
        raise ValueError(f"cannot pad level 3 to {delta_eff} below existing degree {needed}")
    return LocalConfig(delta_eff, cfg.d0, cfg.l1_degrees, cfg.l2)


def config_is_extremal(cfg: LocalConfig) -> bool:
    """True iff the configuration forces the component of the root to be a
    single vertex or a complete bipartite graph (no level-3 edges, every
    level-1 vertex joined to the root and all of level 2, and conversely)."""
    if cfg.d0 == 0:
        return True
    k = len(cfg.l2)
    if any(d != 1 + k for d in cfg.l1_degrees):
        return False
    return all(b == len(nbrs) == cfg.d0 for b, nbrs in cfg.l2)


def config_fcounts(cfg: LocalConfig):
    """The f-factor multiplicity maps and powers of two of A, B, C."""
    ca: dict[tuple[int, int], int] = {}
    cb: dict[tuple[int, int], int] = {}
    cc: dict[tuple[int, int], int] = {}

    def bump(counts, a, b, m=1):
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + m

    for d in cfg.l1_degrees:
        bump(ca, cfg.d0, d)
    iso_c = 0
    for b, nbrs in cfg.l2:
        for u in nbrs:
            bump(ca, cfg.l1_degrees[u], b)
            bump(cb, cfg.l1_degrees[u] - 1, b)
        t = b - len(nbrs)
        if t:
            bump(ca, b, cfg.delta_eff, t)
            bump(cb, b, cfg.delta_eff, t)
            bump(cc, t, cfg.delta_eff, t)
        else:
            iso_c += 1
    iso_a = 1 if cfg.d0 == 0 else 0
    iso_b = sum(1 for d in cfg.l1_degrees if d == 1)
    return ca, iso_a, cb, iso_b, cc, iso_c


def config_goodness(
    cfg: LocalConfig,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> Verdict:
    """Certified reduced inequality for any graph realizing the padded
    configuration (full Verdict, for reporting)."""
    ca, iso_a, cb, iso_b, cc, iso_c = config_fcounts(cfg)
    return certify_sum_inequality(
        FactorProduct.from_f_counts(ca, iso_a),
        FactorProduct.from_f_counts(cb, iso_b),
        FactorProduct.from_f_counts(cc, iso_c),
        equality_expected=config_is_extremal(cfg),
        precision_start=precision_start,
        precision_cap=precision_cap,
    )


def config_outcome(
    cfg: LocalConfig,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> tuple[Outcome, str, int | None]:
    """Hot-loop variant of config_goodness: outcome only, no report objects."""
    ca, iso_a, cb, iso_b, cc, iso_c = config_fcounts(cfg)
    return certify_sum_outcome(
        ca, iso_a, cb, iso_b, cc, iso_c,
        precision_start=precision_start, precision_cap=precision_cap,
    )


def canonical_tuple(cfg: LocalConfig):
    """Relabeling-invariant encoding: minimize (l1 degrees non-increasing,
    sorted level-2 records) over all level-1 permutations consistent with
    the degree ordering."""
    order_target = tuple(sorted(cfg.l1_degrees, reverse=True))
    best = None
    for perm in itertools.permutations(range(cfg.d0)):
        if tuple(cfg.l1_degrees[p] for p in perm) != order_target:
            continue
        pos = [0] * cfg.d0
        for new, old in enumerate(perm):
            pos[old] = new
        records = tuple(
            sorted((b, tuple(sorted(pos[u] for u in nbrs))) for b, nbrs in cfg.l2)
        )
        if best is None or records < best:
            best = records
    if best is None:  # d0 == 0
        best = ()
    return (cfg.delta_eff, cfg.d0, order_target, best)


def canonical_config(cfg: LocalConfig) -> LocalConfig:
    delta_eff, d0, degrees, records = canonical_tuple(cfg)
    return LocalConfig(delta_eff, d0, degrees, records)


def canonical_form(cfg: LocalConfig) -> bytes:
    """Byte-string key: equal iff the configurations are related by a
    root-preserving relabeling of levels 1 and 2."""
    return repr(canonical_tuple(cfg)).encode()


def config_describe(cfg: LocalConfig) -> str:
    if cfg.d0 == 0:
        return "isolated root"
    parts = [f"root degree {cfg.d0}", f"level-1 degrees {list(cfg.l1_degrees)}"]
    if cfg.l2:
        recs = ", ".join(
            f"(b={b}, N={set(nbrs)}, t={b - len(nbrs)})" for b, nbrs in cfg.l2
        )
        parts.append(f"level-2 [{recs}]")
    parts.append(f"level-3 padded to {cfg.delta_eff}")
    return "; ".join(parts)


def realize_config(cfg: LocalConfig) -> Graph:
    """A concrete graph whose configuration at root 0 is exactly cfg, with
    every level-3 vertex padded to degree delta_eff by fresh level-4 leaves."""
    edges = []
    nxt = 1 + cfg.d0
    l2_ids = []
    for _ in cfg.l2:
        l2_ids.append(nxt)
        nxt += 1
    for u in range(cfg.d0):
        edges.append((0, 1 + u))
    for j, (b, nbrs) in enumerate(cfg.l2):
        for u in nbrs:
            edges.append((1 + u, l2_ids[j]))
        for _ in range(b - len(nbrs)):
            w = nxt
            nxt += 1
            edges.append((l2_ids[j], w))
            for _ in range(cfg.delta_eff - 1):
                edges.append((w, nxt))
                nxt += 1
    return from_edges(nxt, edges)


def extract_config(g: Graph, x: int, delta_eff: int) -> LocalConfig:
    """The LocalConfig of a concrete bipartite-component root, padding the
    level-3 degrees up to delta_eff."""
    ld = level_decomposition(g, x)
    level1 = list(ld.levels[1]) if len(ld.levels) > 1 else []
    level2 = list(ld.levels[2]) if len(ld.levels) > 2 else []
    index1 = {v: i for i, v in enumerate(level1)}
    degrees = tuple(g.degree(v) for v in level1)
    if any(d > delta_eff for d in (g.degree(x), *degrees)):
        raise ValueError("degree exceeds delta_eff")
    records = []
    for v in level2:
        b = g.degree(v)
        if b > delta_eff:
            raise ValueError("degree exceeds delta_eff")
        nbrs = tuple(sorted(index1[w] for w in g.adjacency[v] if w in index1))
        records.append((b, nbrs))
    cfg = LocalConfig(delta_eff, g.degree(x), degrees, tuple(sorted(records)))
    cfg.validate()
    return cfg


# --- expansion of a failing configuration into level-0..3 appearances -------


def _config_automorphisms(cfg: LocalConfig) -> list[tuple[int, ...]]:
    """The full group of level-2 index permutations realizable by a
    configuration automorphism (a level-1 relabeling preserving degrees plus
    any matching between equal records).  Only used on small configurations."""
    records = cfg.l2
    k = len(records)
    autos: set[tuple[int, ...]] = set()
    for perm in itertools.permutations(range(cfg.d0)):
        if tuple(cfg.l1_degrees[p] for p in perm) != cfg.l1_degrees:
            continue
        pos = [0] * cfg.d0
        for new, old in enumerate(perm):
            pos[old] = new
        mapped = [(b, tuple(sorted(pos[u] for u in nbrs))) for b, nbrs in records]
        pools: dict[Record, list[int]] = {}
        for idx, rec in enumerate(records):
            pools.setdefault(rec, []).append(idx)
        need: dict[Record, list[int]] = {}
        for idx, rec in enumerate(mapped):
            need.setdefault(rec, []).append(idx)
        if set(pools) != set(need) or any(
            len(pools[r]) != len(need[r]) for r in pools
        ):
            continue
        per_class = []
        for rec, targets in need.items():
            sources = pools[rec]
            per_class.append(
                [tuple(zip(targets, sp)) for sp in itertools.permutations(sources)]
            )
        for combo in itertools.product(*per_class):
            sigma = [0] * k
            for pairs in combo:
                for i, q in pairs:
                    sigma[i] = q
            autos.add(tuple(sigma))
    return sorted(autos)


@dataclass(frozen=True)
class Appearance:
    """The induced levels-0..3 subgraph of one realization of a failing
    configuration: which level-3 endpoints coincide is not determined by the
    configuration, so one configuration can have several appearances."""

    config: LocalConfig
    level3_neighborhoods: tuple[tuple[int, ...], ...]  # per level-3 vertex, sorted l2 indices

    def leveled_graph(self) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, int], ...]]:
        """(levels, edges) with vertices 0..n-1 and the root at level 0."""
        cfg = self.config
        l1 = tuple(range(1, 1 + cfg.d0))
        l2 = tuple(range(1 + cfg.d0, 1 + cfg.d0 + len(cfg.l2)))
        l3 = tuple(
            range(1 + cfg.d0 + len(cfg.l2), 1 + cfg.d0 + len(cfg.l2) + len(self.level3_neighborhoods))
        )
        edges = [(0, v) for v in l1]
        for j, (b, nbrs) in enumerate(cfg.l2):
            for u in nbrs:
                edges.append((l1[u], l2[j]))
        for w, nbhd in enumerate(self.level3_neighborhoods):
            for j in nbhd:
                edges.append((l2[j], l3[w]))
        levels = tuple(lv for lv in ((0,), l1, l2, l3) if lv)
        return levels, tuple(sorted(edges))


def _assignments(quotas: list[int]) -> list[tuple[tuple[int, ...], ...]]:
    """All multisets of nonempty subsets of the quota positions whose column
    sums equal the quotas (each subset is one level-3 vertex)."""
    positions = [i for i, q in enumerate(quotas) if q > 0]
    subsets = []
    for r in range(1, len(positions) + 1):
        subsets.extend(itertools.combinations(positions, r))
    out = []
    rem = list(quotas)

    def rec(idx: int, acc: list[tuple[int, ...]]):
        if all(r == 0 for r in rem):
            out.append(tuple(acc))
            return
        if idx == len(subsets):
            return
        sub = subsets[idx]
        maxc = min(rem[i] for i in sub)
        for c in range(maxc + 1):
            if c:
                for i in sub:
                    rem[i] -= c
                acc.extend([sub] * c)
            rec(idx + 1, acc)
            if c:
                for i in sub:
                    rem[i] += c
                del acc[-c:]

    rec(0, [])
    return out


def expand_appearances(cfg: LocalConfig) -> list[Appearance]:
    """All distinct level-3 endpoint identifications of a configuration, up
    to its automorphisms."""
    quotas = list(cfg.t_counts())
    if not any(quotas):
        return [Appearance(cfg, ())]
    autos = _config_automorphisms(cfg)
    seen = set()
    out = []
    for assignment in _assignments(quotas):
        key = min(
            tuple(sorted(tuple(sorted(auto[j] for j in sub)) for sub in assignment))
            for auto in autos
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(Appearance(cfg, key))
    out.sort(key=lambda ap: ap.level3_neighborhoods)
    return out


def leveled_canonical(
    levels: tuple[tuple[int, ...], ...], edges: tuple[tuple[int, int], ...]
) -> bytes:
    """Canonical key of a leveled rooted graph under level-preserving
    relabelings (levels are small, so brute force over per-level orders)."""
    adjacency: dict[int, set[int]] = {}
    for u, v in edges:
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)
    best = None
    pools = [list(itertools.permutations(lv)) for lv in levels]
    for choice in itertools.product(*pools):
        relabel = {}
        counter = 0
        for lv in choice:
            for v in lv:
                relabel[v] = counter
                counter += 1
        enc = tuple(
            sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges)
        )
        if best is None or enc < best:
            best = enc
    sizes = tuple(len(lv) for lv in levels)
    return repr((sizes, best)).encode()
