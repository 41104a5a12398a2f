"""Reference data: the fourteen expected exceptional neighborhoods of the
degree-5 minimum-degree search.

Each entry is the levels-0..3 induced subgraph around the failed root
(vertex 0), as an edge list whose levels are the breadth-first distances
from 0.  The stage-1 search must reproduce this set exactly, by expanding
its failing configurations into all distinct level-3 endpoint
identifications; a mismatch flags the run for review.
"""

from __future__ import annotations

from functools import lru_cache

EXPECTED_EDGE_LISTS: tuple[tuple[tuple[int, int], ...], ...] = (
    # root degree 1
    ((0, 1), (1, 2), (2, 3)),
    ((0, 1), (1, 2), (1, 3), (2, 4)),
    ((0, 1), (1, 2), (1, 3), (2, 4), (3, 5)),
    ((0, 1), (1, 2), (1, 3), (2, 4), (3, 4)),
    # root degree 2
    ((0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 7), (4, 8)),
    ((0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 6), (4, 7)),
    ((0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5), (3, 6), (4, 6)),
    ((0, 1), (0, 2), (1, 3), (2, 3), (3, 4)),
    ((0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5)),
    ((0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 6)),
    ((0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)),
    # root degree 3
    ((0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 6)),
    ((0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 6), (5, 7)),
    ((0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 6), (5, 6)),
)


def bfs_levels(edges: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], ...]:
    """Breadth-first levels from vertex 0 of a connected edge list."""
    adjacency: dict[int, list[int]] = {}
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    dist = {0: 0}
    queue = [0]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for w in sorted(adjacency.get(u, ())):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    depth = max(dist.values())
    return tuple(
        tuple(sorted(v for v, d in dist.items() if d == i)) for i in range(depth + 1)
    )


@lru_cache(maxsize=1)
def expected_appearance_keys() -> frozenset[bytes]:
    from .local import leveled_canonical

    return frozenset(
        leveled_canonical(bfs_levels(edges), tuple(sorted(edges)))
        for edges in EXPECTED_EDGE_LISTS
    )
