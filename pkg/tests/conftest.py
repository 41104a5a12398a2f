import sys
from pathlib import Path

# allow running the suite from a checkout without installing the package
_src = Path(__file__).resolve().parent.parent / "src"
if _src.is_dir() and str(_src) not in sys.path:
    sys.path.insert(0, str(_src))

import pytest

from indbound.graphs import Graph, from_edges


@pytest.fixture
def fig1() -> Graph:
    """Path 0-1-2-3 with three extra leaves on vertex 3: the seven-vertex
    example whose endpoint 0 is not good."""
    return from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])
