import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from lcadag.dag import Dag  # noqa: E402
from lcadag.fixtures import load_fixture  # noqa: E402
from lcadag.setsys import SetSystem  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def dags(draw, max_leaves=5, max_internal=6):
    """Random DAG: internal vertices 0..m-1 in topological order, leaves after them."""
    n = draw(st.integers(1, max_leaves))
    m = draw(st.integers(0, max_internal))
    leaves = list(range(m, m + n))
    edges = set()
    for i in range(m):
        targets = list(range(i + 1, m)) + leaves
        chosen = draw(st.lists(st.sampled_from(targets), min_size=1, max_size=4, unique=True))
        edges |= {(i, t) for t in chosen}
    return Dag(range(m + n), edges, {x: "abcdefgh"[x - m] for x in leaves})


@st.composite
def grounded_systems(draw, max_leaves=5):
    n = draw(st.integers(1, max_leaves))
    ground = list("abcdefgh"[:n])
    extra = draw(st.lists(st.sets(st.sampled_from(ground), min_size=2), max_size=6)) if n > 1 else []
    return SetSystem.of([[x] for x in ground] + [sorted(s) for s in extra], ground)


@st.composite
def size_indexes(draw, n=5):
    from lcadag.sizes import SizeIndex
    extra = draw(st.sets(st.integers(2, max(2, n)), max_size=3))
    return SizeIndex.one({1} | extra)


@pytest.fixture
def fx():
    return load_fixture


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
