import os
import sys
from itertools import combinations

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from graphgeom.graph import Graph  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph.from_edges(n, chosen)
    if connected and not g.is_connected():
        # join components along a path through their smallest vertices
        comps = g.components()
        extra = [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
        g = g.add_edges(extra)
    return g


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
