import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from inducibility.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    rows = [0] * n
    it = iter(bits)
    for u in range(n):
        for v in range(u + 1, n):
            if next(it):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(n, rows)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
