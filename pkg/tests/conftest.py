import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ttg.ordinal import Ordinal  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def ordinals(max_exp: int = 3, max_coeff: int = 5):
    """Ordinals below w^(max_exp+1) in Cantor normal form."""
    coeffs = st.lists(st.integers(0, max_coeff), min_size=max_exp + 1, max_size=max_exp + 1)
    return coeffs.map(lambda cs: Ordinal(tuple((max_exp - i, c) for i, c in enumerate(cs) if c)))


ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
