import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL = st.fractions(min_value=-3, max_value=3, max_denominator=4)
POOL = [Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2)]


def vectors(n, elements=SMALL):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def matrices(rows, cols, elements=SMALL):
    return st.lists(vectors(cols, elements), min_size=rows, max_size=rows).map(tuple)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
