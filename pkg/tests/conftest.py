from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from elliptic_yau.scalar import Cyclo

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cyclos = st.tuples(small_fractions, small_fractions, small_fractions, small_fractions).map(
    lambda c: Cyclo.from_fractions(c)
)
nonzero_cyclos = cyclos.filter(lambda c: not c.is_zero())


def rationals(fam, exclude_jumps=True):
    """Small nonzero rationals admissible for the family."""
    return small_fractions.map(Cyclo.rational).filter(
        lambda t: not t.is_zero() and not fam.is_excluded(t) and not (exclude_jumps and fam.is_jump(t))
    )


@pytest.fixture(scope="session")
def oracle():
    return json.loads((ROOT / "tools" / "oracle_values.json").read_text())


def frac(p, q=1):
    return Cyclo.rational(Fraction(p, q))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
