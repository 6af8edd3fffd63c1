from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sasaki_reeb.catalog import make_spec
from sasaki_reeb.reeb import solve_reeb_parameter

DEL_PEZZO = make_spec([(Fraction(1, 2), 1)], "P^1, nu=(1)")


@st.composite
def specs(draw, max_n=5, bound=Fraction(3, 4)):
    """Random spectra with total multiplicity <= max_n and |mu| < bound."""
    k = draw(st.integers(1, max_n))
    mults = draw(st.lists(st.integers(1, max_n), min_size=k, max_size=k))
    entries, total = [], 0
    for m in mults:
        if total + m > max_n:
            break
        mu = draw(st.fractions(min_value=-bound, max_value=bound, max_denominator=24)
                  .filter(lambda q: abs(q) < bound))
        entries.append((mu, m))
        total += m
    if not entries:
        entries = [(Fraction(0), 1)]
    return make_spec(entries)


@pytest.fixture(scope="session")
def del_pezzo():
    return DEL_PEZZO


@pytest.fixture(scope="session")
def del_pezzo_solution():
    return solve_reeb_parameter(DEL_PEZZO)


@pytest.fixture(scope="session")
def del_pezzo_table(del_pezzo_solution):
    from sasaki_reeb.profile import build_profile

    return build_profile(DEL_PEZZO, del_pezzo_solution, -20.0, 20.0, 2001, 1e-10)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        passed, title, detail, elapsed = mod.RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number}: {title} ({detail}; {elapsed:.2f} s)")
