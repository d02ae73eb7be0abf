import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from acfca import FinitePoset, FormalContext, induced_acf, rep  # noqa: E402
from acfca.order import diamond  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def make_c0() -> FormalContext:
    return FormalContext.from_pairs(["o1", "o2", "o3"], ["m1", "m2", "m3"],
                                    [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)])


@pytest.fixture
def c0():
    return make_c0()


@pytest.fixture
def c0_acf():
    return induced_acf(make_c0())


@pytest.fixture
def chain2():
    return FinitePoset.from_relation(["bot", "top"], [(0, 1)])


@pytest.fixture
def antichain2():
    return FinitePoset.from_relation(["a", "b"], [])


@pytest.fixture
def diamond_poset():
    return diamond()


@pytest.fixture
def rep_chain2(chain2):
    return rep(chain2)


@pytest.fixture
def rep_antichain2(antichain2):
    return rep(antichain2)


@pytest.fixture
def rep_diamond(diamond_poset):
    return rep(diamond_poset)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
