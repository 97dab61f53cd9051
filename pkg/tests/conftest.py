import functools

import pytest

from vhlf.gf import field_of_order
from vhlf.quaternion import make_config
from vhlf.vh_core import build

QS = (3, 5, 7, 9)


def all_configs(qs=QS):
    """Every (q, tau) with tau in F_q minus {0, 1}."""
    out = []
    for q in qs:
        out.extend((q, t) for t in range(2, q))
    return out


@functools.lru_cache(maxsize=None)
def cfg_for(q, tau):
    return make_config(field_of_order(q), tau)


@functools.lru_cache(maxsize=None)
def data_for(q, tau):
    return build(cfg_for(q, tau))


@pytest.fixture
def cfg3():
    return cfg_for(3, 2)


@pytest.fixture
def data3():
    return data_for(3, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
