import math

import pytest

from lindefect.errors import UsageError
from lindefect.linearity import LdResult
from lindefect.suites import SUITES, SuiteReport, _geq, lower, run_property_suite, upper


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_small(name):
    rep = run_property_suite(name, seed=3, count=6)
    assert rep.ok, rep.failures
    assert rep.instances >= 6


def test_suites_are_deterministic():
    a = run_property_suite("cwlinear", seed=5, count=8).to_dict()
    b = run_property_suite("cwlinear", seed=5, count=8).to_dict()
    assert a == b


def test_unknown_suite():
    with pytest.raises(UsageError, match="nosuch"):
        run_property_suite("nosuch")


def test_certified_bounds():
    exact = LdResult("exact", 2, 4, {0: True, 2: True})
    assert lower(exact) == 2 and upper(exact) == 2
    open_ = LdResult("at_least", 1, 4, {1: True})
    assert lower(open_) == 1 and upper(open_) == math.inf
    z = LdResult("zero_up_to", None, 4, {0: True})
    assert lower(z) == 0 and upper(z) == math.inf


def test_uncertified_comparisons_are_not_counted():
    rep = SuiteReport("t", 0)
    _geq(rep, "a >= b", math.inf, 3)
    _geq(rep, "a >= b", 2, -math.inf)
    assert rep.checks == 0 and rep.ok and rep.notes == {"uncertified:a >= b": 2}
    _geq(rep, "a >= b", 1, 3, instance=7)
    assert not rep.ok and rep.failures[0]["instance"] == 7


def test_cubic_control_is_flagged():
    rep = run_property_suite("mindegree", seed=0, count=2)
    assert rep.ok
    assert rep.notes.get("minimal_degree", 0) >= 1
