import json

import pytest

from ramdepth import suites
from ramdepth.errors import DomainError

FAST = ["numbering", "conductor-shift", "norm-range", "toral-norm", "nondegeneracy", "restricted-classes",
        "unit-quotient-counterexample", "depth-zero-pushforward", "associate-invariance", "inertia-intersections"]


@pytest.mark.parametrize("name", FAST)
def test_suite_passes(name):
    rep = suites.run_suite(name)
    assert rep["ok"], [it for it in rep["items"] if not it["ok"]]


def test_items_are_sorted_and_seed_recorded():
    rep = suites.run_suite("depth-zero-space", suites.Context(seed=11))
    names = [it["name"] for it in rep["items"]]
    assert names == sorted(names) and rep["seed"] == 11


def test_registry_summaries():
    assert all(summary for _, summary in suites.SUITES.values())


def test_resolve_tower_forms():
    assert suites.resolve_tower("AS3").name == "F3:as1"
    d = suites.resolve_tower(json.dumps({"p": 5, "steps": [{"kind": "artin_schreier", "param": 1}]}))
    assert d.p == 5
    with pytest.raises(DomainError):
        suites.resolve_tower("nowhere")


def test_single_tower_context():
    ctx = suites.Context(tower=suites.resolve_tower("AS5"))
    rep = suites.run_suite("tfae", ctx)
    assert rep["ok"] and [it["name"] for it in rep["items"]] == ["F5:as1"]


def test_unknown_suite():
    with pytest.raises(DomainError):
        suites.run_suite("missing")
