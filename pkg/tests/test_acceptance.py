"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed in the summary."""

import time
from fractions import Fraction

from ramdepth import cft, suites
from ramdepth import dlparams as dl
from ramdepth import localfield as lf
from ramdepth import rootdata as rdm


def _failing(report):
    return [it["name"] for it in report["items"] if not it["ok"]]


def test_counterexample_reproduction(accept):
    t = time.perf_counter()
    r3 = cft.counterexample_report(3)
    r2 = cft.counterexample_report(2)
    elapsed = time.perf_counter() - t
    ok = (
        r3["S"] == "3.." and list(r3["quotient_invariants"]) == [3, 3] and r3["d"] == 2
        and r3["gamma_d_cyclic"] and r3["gamma_d_order"] == 3
        and r2["S"] == "2,4.." and list(r2["quotient_invariants"]) == [2, 2] and r2["d"] == 3
        and elapsed < 1.0
    )
    accept(1, "unit quotient counterexample", ok, f"{elapsed:.2f}s")
    assert ok


def test_hasse_herbrand_calculus(accept):
    t = time.perf_counter()
    towers = lf.hh_catalog()
    reps = [suites.run_suite(n) for n in ("hasse-herbrand", "c-equals-u-minus-ell")]
    elapsed = time.perf_counter() - t
    fails = [f for r in reps for f in _failing(r)]
    ok = len(towers) >= 20 and not fails and elapsed < 30
    accept(2, "Hasse-Herbrand composition, c additivity, c = u - ell", ok,
           f"{len(towers)} towers, {elapsed:.1f}s, failures {fails}")
    assert ok


def test_norm_range(accept):
    rep = suites.run_suite("norm-range")
    names = {it["name"] for it in rep["items"]}
    ok = rep["ok"] and {"F3:as1", "F5:as1"} <= names
    accept(3, "graded norm surjectivity and Nm(1+x) = 1+Tr(x)", ok, f"failures {_failing(rep)}")
    assert ok


def test_tfae_consistency(accept):
    rep = suites.run_suite("tfae")
    fails = _failing(rep)
    accept(4, "equivalent conditions agree combinatorially and at field level", rep["ok"],
           f"mismatching towers {fails}")
    assert rep["ok"], f"field-level norm clause disagrees on {fails}"


def test_dl_parameter_invariance(accept):
    weyl = suites.run_suite("weyl-invariance")
    choice = suites.run_suite("choice-invariance")
    cases = {it["name"]: it["detail"] for it in weyl["items"]}
    sizes_ok = all(d["instances"] <= 81 and d["instances"] > 0 for d in cases.values())
    ok = weyl["ok"] and choice["ok"] and sizes_ok and len(cases) == 4
    accept(5, "parameters invariant under Weyl transport and adapted choices", ok,
           f"failures {_failing(weyl) + _failing(choice)}")
    assert ok


def test_nondegeneracy_biconditional(accept):
    t = time.perf_counter()
    rep = suites.run_suite("nondegeneracy")
    elapsed = time.perf_counter() - t
    ok = rep["ok"] and elapsed < 120
    accept(6, "invariant test matches orbit-closure oracle over F_3 and F_9", ok, f"{elapsed:.1f}s")
    assert ok


def test_associate_implies_stable_associate(accept):
    rep = suites.run_suite("stable-association")
    pairs = sum(it["detail"]["associate_pairs"] for it in rep["items"])
    ok = rep["ok"] and pairs > 0
    accept(7, "associate pairs are stable associates", ok, f"{pairs} associate pairs")
    assert ok


def test_toral_norm_compatibility(accept):
    rep = suites.run_suite("toral-norm")
    ok = rep["ok"] and len(rep["items"]) >= 5
    accept(8, "toral characters compose with norms", ok, f"{len(rep['items'])} tower pairs")
    assert ok


def test_depth_zero_enumeration(accept):
    def classes(rd, q, bound=None):
        return [p.canonical for p in dl.depth_zero_space(rd, q, denominator_bound=bound)]

    SL2, GL1 = rdm.RootDatum("SL", 2), rdm.RootDatum("GL", 1)
    sl = classes(SL2, 3)
    gl = classes(GL1, 3)
    ok = (
        sl == [(Fraction(0),), (Fraction(1, 4),), (Fraction(1, 2),)]
        and gl == [(Fraction(0),), (Fraction(1, 2),)]
        and classes(SL2, 3, 8) == sl and classes(GL1, 3, 8) == gl
        and suites.run_suite("depth-zero-space")["ok"]
    )
    accept(9, "depth-zero classes for SL_2 and GL_1 at q = 3", ok)
    assert ok


def test_adapted_extension_search(accept):
    rep = suites.run_suite("adapted-extension")
    ok = rep["ok"]
    accept(10, "adapted extension with 3 | e and u < 1/2, stable under tame compositum", ok)
    assert ok
