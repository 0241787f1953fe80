"""Acceptance criteria; each test prints one PASS/FAIL line with its exact threshold.

All checks are exact (no tolerances): every criterion demands 100% agreement.
"""

import random
import time

import pytest

from llpon.checks import (
    Params,
    check_buildwitness,
    check_compact,
    check_covvgood,
    check_dovetail,
    check_intersect,
    check_k2,
    check_llpo_sound,
    check_prgood,
    check_prvgood,
    check_refine,
    check_soundness,
)

SEED = 20261015


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
        assert ok, detail

    return emit


def _run(check, n, samples, seed=SEED, **kw):
    return check(random.Random(seed + n), Params(n=n, samples=samples, **kw))


def test_c01_code_evaluation_matches_recursive_predicates(report):
    start = time.perf_counter()
    total = bad_good = bad_vgood = 0
    for n in (2, 3, 4):
        bad_good += len(_run(check_prgood, n, 2000, max_depth=3, max_switch=8))
        bad_vgood += len(_run(check_prvgood, n, 2000, max_depth=3, max_switch=8))
        total += 2000
    elapsed = time.perf_counter() - start
    ok = bad_good == 0 and bad_vgood == 0 and elapsed < 30
    report(
        1,
        "code evaluation = recursive good/very good",
        ok,
        f"{total - bad_good}/{total} good and {total - bad_vgood}/{total} very good agree "
        f"(n in 2,3,4; 2000 each; need 100%); {elapsed:.1f} s (need < 30 s)",
    )


def test_c02_cover_zero_iff_very_good(report):
    fails = sum(len(_run(check_covvgood, n, 700)) for n in (2, 3, 4))
    report(2, "cover0 = very good on good trees", fails == 0, f"{2100 - fails}/2100 agree (need >= 2000, 100%)")


def test_c03_intersection_axiom(report):
    fails = sum(len(_run(check_intersect, n, 400)) for n in (2, 3, 4))
    report(3, "intersect keeps goodness and cover containment", fails == 0, f"{1200 - fails}/1200 pairs (need >= 1000, 100%)")


def test_c04_refinement_axiom(report):
    fails = sum(len(_run(check_refine, n, 400)) for n in (2, 3, 4))
    report(4, "refine output good and covered by targets", fails == 0, f"{1200 - fails}/1200 instances (need >= 1000, 100%)")


def test_c05_compactness(report):
    fails = sum(len(_run(check_compact, n, 400)) for n in (2, 3, 4))
    report(5, "compactify finite J with covering postcondition", fails == 0, f"{1200 - fails}/1200 instances (need >= 1000, 100%)")


def test_c06_build_witness(report):
    fails = sum(len(_run(check_buildwitness, n, 400)) for n in (3, 4, 6))
    report(
        6,
        "buildWitness arity, goodness, membership, k=1 uniqueness",
        fails == 0,
        f"{1200 - fails}/1200 instances over n in 3,4,6 (need >= 1000, 100%)",
    )


def test_c07_llpo_soundness(report):
    fails = sum(len(_run(check_llpo_sound, n, 0)) for n in (2, 3, 4))
    report(
        7,
        "LLPO_n certificate good and proves a true disjunct",
        fails == 0,
        f"{156 - fails}/156 cases (n in 2,3,4; one-position None or 0..50; need 100%)",
    )


def test_c08_model_soundness_and_fuel_monotonicity(report):
    failures = _run(check_soundness, 2, 2000)
    sound = [f for f in failures if "sample" in f]
    mono = [f for f in failures if "monotonicity" in f]
    report(
        8,
        "bounded formulas decided and classically correct; fuel monotone",
        not failures,
        f"{2000 - len(sound)}/2000 formulas decided and correct (need 100%, never Unknown); "
        f"{500 - len(mono)}/500 monotonicity checks (need 100%)",
    )


def test_c09_dovetail(report):
    fails = len(_run(check_dovetail, 2, 100))
    report(
        9,
        "dovetail postcondition",
        fails == 0,
        f"{100 - fails}/100 instances (50 all-ones tracks with halting second algorithm, 50 with a zero; need 100%)",
    )


def test_c10_parallel_k2(report):
    fails = len(_run(check_k2, 2, 100))
    report(
        10,
        "K2 parallel case split bit-exact and agreement on the all-ones oracle",
        fails == 0,
        f"{100 - fails}/100 instances (8 case-split queries and 32 outputs each; need 100%)",
    )
