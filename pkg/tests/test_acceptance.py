"""Acceptance criteria, one PASS/FAIL line each (shown in the terminal summary).

Every tolerance is exact: integers, rationals and polynomials compare with ==.
Stretch items run under LIEVARIETY_STRETCH_BUDGET seconds per Groebner basis
(default 3600); running out of budget is reported as FAIL and marked xfail,
since those items are non-blocking.  A wrong answer is always a hard failure.
"""

import os
import time

import pytest

from conftest import ACCEPTANCE_LINES
from lievariety import checks

STRETCH_BUDGET = float(os.environ.get("LIEVARIETY_STRETCH_BUDGET", "3600"))


@pytest.fixture(scope="module")
def ctx():
    return checks.Context(seed=0, budget=None)


def _record(res, label, tolerance="exact"):
    tag = ", stretch" if res.stretch else ""
    verdict = "PASS" if res.passed else "FAIL"
    line = f"{verdict} criterion {label}: {res.name} (tolerance {tolerance}{tag}, {res.seconds:.1f}s)"
    if res.status == "budget":
        line += " [budget exceeded, non-blocking]"
    elif not res.passed:
        line += f" expected {res.expected} actual {res.actual}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _run(item, ctx, label, budget=None):
    ctx.budget = budget
    t0 = time.monotonic()
    try:
        res = item(ctx)
    finally:
        ctx.budget = None
    res.seconds = time.monotonic() - t0
    _record(res, label)
    if res.status == "budget":
        pytest.xfail(f"stretch item over its {budget:.0f}s budget: {res.actual}")
    assert res.passed, (res.expected, res.actual, res.detail)
    return res


def test_criterion_1_chow_degrees(ctx):
    res = _run(checks.check_chow, ctx, "1")
    assert res.seconds < 1


def test_criterion_2_theta_conformance(ctx):
    res = _run(checks.check_theta, ctx, "2")
    assert res.seconds < 1


def test_criterion_3_generator_profiles(ctx):
    res = _run(checks.check_profiles, ctx, "3")
    assert res.detail["C4"] == "16 quadrics and 60 cubics"
    assert res.seconds < 15 * 60


def test_criterion_3_stretch_c2_by_elimination(ctx):
    _run(checks.check_c2_elimination, ctx, "3 (second route)", STRETCH_BUDGET)


def test_criterion_4_hilbert_c1_c3(ctx):
    _run(checks.check_hilbert, ctx, "4")


def test_criterion_4_stretch_hilbert_c2_c4(ctx):
    _run(checks.check_hilbert_stretch, ctx, "4 (stretch)", STRETCH_BUDGET)


def test_criterion_5_total_degree(ctx):
    res = _run(checks.check_total_degree, ctx, "5")
    assert res.detail["degrees"] == {1: 55, 2: 361, 3: 121, 4: 295}


def test_criterion_6_c2_chart(ctx):
    res = _run(checks.check_c2_chart, ctx, "6")
    assert res.seconds < 10


def test_criterion_7_highest_weight_identities(ctx):
    _run(checks.check_hw_identities, ctx, "7")


def test_criterion_8_stretch_minor_membership(ctx):
    _run(checks.check_radical_membership, ctx, "8 (membership)", STRETCH_BUDGET)


def test_criterion_8_stretch_intersection_profile(ctx):
    _run(checks.check_radical_intersection, ctx, "8 (intersection)", STRETCH_BUDGET)


def test_criterion_9_property_suites(ctx):
    _run(checks.check_properties, ctx, "9")
