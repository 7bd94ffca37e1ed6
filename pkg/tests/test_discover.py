import pytest

from lievariety import discover
from lievariety.arith import nullspace_modular, rank_certified
from lievariety.discover import CertificationError, sample, vanishing_space
from lievariety.groebner import buchberger, membership
from lievariety.lie4 import STRUCT, theta_list, trace_forms
from lievariety.poly import Polynomial


def _rank_of(polys):
    monos = sorted({m for f in polys for m in f.terms})
    return rank_certified([[f.terms.get(m, 0) for m in monos] for f in polys])


def _same_span(a, b):
    r = _rank_of(a + b)
    return r == _rank_of(a) == _rank_of(b)


# --- sampling

def test_sample_examples():
    for pt in sample(4, 5, 7).points:
        A = [list(pt[6 * r: 6 * r + 6]) for r in range(4)]
        assert rank_certified(A) <= 2
    for pt in sample(1, 5, 7).points:
        assert all(f.evaluate(pt) == 0 for f in trace_forms())
    (pt,) = sample(2, 1, 0).points
    assert all(q.evaluate(pt) == 0 for q in theta_list())


def test_sample_is_deterministic_and_distinct():
    a, b = sample(3, 12, 5), sample(3, 12, 5)
    assert a.points == b.points
    assert len(set(a.points)) == 12
    assert sample(3, 12, 6).points != a.points


def test_sample_errors():
    with pytest.raises(ValueError):
        sample(5, 3)
    with pytest.raises(ValueError):
        sample(1, 0)


# --- vanishing spaces

def test_linear_forms():
    V = vanishing_space(1, 1)
    assert V.certified and V.dimension == 4
    assert _same_span(V.basis, trace_forms())
    assert vanishing_space(2, 1).dimension == 0


def test_quadric_dimensions_contain_jacobi():
    # C1: the 90-dimensional span of (linear forms) * (variables), plus 10 quadrics
    for i, dim in [(1, 100), (2, 16), (3, 26), (4, 16)]:
        V = vanishing_space(i, 2)
        assert V.certified and V.dimension == dim
        assert _rank_of(V.basis + theta_list()) == V.dimension


def test_summary():
    s = vanishing_space(3, 2).summary()
    assert s == {"component": 3, "degree": 2, "dimension": 26, "certified": True, "seed": 0}


def test_determinism():
    fresh = discover._vanishing_space.__wrapped__
    n = discover.default_sample_count(2)
    a = fresh(4, 2, n, 1, None, True)
    b = fresh(4, 2, n, 1, None, True)
    assert a.basis == b.basis and list(a.buckets) == list(b.buckets)


def test_monotone_in_samples():
    fresh = discover._vanishing_space.__wrapped__
    dims = [fresh(3, 2, n, 0, None, False).dimension for n in (5, 10, 20, 40, 80)]
    assert all(x >= y for x, y in zip(dims, dims[1:]))
    assert dims[-1] == 26


def test_too_few_samples_fail_certification():
    with pytest.raises(CertificationError) as info:
        discover._vanishing_space.__wrapped__(3, 2, 3, 0, None, True)
    assert info.value.candidate is not None


def test_single_bucket_cannot_be_certified():
    md = next(iter(discover.monomial_buckets(2)))
    V = vanishing_space(3, 2, multidegree_filter=md, certify=False)
    assert not V.certified
    with pytest.raises(CertificationError):
        discover.certify_space(V)


def test_bucketed_equals_unbucketed():
    monos = sorted({m for ms in discover.monomial_buckets(2).values() for m in ms})
    assert len(monos) == 300
    pts = sample(1, 400, 0).points
    rows = [[_mono_value(m, pt) for m in monos] for pt in pts]
    kernel = nullspace_modular(rows)
    full = [Polynomial(STRUCT, {m: c for m, c in zip(monos, v) if c}) for v in kernel]
    assert _same_span(full, vanishing_space(1, 2).basis)


def _mono_value(m, pt):
    v = 1
    for e, x in zip(STRUCT.unpack(m), pt):
        if e:
            v *= x ** e
    return v


def test_certified_forms_match_known_c1_ideal():
    # independently known up to degree 2: the trace forms and the Jacobi quadrics
    known_gens = trace_forms() + theta_list()
    known = buchberger(known_gens)
    for d in (1, 2):
        assert all(membership(f, known) for f in vanishing_space(1, d).basis)
    for f in known_gens:
        V = vanishing_space(1, f.degree()).basis
        assert _rank_of(V + [f]) == len(V)
    products = [x * l for l in trace_forms() for x in STRUCT.gens()] + theta_list()
    assert _rank_of(products) == vanishing_space(1, 2).dimension


# --- profiles

@pytest.mark.parametrize("i, expected", [
    (1, {1: 4, 2: 10, 3: 20}),
    (2, {1: 0, 2: 16, 3: 44}),
    (3, {1: 0, 2: 26, 3: 40}),
    (4, {1: 0, 2: 16, 3: 60}),
])
def test_generator_profiles(i, expected):
    assert discover.generator_profile(i, 3) == expected


def test_profile_degree_limit():
    with pytest.raises(ValueError):
        discover.generator_profile(1, 5)
