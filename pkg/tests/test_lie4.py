import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lievariety import discover, lie4
from lievariety.arith import rank_certified
from lievariety.groebner import buchberger, membership
from lievariety.lie4 import (
    STRUCT, StructureTensor, act, adjoint, base_point, c2_birational, c2_grading, c2_graph, c2_script_map,
    component_chart, derived_minors, highest_weight_vectors, identity, jacobi_theta, lower_left_minor,
    mat_mul, second_derived_cubics, symbolic_tensor, theta_list, theta_split, trace, trace_forms, wedge2,
)
from lievariety.poly import multidegree, parse, to_text

P = lambda text: parse(text, STRUCT)  # noqa: E731


def _rank_of(polys):
    monos = sorted({m for f in polys for m in f.terms})
    return rank_certified([[f.terms.get(m, 0) for m in monos] for f in polys])


def _samples(i, n=6):
    return discover.sample(i, n, seed=3).points


def _rational_matrix(rng):
    while True:
        g = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        if lie4.det(g) != 0:
            return g


# --- Jacobi quadrics

def test_theta_displays():
    th = jacobi_theta()
    assert th[0][0] == P("a_124*a_131 - a_121*a_134 + a_124*a_232 + a_134*a_233 - a_122*a_234"
                         " - a_133*a_234 + a_144*a_234 - a_134*a_244 + a_124*a_344")
    assert th[0][1] == P("a_123*a_131 - a_121*a_133 + a_123*a_232 - a_122*a_233 + a_143*a_234"
                         " - a_134*a_243 + a_124*a_343")
    assert th[1][0] == P("-a_124*a_141 + a_121*a_144 + a_143*a_234 - a_124*a_242 - a_134*a_243"
                         " + a_122*a_244 + a_123*a_344")


def test_theta_row_two_expansion():
    # row 2 is -(Jacobi expression for 1,2,4) with columns e4, e3, e2, e1
    coeffs = lie4.jacobi_coefficients(symbolic_tensor(), 1, 2, 4)
    assert jacobi_theta()[1] == [-coeffs[3], -coeffs[2], -coeffs[1], -coeffs[0]]


def test_theta_grading_and_count():
    qs = theta_list()
    assert len(qs) == 16
    assert all(q.degree() == 2 and multidegree(q) != "inhomogeneous" for q in qs)
    assert _rank_of(qs) == 16


def test_theta_split():
    th = jacobi_theta()
    sym, skew = theta_split()
    assert len(sym) == 10 and len(skew) == 6
    assert sym[0] == 2 * th[0][0]
    assert skew[0] == th[0][1] - th[1][0]
    assert _rank_of(sym + skew) == 16


# --- adjoints and traces

def test_traces():
    assert trace(adjoint(1)) == P("a_122 + a_133 + a_144")
    assert trace(adjoint(2)) == P("-a_121 + a_233 + a_244")
    assert [to_text(f) for f in trace_forms()] == [
        "a_122 + a_133 + a_144", "-a_121 + a_233 + a_244", "-a_131 - a_232 + a_344", "-a_141 - a_242 - a_343"]


def test_adjoint_one_is_padded_block_of_a():
    A = symbolic_tensor().A
    ad = adjoint(1)
    for j in range(4):
        for k in range(4):
            expected = 0 if j == 0 else A[k][j - 1]
            assert ad[j][k] == expected


def test_adjoint_bad_index():
    with pytest.raises(ValueError):
        adjoint(5)


# --- wedge2 and the action

def test_wedge2_examples():
    assert wedge2(identity(4)) == identity(6)
    D = wedge2([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])
    assert [D[i][i] for i in range(6)] == [2, 3, 4, 6, 8, 12]
    assert all(D[i][j] == 0 for i in range(6) for j in range(6) if i != j)


@given(st.integers(0, 2 ** 32))
def test_wedge2_multiplicative(seed):
    rnd = random.Random(seed)
    g, h = _rational_matrix(rnd), _rational_matrix(rnd)
    assert mat_mul(wedge2(g), wedge2(h)) == wedge2(mat_mul(g, h))


def test_act_identity():
    T = symbolic_tensor()
    assert act(identity(4), T) == T


@given(st.integers(0, 2 ** 32))
def test_act_composes(seed):
    rnd = random.Random(seed)
    g, h = _rational_matrix(rnd), _rational_matrix(rnd)
    T = StructureTensor([[Fraction(rnd.randint(-3, 3)) for _ in range(6)] for _ in range(4)])
    assert act(h, act(g, T)) == act(mat_mul(g, h), T)


def test_act_singular():
    with pytest.raises(ValueError):
        act([[1, 0, 0, 0]] * 4, base_point(1))


def test_theta_span_stable_under_action():
    rng = random.Random(11)
    base = theta_list()
    r = _rank_of(base)
    for _ in range(3):
        moved = [q for row in jacobi_theta(act(_rational_matrix(rng), symbolic_tensor())) for q in row]
        for q in moved:
            assert _rank_of(base + [q]) == r


def test_action_keeps_c4_point_on_c4():
    T = act([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]], base_point(4))
    pt = T.vector()
    assert all(f.evaluate(pt) == 0 for f in discover.minimal_generators(4, 3))


# --- component charts

def test_base_points():
    A3 = StructureTensor(base_point(3, 5, 7).A)
    nonzero = {n: v for n, v in zip(lie4.STRUCT_NAMES, A3.vector()) if v}
    assert nonzero == {"a_122": 1, "a_133": 5, "a_144": 7}
    A4 = component_chart(4)
    at_identity = {n: v.evaluate([1 if g[1] == g[2] else 0 for g in lie4.G_NAMES])
                   for n, v in zip(lie4.STRUCT_NAMES, A4.vector())}
    assert {n: v for n, v in at_identity.items() if v} == {"a_121": 1, "a_344": 1}


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_jacobi_vanishes_on_charts(i):
    th = jacobi_theta(component_chart(i))
    assert all(not q for row in th for q in row)


def test_chart_bad_index():
    with pytest.raises(ValueError):
        component_chart(0)


def test_c2_birational():
    chart = c2_birational()
    u = lie4.c2_universe()
    assert chart["a_124"] == parse("k5", u)
    # the script's generator is a144-f4*k5-f5*k6-k1-k4
    assert chart["a_144"] == parse("f4*k5 + f5*k6 + k1 + k4", u)
    assert chart["a_234"] == parse("f1*k6 - f2*k5 + m", u)
    assert chart == c2_script_map()


def test_c2_grading():
    params, struct = c2_grading()
    weights = params + struct
    for g in c2_graph():
        u = g.universe
        assert len({sum(w * e for w, e in zip(weights, u.unpack(m))) for m in g.terms}) == 1
    with pytest.raises(ValueError):
        c2_grading((1, 1, 1, 1))


# --- minors and cubics

def test_minor_counts():
    assert len(derived_minors(3)) == 80
    assert len(derived_minors(4)) == 15
    with pytest.raises(ValueError):
        derived_minors(2)


def test_lower_left_minor():
    assert lower_left_minor() == P("a_122*a_133*a_144 - a_122*a_134*a_143 - a_123*a_132*a_144"
                                   " + a_123*a_134*a_142 + a_124*a_132*a_143 - a_124*a_133*a_142")


def test_four_minors_vanish_on_all_components():
    minors = derived_minors(4)
    for i in range(1, 5):
        for pt in _samples(i, 3):
            assert all(f.evaluate(pt) == 0 for f in minors)


def test_three_minors_cut_out_c4():
    minors = derived_minors(3)
    assert all(f.evaluate(pt) == 0 for pt in _samples(4) for f in minors)
    assert any(f.evaluate(pt) != 0 for pt in _samples(3) for f in minors)


def test_second_derived_cubics():
    cubics = second_derived_cubics()
    assert len(cubics) == 60 and all(f.degree() == 3 for f in cubics if f)
    for i in (3, 4):
        assert all(f.evaluate(pt) == 0 for pt in _samples(i) for f in cubics)
    assert any(f.evaluate(pt) != 0 for pt in _samples(1, 2) for f in cubics)


def test_cubics_meet_jacobi_cubics():
    cubics = [f for f in second_derived_cubics() if f]
    units = STRUCT.gens()
    jacobi3 = [x * q for q in theta_list() for x in units]
    a, b = _rank_of(cubics), _rank_of(jacobi3)
    assert a + b - _rank_of(cubics + jacobi3) >= 20


# --- highest weight vectors

def test_highest_weight_vectors():
    hw = highest_weight_vectors()
    assert set(hw) == {"f3000", "g3000", "hw_2100", "hw_1110", "c3_quadric", "c4_minor"}
    assert len(hw["hw_2100"]) == 51 and len(hw["hw_1110"]) == 39
    assert all(multidegree(f) != "inhomogeneous" for f in hw.values())
    ad1 = adjoint(1)
    assert hw["g3000"] == STRUCT.zero() + trace(mat_mul(mat_mul(ad1, ad1), ad1))
    assert set(hw["g3000"].terms.values()) <= {1, 3, 6}
    assert hw["c4_minor"] == lower_left_minor()


def test_g3000_and_f3000_modulo_trace_forms():
    # both reduce to multiples of one cubic: f to -8 D and g to -3 D, so the
    # combination 8 g - 3 f is in the ideal while g - f itself is not
    hw = highest_weight_vectors()
    traces = buchberger(trace_forms())
    f, g = hw["f3000"], hw["g3000"]
    assert membership(8 * g - 3 * f, traces)
    assert not membership(g - f, traces)
    assert not membership(g, traces)


def test_cubic_vanishing_pattern():
    hw = highest_weight_vectors()
    f, g = hw["f3000"], hw["g3000"]
    assert all(f.evaluate(pt) == 0 for i in (1, 2) for pt in _samples(i))
    assert all(g.evaluate(pt) == 0 for pt in _samples(1))
    assert any(g.evaluate(pt) != 0 for pt in _samples(2))
    assert all(hw["c3_quadric"].evaluate(pt) == 0 for pt in _samples(3))
