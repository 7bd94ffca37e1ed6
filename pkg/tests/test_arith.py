from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lievariety.arith import (
    QMatrix, nullspace, nullspace_modular, primitive_integer, rank, rank_certified,
    rational_reconstruct, rref, rref_modular,
)
from lievariety.lie4 import STRUCT, trace_forms


def small_matrices(max_rows=6, max_cols=7):
    entry = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_identity_rref():
    R, r, piv = rref(QMatrix.identity(3))
    assert R == QMatrix.identity(3) and r == 3 and piv == [0, 1, 2]


def test_proportional_rows():
    R, r, piv = rref([[1, 2], [2, 4]])
    assert R.tolist() == [[1, 2], [0, 0]] and r == 1 and piv == [0]


def test_empty_matrix():
    assert rref(QMatrix([], 0))[1] == 0


def test_trace_forms_rank():
    M = [[f.coefficient(STRUCT.unpack(STRUCT.var_mono(i))) for i in range(STRUCT.n)] for f in trace_forms()]
    assert rank(M) == 4


def test_nullspace_examples():
    assert nullspace(QMatrix.identity(2)) == []
    assert nullspace([[1, 1]]) == [[1, -1]]


def test_rational_reconstruct():
    N = 2147483647 * 2147483629
    x = Fraction(-355, 113)
    a = (x.numerator * pow(x.denominator, -1, N)) % N
    assert rational_reconstruct(a, N) == x


def test_primitive_integer():
    assert primitive_integer([Fraction(1, 2), Fraction(-3, 4), 0]) == [2, -3, 0]


@given(small_matrices())
def test_nullspace_vectors_are_killed(rows):
    M = QMatrix(rows)
    basis = nullspace(M)
    assert len(basis) == M.cols - rank(M)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))
        assert next(x for x in v if x) == 1


@given(small_matrices())
def test_rref_idempotent(rows):
    R, r, piv = rref(rows)
    R2, r2, piv2 = rref(R)
    assert R2 == R and r2 == r and piv2 == piv
    assert piv == sorted(set(piv))


@given(small_matrices(), st.randoms(use_true_random=False), st.fractions(min_value=1, max_value=5))
def test_rank_invariant_under_row_operations(rows, rnd, scale):
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    shuffled[0] = [x * scale for x in shuffled[0]]
    assert rank(shuffled) == rank(rows)


@given(small_matrices())
def test_modular_route_agrees(rows):
    R, r, piv = rref(rows)
    Rm, rm, pivm = rref_modular(rows)
    assert (Rm, rm, pivm) == (R, r, piv)
    assert nullspace_modular(rows) == nullspace(rows)
    assert rank_certified(rows) == r


def test_modular_route_large_entries():
    rows = [[Fraction(3 ** 40, 7), 1, 2], [5, Fraction(-2 ** 50, 3), 1], [1, 1, 1]]
    assert rref_modular(rows)[0] == rref(rows)[0]


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_kernel_backends(backend):
    from lievariety import _kernels
    if backend == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    import numpy as np
    rng = np.random.default_rng(0)
    p = 2147483647
    M = rng.integers(0, p, size=(12, 15))
    M[5] = (M[1] * 3 + M[2]) % p
    R, piv = _kernels.rref_mod(M, p, backend=backend)
    R0, piv0 = _kernels.rref_mod(M, p, backend="numpy")
    assert list(piv) == list(piv0) and len(piv) == 11
    assert (R[: len(piv)] == R0[: len(piv)]).all()
    exps = rng.integers(0, 3, size=(7, 4))
    pts = rng.integers(-20, 20, size=(5, 4))
    assert (_kernels.eval_monomials_mod(exps, pts, p, backend=backend)
            == _kernels.eval_monomials_mod(exps, pts, p, backend="numpy")).all()
