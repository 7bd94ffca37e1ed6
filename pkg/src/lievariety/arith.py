"""Exact linear algebra over Q.

Two routes to the same answers:

* fraction-free Gauss-Jordan (Bareiss style) on Python integers, the
  reference path;
* a multi-modular path that row-reduces over several word-size primes with
  the compiled kernel, reconstructs rationals, and accepts the result only
  after exact verification.

Rationals are ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Sequence, Tuple

import numpy as np

from . import _kernels

Rat = Fraction

# primes just below 2**31
PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
          2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
          2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
          2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
          2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943)


class QMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        self.data = tuple(tuple(_rat(x) for x in row) for row in data)
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if any(len(row) != cols for row in self.data):
            raise ValueError("ragged matrix")

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __repr__(self):
        return f"QMatrix({[list(map(str, r)) for r in self.data]})"

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def apply(self, v: Sequence) -> List[Fraction]:
        return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.data]

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _as_matrix(M) -> QMatrix:
    return M if isinstance(M, QMatrix) else QMatrix(M)


def integer_rows(M: QMatrix) -> List[List[int]]:
    """Each row scaled by the lcm of its denominators."""
    out = []
    for row in M.data:
        d = 1
        for x in row:
            d = d * x.denominator // gcd(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


# ---------------------------------------------------------------------------
# fraction-free reference path

def _bareiss_jordan(A: List[List[int]], ncols: int):
    """In-place fraction-free Gauss-Jordan; every pivot ends equal to the last pivot value."""
    nrows = len(A)
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        Ar = A[r]
        for i in range(nrows):
            if i == r:
                continue
            Ai = A[i]
            f = Ai[c]
            if f:
                A[i] = [(p * a - f * b) // prev for a, b in zip(Ai, Ar)]
            elif p != prev:
                A[i] = [(p * a) // prev for a in Ai]
        pivots.append(c)
        prev = p
        r += 1
    return pivots, prev


def rref(M) -> Tuple[QMatrix, int, List[int]]:
    """Reduced row echelon form, rank and pivot columns, computed fraction-free."""
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return M, 0, []
    A = integer_rows(M)
    pivots, d = _bareiss_jordan(A, M.cols)
    rank = len(pivots)
    out = []
    for i in range(M.rows):
        if i < rank:
            out.append([Fraction(a, d) for a in A[i]])
        else:
            out.append([Fraction(0)] * M.cols)
    return QMatrix(out, M.cols), rank, pivots


def rank(M) -> int:
    return rref(M)[1]


def _basis_from_rref(R: Sequence[Sequence[Fraction]], pivots: Sequence[int], cols: int) -> List[List[Fraction]]:
    """Nullspace vectors with a 1 in one free column and 0 in every other free column."""
    pivset = set(pivots)
    basis = []
    for j in range(cols):
        if j in pivset:
            continue
        v = [Fraction(0)] * cols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            x = R[i][j]
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def _normalize_leading(v: List[Fraction]) -> List[Fraction]:
    lead = next(x for x in v if x)
    return [x / lead for x in v] if lead != 1 else v


def nullspace(M) -> List[List[Fraction]]:
    """Basis of {v : M v = 0}; each vector scaled so its first nonzero entry is 1."""
    M = _as_matrix(M)
    R, _, pivots = rref(M)
    return [_normalize_leading(v) for v in _basis_from_rref(R.data, pivots, M.cols)]


def primitive_integer(v: Sequence[Fraction]) -> List[int]:
    """Scale to coprime integers, keeping the sign of the first nonzero entry."""
    d = 1
    for x in v:
        d = d * x.denominator // gcd(d, x.denominator)
    ints = [int(x * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


# ---------------------------------------------------------------------------
# multi-modular path

def rational_reconstruct(a: int, N: int):
    """Fraction n/d with n = a d (mod N), |n|, d <= sqrt(N/2), or None."""
    a %= N
    bound = isqrt(N // 2)
    r0, r1 = N, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _mod_matrix(A: List[List[int]], p: int) -> np.ndarray:
    return np.array([[x % p for x in row] for row in A], dtype=np.int64)


class ModularReconstructionError(RuntimeError):
    pass


def rref_modular(M, max_primes: int = len(PRIMES), verify: bool = True):
    """RREF over Q via CRT over word-size primes.

    The pivot pattern is taken from the prime with the largest rank, which
    is a lower bound for the rational rank.  The reconstructed nullspace is
    then checked exactly; passing that check proves the rank, since the
    verified vectors already span cols - rank dimensions.
    """
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return M, 0, []
    A = integer_rows(M)
    check = (lambda R, piv: _verify_rref(A, R, piv, M.cols)) if verify else None
    R, pivots = modular_rref(lambda p: _mod_matrix(A, p), M.cols, check, max_primes)
    return _pack_rref(R, pivots, M), len(pivots), pivots


def modular_rref(image, cols: int, check=None, max_primes: int = len(PRIMES)):
    """Rational RREF rows and pivots from images mod p.

    ``image(p)`` returns the matrix reduced mod p as an int64 array.  Returns
    once two successive reconstructions agree and ``check(R, pivots)``
    (if given) accepts them.
    """
    best_key = None
    residues: List[np.ndarray] = []
    moduli: List[int] = []
    last = None
    for p in PRIMES[:max_primes]:
        R, piv = _kernels.rref_mod(image(p), p)
        key = (len(piv), [-c for c in piv.tolist()])
        if best_key is None or key > best_key:
            best_key = key
            residues, moduli, last = [], [], None
        elif key < best_key:
            continue
        residues.append(R[: len(piv)])
        moduli.append(p)
        pivots = [-c for c in best_key[1]]
        cand = _crt_reconstruct(residues, moduli, cols)
        if cand is not None and cand == last:
            if check is None or check(cand, pivots):
                return cand, pivots
        last = cand
    raise ModularReconstructionError("rational reconstruction did not stabilize")


def _crt_reconstruct(residues: List[np.ndarray], moduli: List[int], cols: int):
    N = 1
    for p in moduli:
        N *= p
    rows = residues[0].shape[0]
    if rows == 0:
        return []
    # Garner-free CRT on python ints
    acc = [[0] * cols for _ in range(rows)]
    Ncur = 1
    for R, p in zip(residues, moduli):
        inv = pow(Ncur % p, -1, p) if Ncur > 1 else 1
        Rl = R.tolist()
        for i in range(rows):
            ai = acc[i]
            ri = Rl[i]
            for j in range(cols):
                t = ((ri[j] - ai[j]) * inv) % p
                if t:
                    ai[j] += Ncur * t
        Ncur *= p
    out = []
    for row in acc:
        rrow = []
        for x in row:
            if x == 0:
                rrow.append(Fraction(0))
                continue
            f = rational_reconstruct(x, N)
            if f is None:
                return None
            rrow.append(f)
        out.append(tuple(rrow))
    return out


def _verify_rref(A: List[List[int]], R: List[tuple], pivots: List[int], cols: int) -> bool:
    """Exact check that every candidate nullspace vector is killed by A."""
    for v in _basis_from_rref(R, pivots, cols):
        ints = primitive_integer(v)
        nz = [(j, x) for j, x in enumerate(ints) if x]
        for row in A:
            if sum(row[j] * x for j, x in nz):
                return False
    return True


def _pack_rref(R: List[tuple], pivots: List[int], M: QMatrix) -> QMatrix:
    rows = [list(r) for r in R]
    rows += [[Fraction(0)] * M.cols for _ in range(M.rows - len(rows))]
    return QMatrix(rows, M.cols)


def nullspace_modular(M, verify: bool = True) -> List[List[Fraction]]:
    """Same contract as nullspace(), computed through rref_modular."""
    M = _as_matrix(M)
    R, _, pivots = rref_modular(M, verify=verify)
    return [_normalize_leading(v) for v in _basis_from_rref(R.data, pivots, M.cols)]


def rank_certified(M) -> int:
    """Exact rank; modular with exact verification on the smaller side, fraction-free fallback."""
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    T = M if M.cols <= M.rows else M.transpose()
    try:
        return rref_modular(T)[1]
    except ModularReconstructionError:
        return rank(M)
