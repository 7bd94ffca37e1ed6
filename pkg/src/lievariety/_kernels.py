"""Hot numeric kernels over Z/p with a numba path and a pure-numpy fallback.

Set LIEVARIETY_NUMBA=0 to force the numpy path (also used when numba is
missing).  Primes must stay below 2**31 so products fit in int64.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_NUMBA = os.environ.get("LIEVARIETY_NUMBA", "1").lower() not in ("0", "false", "no", "off")

try:
    if not _WANT_NUMBA:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


# ---------------------------------------------------------------------------
# numpy implementations

def _rref_mod_numpy(M: np.ndarray, p: int):
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = _inv_mod(M[r, c], p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - (col[nzr, None] * M[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return M, np.array(pivots, dtype=np.int64)


def _eval_monomials_numpy(exps: np.ndarray, pts: np.ndarray, p: int) -> np.ndarray:
    exps = np.asarray(exps, dtype=np.int64)
    pts = np.asarray(pts, dtype=np.int64) % p
    npts, nv = pts.shape
    maxe = int(exps.max()) if exps.size else 0
    powers = np.ones((maxe + 1, npts, nv), dtype=np.int64)
    for e in range(1, maxe + 1):
        powers[e] = (powers[e - 1] * pts) % p
    out = np.ones((npts, exps.shape[0]), dtype=np.int64)
    for v in range(nv):
        col = exps[:, v]
        if not col.any():
            continue
        out = (out * powers[col, :, v].T) % p
    return out


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_mod_nb(M, p):
        rows, cols = M.shape
        for i in range(rows):
            for j in range(cols):
                M[i, j] = M[i, j] % p
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            piv = -1
            for i in range(r, rows):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = M[r, j]
                    M[r, j] = M[piv, j]
                    M[piv, j] = tmp
            inv = _inv_mod_nb(M[r, c], p)
            for j in range(c, cols):
                M[r, j] = (M[r, j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                f = M[i, c]
                if f == 0:
                    continue
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = (M[i, j] - f * M[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots

    @njit(cache=True)
    def _eval_monomials_nb(exps, pts, p):
        npts, nv = pts.shape
        nmon = exps.shape[0]
        out = np.empty((npts, nmon), dtype=np.int64)
        for i in range(npts):
            for m in range(nmon):
                acc = 1
                for v in range(nv):
                    e = exps[m, v]
                    x = pts[i, v] % p
                    while e > 0:
                        acc = (acc * x) % p
                        e -= 1
                out[i, m] = acc
        return out


# ---------------------------------------------------------------------------
# public entry points

def rref_mod(M, p: int, backend: str | None = None):
    """Reduced row echelon form over Z/p.  Returns (R, pivot_columns)."""
    backend = backend or BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        R = np.array(M, dtype=np.int64)
        if R.size == 0:
            return R, np.zeros(0, dtype=np.int64)
        rank, piv = _rref_mod_nb(R, p)
        return R, piv[:rank].copy()
    return _rref_mod_numpy(M, p)


def eval_monomials_mod(exps, pts, p: int, backend: str | None = None) -> np.ndarray:
    """Matrix of monomial values: out[i, m] = prod_v pts[i, v]**exps[m, v] mod p."""
    backend = backend or BACKEND
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    if not isinstance(pts, np.ndarray):
        pts = np.array([[int(v) % p for v in row] for row in pts], dtype=np.int64)
    pts = np.ascontiguousarray(pts % p)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _eval_monomials_nb(exps, pts, p)
    return _eval_monomials_numpy(exps, pts, p)
