"""Low-degree pieces of the component ideals, found by interpolation and then proved.

For a component C_i and degree d, the forms of degree d vanishing on a set of
sample points of C_i are computed bucket by bucket in the Z^4-grading.  The
candidate space W contains the true space V_d, since every sample lies on C_i.
Certification proves W is contained in V_d:

* W is stable under the infinitesimal GL4 action (the six simple root
  derivations; the torus acts diagonally on each bucket), and
* every element of W vanishes identically on the symbolic family A_i(x, y).

A G-stable space of forms vanishing on A_i(x, y) vanishes on the orbit
closure C_i, so W = V_d exactly.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import _kernels
from .arith import modular_rref, rref
from .lie4 import (
    STRUCT, STRUCT_NAMES, act_integral, base_point, det,
    jacobi_theta, symbolic_base_point, symbolic_tensor, wedge2, mat_mul,
)
from .poly import GREVLEX, OrderEncoder, Polynomial, monomial_multidegree, multidegree

log = logging.getLogger(__name__)

HEIGHT = 20
MultiDeg = Tuple[int, int, int, int]


class CertificationError(RuntimeError):
    """A candidate form failed the exact vanishing proof (usually too few samples)."""

    def __init__(self, message: str, candidate: Polynomial | None = None):
        super().__init__(message)
        self.candidate = candidate


@dataclass
class SampleSet:
    component: int
    points: List[Tuple[int, ...]]
    seed: int


@dataclass
class VanishingSpace:
    component: int
    total_degree: int
    basis: List[Polynomial]
    certified: bool
    seed: int
    samples: int
    multidegree_filter: MultiDeg | None = None
    buckets: Dict[MultiDeg, List[Polynomial]] = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def summary(self) -> dict:
        return {"component": self.component, "degree": self.total_degree,
                "dimension": self.dimension, "certified": self.certified, "seed": self.seed}


# ---------------------------------------------------------------------------
# sampling

def sample(component: int, n: int, seed: int = 0) -> SampleSet:
    """n integral points adj(g) * A_i(x, y) * wedge2(g) with small random g, x, y."""
    if component not in (1, 2, 3, 4):
        raise ValueError(f"bad component index {component}")
    if n < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(f"lievariety-sample-{component}-{seed}")
    theta = [q for row in jacobi_theta() for q in row]
    points: List[Tuple[int, ...]] = []
    seen = set()
    while len(points) < n:
        g = [[rng.randint(-HEIGHT, HEIGHT) for _ in range(4)] for _ in range(4)]
        if det(g) == 0:
            continue
        x, y = rng.randint(-HEIGHT, HEIGHT), rng.randint(-HEIGHT, HEIGHT)
        pt = tuple(act_integral(g, base_point(component, x, y)).vector())
        if pt in seen or not any(pt):
            continue
        if any(q.evaluate(pt) for q in theta):
            raise AssertionError("sample point violates the Jacobi identity")
        seen.add(pt)
        points.append(pt)
    return SampleSet(component, points, seed)


# ---------------------------------------------------------------------------
# monomial buckets

_ENC = OrderEncoder(STRUCT, GREVLEX)


@lru_cache(maxsize=None)
def monomial_buckets(d: int) -> Dict[MultiDeg, Tuple[int, ...]]:
    """Degree-d monomials grouped by Z^4 degree, each group in ascending grevlex order."""
    buckets: Dict[MultiDeg, List[int]] = {}
    units = [STRUCT.var_mono(i) for i in range(STRUCT.n)]
    for comb in combinations_with_replacement(range(STRUCT.n), d):
        m = sum(units[i] for i in comb)
        buckets.setdefault(monomial_multidegree(STRUCT, m), []).append(m)
    return {md: tuple(sorted(ms, key=_ENC.encode)) for md, ms in sorted(buckets.items())}


def default_sample_count(d: int) -> int:
    return 2 * max(len(ms) for ms in monomial_buckets(d).values())


# ---------------------------------------------------------------------------
# interpolation

def _bucket_nullspace(monos: Sequence[int], points: SampleSet) -> List[Polynomial]:
    """Reduced echelon basis of the forms on `monos` vanishing at all points.

    Columns are in ascending order, so each basis element's leading monomial
    is its free column and the basis is the reduced one for grevlex.
    """
    exps = np.array([STRUCT.unpack(m) for m in monos], dtype=np.int64)
    pts = points.points

    def image(p):
        return _kernels.eval_monomials_mod(exps, pts, p)

    R, pivots = modular_rref(image, len(monos))
    pivset = set(pivots)
    out = []
    for j, mj in enumerate(monos):
        if j in pivset:
            continue
        terms = {mj: 1}
        for i, pc in enumerate(pivots):
            x = R[i][j]
            if x:
                terms[monos[pc]] = -x
        out.append(Polynomial(STRUCT, terms))
    return out


def vanishing_space(component: int, d: int, samples: int | None = None, seed: int = 0,
                    multidegree_filter: MultiDeg | None = None, certify: bool = True) -> VanishingSpace:
    """Certified basis of the degree-d forms vanishing on C_component."""
    if d < 1:
        raise ValueError("degree must be positive")
    return _vanishing_space(component, d, samples or default_sample_count(d), seed,
                            multidegree_filter, certify)


@lru_cache(maxsize=64)
def _vanishing_space(component, d, samples, seed, md_filter, certify) -> VanishingSpace:
    pts = sample(component, samples, seed)
    buckets: Dict[MultiDeg, List[Polynomial]] = {}
    for md, monos in monomial_buckets(d).items():
        if md_filter is not None and md != md_filter:
            continue
        basis = _bucket_nullspace(monos, pts)
        if basis:
            buckets[md] = basis
    space = VanishingSpace(component, d, [f for b in buckets.values() for f in b], False, seed,
                           samples, md_filter, buckets)
    if certify:
        certify_space(space)
    log.info("C%d degree %d: dimension %d (certified=%s)", component, d, space.dimension, space.certified)
    return space


# ---------------------------------------------------------------------------
# certification

def _lie_derivations() -> List[Dict[int, List[Tuple[int, int]]]]:
    """For each simple root vector E of gl4, the map variable -> linear form of
    the infinitesimal action A -> -E A + A wedge2'(E), as (variable mono, coeff) lists."""
    T = symbolic_tensor()
    derivs = []
    for (p, q) in ((0, 1), (1, 2), (2, 3), (1, 0), (2, 1), (3, 2)):
        E = [[1 if (r, c) == (p, q) else 0 for c in range(4)] for r in range(4)]
        IE = [[(1 if r == c else 0) + E[r][c] for c in range(4)] for r in range(4)]
        W = wedge2(IE)
        W = [[W[r][c] - (1 if r == c else 0) for c in range(6)] for r in range(6)]
        left = mat_mul(E, T.A)
        right = mat_mul(T.A, W)
        delta = {}
        for k in range(4):
            for c in range(6):
                form = STRUCT.zero() + right[k][c] - left[k][c]
                v = STRUCT.var_mono(6 * k + c)
                delta[v] = list(form.terms.items())
        derivs.append(delta)
    return derivs


_DERIVS = None


def apply_derivation(f: Polynomial, delta: Dict[int, List[Tuple[int, int]]]) -> Polynomial:
    u = STRUCT
    out: Dict[int, Fraction] = {}
    shifts = u._shifts
    for m, c in f.terms.items():
        for i, s in enumerate(shifts):
            e = (m >> s) & 0xFF
            if not e:
                continue
            v = 1 << s
            rest = m - v
            for w, a in delta[v]:
                t = rest + w
                out[t] = out.get(t, 0) + c * e * a
    return Polynomial(u, out)


def reduce_in_space(f: Polynomial, basis: Sequence[Polynomial], leads: Sequence[int]) -> Polynomial:
    """f minus its expansion on a reduced echelon basis; zero iff f lies in the span."""
    terms = dict(f.terms)
    for b, lm in zip(basis, leads):
        c = terms.get(lm)
        if not c:
            continue
        for m, bc in b.terms.items():
            v = terms.get(m, 0) - c * bc
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
    return Polynomial(STRUCT, terms)


def _leads(basis: Sequence[Polynomial]) -> List[int]:
    return [max(b.terms, key=_ENC.encode) for b in basis]


def certify_space(space: VanishingSpace) -> VanishingSpace:
    """Prove every basis element vanishes on the component; raises CertificationError."""
    global _DERIVS
    if _DERIVS is None:
        _DERIVS = _lie_derivations()
    if space.multidegree_filter is not None:
        raise CertificationError("a single bucket is not G-stable; certify the full space")
    leads = {md: _leads(b) for md, b in space.buckets.items()}
    for md, basis in space.buckets.items():
        for f in basis:
            for delta in _DERIVS:
                g = apply_derivation(f, delta)
                if not g:
                    continue
                target = multidegree(g)
                tb = space.buckets.get(target, [])
                if reduce_in_space(g, tb, leads.get(target, [])):
                    raise CertificationError(
                        f"space not stable under the Lie algebra action at multidegree {md}; "
                        "increase the number of samples", f)
    base = symbolic_base_point(space.component)
    vals = base.vector()
    for f in space.basis:
        if _vanishes_at(f, vals) is False:
            raise CertificationError(f"candidate does not vanish on A_{space.component}", f)
    space.certified = True
    return space


def _vanishes_at(f: Polynomial, vals: Sequence[Polynomial]) -> bool:
    nonzero = [i for i, v in enumerate(vals) if v]
    mask = 0
    for i in range(STRUCT.n):
        if i not in nonzero:
            mask |= 0x7F << STRUCT._shifts[i]
    acc = None
    for m, c in f.terms.items():
        if m & mask:
            continue
        term = c
        for i in nonzero:
            e = (m >> STRUCT._shifts[i]) & 0xFF
            if e:
                term = vals[i] ** e * term
        acc = term if acc is None else acc + term
    return acc is None or not acc


# ---------------------------------------------------------------------------
# generator counts

@dataclass
class DegreeProfile:
    degree: int
    dimension: int
    from_lower: int
    minimal: List[Polynomial]

    @property
    def count(self) -> int:
        return len(self.minimal)


def degree_profile(component: int, d: int, seed: int = 0, samples: int | None = None) -> DegreeProfile:
    """Minimal generators in degree d: a complement of R_1 * V_{d-1} inside V_d."""
    Vd = vanishing_space(component, d, samples, seed)
    if d == 1:
        return DegreeProfile(1, Vd.dimension, 0, list(Vd.basis))
    Vprev = vanishing_space(component, d - 1, None, seed)
    return _profile_from_spaces(d, Vd.buckets, Vprev.buckets)


def _profile_from_spaces(d, buckets_d, buckets_prev) -> DegreeProfile:
    from .poly import variable_weight
    weights = [variable_weight(n) for n in STRUCT_NAMES]
    units = [STRUCT.var_mono(i) for i in range(STRUCT.n)]
    minimal: List[Polynomial] = []
    from_lower = 0
    dim = 0
    for md, basis in buckets_d.items():
        dim += len(basis)
        leads = _leads(basis)
        rows = []
        for i, w in enumerate(weights):
            src = tuple(a - b for a, b in zip(md, w))
            for f in buckets_prev.get(src, ()):
                prod = Polynomial(STRUCT, {m + units[i]: c for m, c in f.terms.items()})
                if reduce_in_space(prod, basis, leads):
                    raise CertificationError("product of lower-degree form left the vanishing space", prod)
                rows.append([prod.terms.get(lm, 0) for lm in leads])
        if rows:
            R, r, pivots = rref(rows)
            from_lower += r
        else:
            pivots = []
        pivset = set(pivots)
        minimal.extend(b for j, b in enumerate(basis) if j not in pivset)
    return DegreeProfile(d, dim, from_lower, minimal)


def generator_profile(component: int, max_degree: int = 3, seed: int = 0) -> Dict[int, int]:
    """Number of minimal generators of I_{C_i} in each degree up to max_degree."""
    if max_degree > 4:
        raise ValueError("searches above degree 4 are not supported")
    return {d: degree_profile(component, d, seed).count for d in range(1, max_degree + 1)}


def minimal_generators(component: int, max_degree: int = 3, seed: int = 0) -> List[Polynomial]:
    """Certified minimal generators up to max_degree, integral and primitive."""
    out = []
    for d in range(1, max_degree + 1):
        out.extend(f.primitive() for f in degree_profile(component, d, seed).minimal)
    return out
