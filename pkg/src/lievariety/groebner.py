"""Buchberger's algorithm with the normal/sugar strategy and Gebauer-Moeller criteria.

Internally a polynomial is a pair of parallel lists (keys, coeffs) sorted by
decreasing key, where a key is the order-encoded packed monomial from
``poly.OrderEncoder``.  Keys add under multiplication, compare as the
monomial order, and their low exponent fields carry guard bits, so
divisibility is one subtraction and one mask.

Coefficients live either in Q (primitive integer polynomials, fraction-free
reduction) or in Z/p for a word-size prime p.
"""

from __future__ import annotations

import heapq
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import rank_certified
from .poly import (
    FIELD_MASK, GREVLEX, MonomialOrder, OrderEncoder, Polynomial, VarUniverse, block_elim,
    monomial_multidegree, multidegree, normal_form, total_degree,
)

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """The configured pair or time budget ran out before the basis was complete."""

    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


class NotGroebnerError(ValueError):
    pass


@dataclass
class Budget:
    max_pairs: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class IdealBasis:
    universe: VarUniverse
    generators: List[Polynomial]
    order: MonomialOrder = GREVLEX
    groebner_flag: bool = False
    modulus: int = 0
    stats: dict = field(default_factory=dict, repr=False)
    degree_bound: Optional[int] = None

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [self.universe.unpack(g.leading_monomial(self.order)) for g in self.generators]

    def __len__(self):
        return len(self.generators)


# ---------------------------------------------------------------------------
# internal representation

class _Ring:
    def __init__(self, universe: VarUniverse, order: MonomialOrder, modulus: int):
        self.universe = universe
        self.order = order
        self.p = modulus
        self.enc = OrderEncoder(universe, order)
        self.guard = universe.guard
        self.exp_mask = self.enc.exp_mask
        self.shifts = universe._shifts
        self.weights = order.degree_weights(universe.n)

    def to_internal(self, f: Polynomial):
        p = self.p
        items = []
        if p:
            for m, c in f.terms.items():
                c = Fraction(c)
                v = (c.numerator * pow(c.denominator, -1, p)) % p
                if v:
                    items.append((self.enc.encode(m), v))
        else:
            den = 1
            for c in f.terms.values():
                if isinstance(c, Fraction):
                    den = den * c.denominator // gcd(den, c.denominator)
            for m, c in f.terms.items():
                items.append((self.enc.encode(m), int(c * den)))
        items.sort(reverse=True)
        keys = [k for k, _ in items]
        coeffs = [c for _, c in items]
        return self.normalize(keys, coeffs)

    def normalize(self, keys, coeffs):
        """Monic mod p; primitive with positive leading coefficient over Q."""
        if not keys:
            return keys, coeffs
        p = self.p
        if p:
            lc = coeffs[0]
            if lc != 1:
                inv = pow(lc, -1, p)
                coeffs = [(c * inv) % p for c in coeffs]
            return keys, coeffs
        g = 0
        for c in coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        if coeffs[0] < 0:
            g = -g
        if g != 1:
            coeffs = [c // g for c in coeffs]
        return keys, coeffs

    def to_polynomial(self, keys, coeffs, monic=True) -> Polynomial:
        u = self.universe
        mask = self.exp_mask
        if self.p or not monic or not keys:
            return Polynomial(u, {k & mask: c for k, c in zip(keys, coeffs)})
        lc = coeffs[0]
        return Polynomial(u, {k & mask: Fraction(c, lc) for k, c in zip(keys, coeffs)})

    def lcm(self, a: int, b: int) -> int:
        ea, eb = a & self.exp_mask, b & self.exp_mask
        m = 0
        for s in self.shifts:
            x = (ea >> s) & FIELD_MASK
            y = (eb >> s) & FIELD_MASK
            m |= (x if x > y else y) << s
        return self.enc.encode(m)

    def degree(self, key: int) -> int:
        """Weighted degree (the sugar grading)."""
        e = key & self.exp_mask
        return sum(w * ((e >> s) & FIELD_MASK) for w, s in zip(self.weights, self.shifts))

    def is_constant(self, key: int) -> bool:
        return not key & self.exp_mask

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = a & self.exp_mask, b & self.exp_mask
        for s in self.shifts:
            if (ea >> s) & FIELD_MASK and (eb >> s) & FIELD_MASK:
                return False
        return True


class _Reducer:
    """Division by a growing list of basis polynomials with a lookup cache."""

    def __init__(self, ring: _Ring):
        self.ring = ring
        self.polys: List[Tuple[list, list]] = []
        self.leads: List[int] = []
        self.active: List[bool] = []
        self._cache: Dict[int, Tuple[int, int]] = {}
        # normal strategy (smallest lcm first) instead of sugar, for inhomogeneous input
        self.select_by_lcm = False

    def add(self, keys, coeffs) -> int:
        self.polys.append((keys, coeffs))
        self.leads.append(keys[0])
        self.active.append(True)
        return len(self.polys) - 1

    def deactivate(self, i: int):
        self.active[i] = False
        self._cache.clear()

    def find(self, k: int) -> int:
        """An active basis element whose lead divides k, or -1.

        Graded input takes the oldest divisor; otherwise the one with the
        smallest lead, which keeps intermediate polynomials short.
        """
        hit = self._cache.get(k)
        n = len(self.leads)
        best, start = -1, 0
        if hit is not None:
            best, start = hit
            if best >= 0 and not self.active[best]:
                best, start = -1, 0
            elif best >= 0 and (start == n or not self.select_by_lcm):
                return best
        guard = self.ring.guard
        leads = self.leads
        active = self.active
        if not self.select_by_lcm:
            for i in range(start, n):
                if active[i] and not ((k - leads[i]) & guard):
                    self._cache[k] = (i, n)
                    return i
        else:
            for i in range(start, n):
                if active[i] and not ((k - leads[i]) & guard) and (best < 0 or leads[i] < leads[best]):
                    best = i
        self._cache[k] = (best, n)
        return best

    def reduce(self, terms: Dict[int, int], full: bool = True):
        """Normal form of the polynomial given as a key->coeff dict (consumed)."""
        ring = self.ring
        p = ring.p
        heap = [-k for k in terms]
        heapq.heapify(heap)
        res_keys: List[int] = []
        res_coeffs: List[int] = []
        pop = heapq.heappop
        push = heapq.heappush
        polys = self.polys
        find = self.find
        get = terms.get
        scaled = 0
        while heap:
            k = -pop(heap)
            c = terms.pop(k, 0)
            if not c:
                continue
            idx = find(k)
            if idx < 0:
                res_keys.append(k)
                res_coeffs.append(c)
                if not full:
                    rest = sorted(((kk, cc) for kk, cc in terms.items() if cc), reverse=True)
                    res_keys.extend(kk for kk, _ in rest)
                    res_coeffs.extend(cc for _, cc in rest)
                    break
                continue
            gkeys, gcoeffs = polys[idx]
            shift = k - gkeys[0]
            if p:
                b = c
                for gk, gc in zip(gkeys[1:], gcoeffs[1:]):
                    t = gk + shift
                    v = get(t)
                    if v is None:
                        push(heap, -t)
                        terms[t] = (-b * gc) % p
                    else:
                        terms[t] = (v - b * gc) % p
            else:
                lc = gcoeffs[0]
                d = gcd(c, lc)
                a = lc // d
                b = c // d
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    for t in terms:
                        terms[t] *= a
                    res_coeffs = [x * a for x in res_coeffs]
                    scaled += 1
                for gk, gc in zip(gkeys[1:], gcoeffs[1:]):
                    t = gk + shift
                    v = get(t)
                    if v is None:
                        push(heap, -t)
                        terms[t] = -b * gc
                    else:
                        terms[t] = v - b * gc
                if scaled >= 8:
                    # keep intermediate coefficients from swelling
                    scaled = 0
                    res_coeffs = _divide_content(terms, res_coeffs)
        return ring.normalize(res_keys, res_coeffs)


def _divide_content(terms: Dict[int, int], res_coeffs: List[int]) -> List[int]:
    g = 0
    for c in res_coeffs:
        g = gcd(g, c)
        if g == 1:
            return res_coeffs
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return res_coeffs
    if g > 1:
        for t in terms:
            terms[t] //= g
        res_coeffs = [c // g for c in res_coeffs]
    return res_coeffs


# ---------------------------------------------------------------------------
# Buchberger

def _spoly(ring: _Ring, f, g, L: int) -> Dict[int, int]:
    fk, fc = f
    gk, gc = g
    sf = L - fk[0]
    sg = L - gk[0]
    p = ring.p
    if p:
        a, b = 1, 1
    else:
        d = gcd(fc[0], gc[0])
        a, b = gc[0] // d, fc[0] // d
    terms: Dict[int, int] = {}
    for k, c in zip(fk[1:], fc[1:]):
        terms[k + sf] = a * c
    for k, c in zip(gk[1:], gc[1:]):
        t = k + sg
        v = terms.get(t, 0) - b * c
        terms[t] = v % p if p else v
    return terms


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, modulus: int = 0,
               budget: Budget | None = None, progress: bool = False,
               universe: VarUniverse | None = None, degree_bound: int | None = None) -> IdealBasis:
    """Reduced Groebner basis (monic) of the ideal generated by gens.

    With modulus=0 the computation is over Q; otherwise over Z/modulus.
    For input homogeneous in the order's (weighted) grading, degree_bound
    stops after all pairs of that degree; the result is then a Groebner
    basis only up to that degree.
    """
    gens = [g for g in gens if g]
    if not gens:
        if universe is None:
            raise ValueError("the zero ideal needs an explicit universe")
        return IdealBasis(universe, [], order, True, modulus, {"pairs": 0})
    universe = gens[0].universe
    if any(g.universe != universe for g in gens):
        raise ValueError("generators over different universes")
    ring = _Ring(universe, order, modulus)
    budget = budget or Budget()
    t0 = time.monotonic()
    red = _Reducer(ring)
    sugar: List[int] = []
    pairs: List[tuple] = []
    stats = {"pairs": 0, "zero_reductions": 0, "criteria_skipped": 0, "max_degree": 0}

    inputs = [ring.to_internal(g) for g in gens]
    inputs.sort(key=lambda f: (ring.degree(f[0][0]), f[0][0], f[1][0]))
    # sugar only pays off when the input is graded; otherwise select pairs by lcm alone
    red.select_by_lcm = any(len({ring.degree(k) for k in f[0]}) > 1 for f in inputs)
    if degree_bound is not None and red.select_by_lcm:
        raise ValueError("degree_bound needs homogeneous generators")
    if ring.is_constant(inputs[0][0][0]):
        return _unit_ideal(ring, stats)

    def insert(f, s):
        h = red.add(*f)
        sugar.append(s)
        _update(ring, red, pairs, h, sugar, stats)

    for f in inputs:
        r = red.reduce(dict(zip(*f)))
        if r[0]:
            if ring.is_constant(r[0][0]):
                return _unit_ideal(ring, stats)
            insert(r, max(ring.degree(k) for k in r[0]))

    current_sugar = -1
    snapshot_size = 0
    truncated = False
    while pairs:
        s, L, i, j = heapq.heappop(pairs)
        if degree_bound is not None and s > degree_bound:
            truncated = True
            break
        if s != current_sugar:
            if current_sugar >= 0 and len(red.polys) > snapshot_size:
                _snapshot(ring, red)
                snapshot_size = len(red.polys)
            current_sugar = s
            stats["max_degree"] = max(stats["max_degree"], s)
            if progress:
                log.info("degree %d: %d pairs left, basis size %d, %d pairs done",
                         s, len(pairs) + 1, len(red.polys), stats["pairs"])
        stats["pairs"] += 1
        if budget.max_pairs is not None and stats["pairs"] > budget.max_pairs:
            raise BudgetExceeded(f"pair budget {budget.max_pairs} exhausted at degree {s}", dict(stats))
        if budget.max_seconds is not None and time.monotonic() - t0 > budget.max_seconds:
            raise BudgetExceeded(f"time budget {budget.max_seconds}s exhausted at degree {s}", dict(stats))
        r = red.reduce(_spoly(ring, red.polys[i], red.polys[j], L))
        if not r[0]:
            stats["zero_reductions"] += 1
            continue
        if ring.is_constant(r[0][0]):
            return _unit_ideal(ring, stats)
        insert(r, s)

    basis = _interreduce(ring, red)
    stats["seconds"] = time.monotonic() - t0
    stats["size"] = len(basis)
    polys = [ring.to_polynomial(k, c) for k, c in basis]
    if truncated:
        return IdealBasis(universe, polys, order, False, modulus, stats, degree_bound)
    return IdealBasis(universe, polys, order, True, modulus, stats)


def _tail_reduce(ring: _Ring, red: _Reducer, f):
    """Fully reduce everything below the leading term of f; the lead is kept (rescaled over Q)."""
    keys, coeffs = f
    p = ring.p
    lead_k, lead_c = keys[0], coeffs[0]
    terms = dict(zip(keys[1:], coeffs[1:]))
    heap = [-k for k in terms]
    heapq.heapify(heap)
    res: Dict[int, int] = {}
    get = terms.get
    while heap:
        k = -heapq.heappop(heap)
        c = terms.pop(k, 0)
        if not c:
            continue
        idx = red.find(k)
        if idx < 0:
            res[k] = c
            continue
        gk, gc = red.polys[idx]
        shift = k - gk[0]
        if p:
            b = (c * pow(gc[0], -1, p)) % p
        else:
            d = gcd(c, gc[0])
            a, b = gc[0] // d, c // d
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for t in terms:
                    terms[t] *= a
                for t in res:
                    res[t] *= a
                lead_c *= a
        for k2, c2 in zip(gk[1:], gc[1:]):
            t = k2 + shift
            v = get(t)
            if v is None:
                heapq.heappush(heap, -t)
                v = 0
            v -= b * c2
            terms[t] = v % p if p else v
    items = sorted(((k, c) for k, c in res.items() if c), reverse=True)
    return ring.normalize([lead_k] + [k for k, _ in items], [lead_c] + [c for _, c in items])


def _snapshot(ring: _Ring, red: _Reducer):
    """Interreduce the active basis in place once a degree is finished (leads are unchanged)."""
    for i in range(len(red.polys)):
        if red.active[i]:
            red.polys[i] = _tail_reduce(ring, red, red.polys[i])


def _unit_ideal(ring: _Ring, stats) -> IdealBasis:
    return IdealBasis(ring.universe, [ring.universe.const(1)], ring.order, True, ring.p, stats)


def _update(ring: _Ring, red: _Reducer, pairs: list, h: int, sugar: List[int], stats: dict):
    """Gebauer-Moeller installation of the new basis element h."""
    leads = red.leads
    lh = leads[h]
    guard = ring.guard
    cands = []
    for i in range(h):
        if red.active[i]:
            L = ring.lcm(leads[i], lh)
            s = max(sugar[i] + ring.degree(L) - ring.degree(leads[i]),
                    sugar[h] + ring.degree(L) - ring.degree(lh))
            if red.select_by_lcm:
                s = 0
            cands.append((L, i, ring.coprime(leads[i], lh), s))
    # chain criterion among the new pairs: drop (i,h) if some other new lcm properly divides it
    kept = []
    for idx, (L, i, cop, s) in enumerate(cands):
        dominated = False
        for jdx, (L2, j, cop2, s2) in enumerate(cands):
            if jdx == idx:
                continue
            if not ((L - L2) & guard):
                if L2 != L or (jdx < idx):
                    if not (L2 == L and cop and not cop2):
                        dominated = True
                        break
        if not dominated:
            kept.append((L, i, cop, s))
    # product criterion
    new_pairs = []
    for L, i, cop, s in kept:
        if cop:
            stats["criteria_skipped"] += 1
        else:
            new_pairs.append((s, L, i, h))
    stats["criteria_skipped"] += len(cands) - len(kept)
    # old pairs made redundant by h
    survivors = []
    for pr in pairs:
        s, L, i, j = pr
        if not ((L - lh) & guard):
            Li = ring.lcm(leads[i], lh)
            Lj = ring.lcm(leads[j], lh)
            if Li != L and Lj != L:
                stats["criteria_skipped"] += 1
                continue
        survivors.append(pr)
    if len(survivors) != len(pairs):
        pairs[:] = survivors
        heapq.heapify(pairs)
    for pr in new_pairs:
        heapq.heappush(pairs, pr)
    # basis elements whose lead is divisible by lh no longer need new pairs
    for i in range(h):
        if red.active[i] and not ((leads[i] - lh) & guard):
            red.active[i] = False
    red._cache.clear()


def _interreduce(ring: _Ring, red: _Reducer):
    guard = ring.guard
    items = sorted(red.polys, key=lambda f: f[0][0])
    minimal = []
    for f in items:
        lf = f[0][0]
        if any(not ((lf - g[0][0]) & guard) for g in minimal):
            continue
        minimal.append(f)
    tmp = _Reducer(ring)
    for f in minimal:
        tmp.add(*f)
    for idx, f in enumerate(minimal):
        tmp.polys[idx] = _tail_reduce(ring, tmp, f)
    return sorted(tmp.polys, key=lambda f: f[0][0])


# ---------------------------------------------------------------------------
# derived operations

def is_groebner(B: IdealBasis, max_pairs: int | None = None, seed: int = 0) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero.

    Exhaustive by default; with max_pairs, a seeded random subset of the
    non-coprime pairs is checked instead.
    """
    ring = _Ring(B.universe, B.order, B.modulus)
    red = _Reducer(ring)
    polys = [ring.to_internal(g) for g in B.generators]
    for f in polys:
        red.add(*f)
    todo = [(i, j) for i in range(len(polys)) for j in range(i + 1, len(polys))
            if not ring.coprime(polys[i][0][0], polys[j][0][0])]
    if max_pairs is not None and len(todo) > max_pairs:
        todo = sorted(random.Random(seed).sample(todo, max_pairs))
    for i, j in todo:
        L = ring.lcm(polys[i][0][0], polys[j][0][0])
        if red.reduce(_spoly(ring, polys[i], polys[j], L))[0]:
            return False
    return True


def is_reduced(B: IdealBasis) -> bool:
    """Monic, and no leading monomial divides any term of another element."""
    u = B.universe
    leads = [g.leading_monomial(B.order) for g in B.generators]
    for g, lm in zip(B.generators, leads):
        if g.leading_coefficient(B.order) != 1:
            return False
        for m in g.terms:
            if any(u.divides(l2, m) for l2 in leads if l2 != lm):
                return False
    return True


def reduce_polynomial(f: Polynomial, B: IdealBasis) -> Polynomial:
    """Normal form of f with respect to the basis (same order and field)."""
    if not f or not B.generators:
        return f
    if B.modulus:
        ring = _Ring(B.universe, B.order, B.modulus)
        red = _Reducer(ring)
        for g in B.generators:
            red.add(*ring.to_internal(g))
        k, c = ring.to_internal(f)
        r = red.reduce(dict(zip(k, c)))
        return ring.to_polynomial(*r, monic=False)
    return normal_form(f, B.generators, B.order)


def membership(f: Polynomial, I: IdealBasis) -> bool:
    """f in I, decided by reduction against a Groebner basis.

    A degree-truncated basis decides membership only for homogeneous f of
    degree at most its bound.
    """
    if not I.groebner_flag:
        if I.degree_bound is None:
            raise NotGroebnerError("membership needs a Groebner basis")
        w = I.order.degree_weights(I.universe.n)
        degs = {sum(a * e for a, e in zip(w, I.universe.unpack(m))) for m in f.terms}
        if len(degs) > 1 or max(degs, default=0) > I.degree_bound:
            raise NotGroebnerError(f"basis is only complete up to degree {I.degree_bound}")
    if not f:
        return True
    if not I.generators:
        return False
    ring = _Ring(I.universe, I.order, I.modulus)
    red = _Reducer(ring)
    for g in I.generators:
        red.add(*ring.to_internal(g))
    k, c = ring.to_internal(f)
    return not red.reduce(dict(zip(k, c)))[0]


def eliminate(gens: Sequence[Polynomial], k: int, modulus: int = 0, budget: Budget | None = None,
              progress: bool = False, weights: Sequence[int] | None = None,
              degree_bound: int | None = None) -> List[Polynomial]:
    """Generators of the ideal intersected with the ring of the variables after the first k.

    Weights making the generators weighted-homogeneous let the sugar
    strategy proceed degree by degree, which matters for graphs of maps.
    With degree_bound the result generates the elimination ideal only in
    weighted degrees up to the bound.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    B = buchberger(gens, block_elim(k, weights), modulus=modulus, budget=budget, progress=progress,
                   degree_bound=degree_bound)
    u = B.universe
    head = 0
    for s in u._shifts[:k]:
        head |= FIELD_MASK << s
    return [g for g in B.generators if not any(m & head for m in g.terms)]


def intersect(I: Sequence[Polynomial], J: Sequence[Polynomial], modulus: int = 0,
              budget: Budget | None = None, progress: bool = False,
              degree_bound: int | None = None) -> List[Polynomial]:
    """Generators of I cap J from <t*I, (1-t)*J> eliminated against t.

    degree_bound needs homogeneous I and J.  Then t gets weight 0, both
    lifted families are homogeneous, and the truncated computation returns
    generators of I cap J in every degree up to the bound.
    """
    I = [f for f in I if f]
    J = [g for g in J if g]
    if not I or not J:
        return []
    u = I[0].universe
    tname = "t"
    while tname in u.index:
        tname += "_"
    big = VarUniverse((tname,) + u.names)
    t = big.gen(tname)
    lifted = [t * f.change_universe(big) for f in I] + [(1 - t) * g.change_universe(big) for g in J]
    weights = None
    if degree_bound is not None:
        if not all(f.is_homogeneous() for f in I + J):
            raise ValueError("degree_bound needs homogeneous ideals")
        weights = (0,) + (1,) * u.n
    out = eliminate(lifted, 1, modulus=modulus, budget=budget, progress=progress, weights=weights,
                    degree_bound=degree_bound)
    return [f.change_universe(u) for f in out]


# ---------------------------------------------------------------------------
# graded pieces

def _grading(universe: VarUniverse, m: int) -> tuple:
    return (total_degree(universe, m), monomial_multidegree(universe, m))


def minimal_generator_degrees(gens: Sequence[Polynomial], max_degree: int) -> Dict[int, int]:
    """Number of minimal generators in each degree d <= max_degree (nonzero counts only).

    count_d = dim I_d - dim R_1 I_{d-1}.  Both spaces are spanned by monomial
    multiples of the generators; their ranks are computed exactly, bucket by
    bucket for the finest grading in which every generator is homogeneous
    (total degree, refined by the Z^4 weight of structure constants).
    """
    out = {}
    for d, (full, lower) in _graded_ranks(gens, max_degree).items():
        if full - lower:
            out[d] = full - lower
    return out


def ideal_dimensions(gens: Sequence[Polynomial], max_degree: int) -> Dict[int, int]:
    """dim_Q I_d for d = 1..max_degree, I generated by the homogeneous gens."""
    return {d: full for d, (full, _) in _graded_ranks(gens, max_degree).items()}


def _graded_ranks(gens: Sequence[Polynomial], max_degree: int) -> Dict[int, Tuple[int, int]]:
    """d -> (dim I_d, dim R_1 I_{d-1})."""
    gens = [g for g in gens if g]
    if any(not g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous")
    if not gens:
        return {d: (0, 0) for d in range(1, max_degree + 1)}
    u = gens[0].universe
    fine = all(multidegree(g) != "inhomogeneous" for g in gens)

    def key(m):
        return _grading(u, m) if fine else (total_degree(u, m), None)

    gkeys = [key(next(iter(g.terms))) for g in gens]
    out: Dict[int, Tuple[int, int]] = {}
    for d in range(1, max_degree + 1):
        lower: Dict[tuple, List[Dict[int, object]]] = {}
        top: Dict[tuple, List[Dict[int, object]]] = {}
        for g, (e, _) in zip(gens, gkeys):
            if e > d:
                continue
            for m in _monomials(u, d - e):
                row = {m + x: c for x, c in g.terms.items()}
                b = key(next(iter(row)))
                (lower if e < d else top).setdefault(b, []).append(row)
        full = low_total = 0
        for b in set(top) | set(lower):
            low = lower.get(b, [])
            r = _rank(low)
            low_total += r
            full += _rank(low + top[b]) if b in top else r
        out[d] = (full, low_total)
    return out


_MONO_CACHE: Dict[tuple, List[int]] = {}


def _monomials(u: VarUniverse, d: int) -> List[int]:
    hit = _MONO_CACHE.get((u, d))
    if hit is None:
        hit = [u.pack(e) for e in _exponents(u.n, d)]
        _MONO_CACHE[(u, d)] = hit
    return hit


def _exponents(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exponents(n - 1, d - a):
            yield (a,) + rest


def _rank(rows: List[Dict[int, object]]) -> int:
    if not rows:
        return 0
    cols = sorted({m for r in rows for m in r})
    index = {m: i for i, m in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for out, r in zip(dense, rows):
        for m, c in r.items():
            out[index[m]] = c
    return rank_certified(dense)
