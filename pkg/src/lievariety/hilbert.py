"""Hilbert series and Hilbert polynomials of homogeneous quotients.

Hilbert polynomials are written in the basis [P^d](n) = C(n+d, d), the
Hilbert polynomial of projective d-space.  In that basis the top index is the
projective dimension and its coefficient is the degree.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .groebner import IdealBasis

Mono = Tuple[int, ...]


# ---------------------------------------------------------------------------
# integer polynomials in t as coefficient lists, lowest degree first

def _padd(a: List[int], b: List[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pmul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: List[int], k: int) -> List[int]:
    return [0] * k + a if a else []


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


# ---------------------------------------------------------------------------
# monomial ideals

def _minimalize(gens: Iterable[Mono]) -> FrozenSet[Mono]:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    kept: List[Mono] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return frozenset(kept)


def _numerator(gens: FrozenSet[Mono], memo: Dict[FrozenSet[Mono], List[int]]) -> List[int]:
    """N(t) for the minimal monomial generating set gens (series N/(1-t)^n)."""
    if not gens:
        return [1]
    hit = memo.get(gens)
    if hit is not None:
        return hit
    glist = list(gens)
    if _pairwise_coprime(glist):
        out = [1]
        for g in glist:
            out = _pmul(out, _padd([1], _shift([-1], sum(g))))
        memo[gens] = out
        return out
    # pivot on the most frequent variable among non-linear generators
    counts: Counter = Counter()
    for g in glist:
        if sum(g) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    v = min(counts, key=lambda i: (-counts[i], i))
    exps = sorted(g[v] for g in glist if g[v])
    e = exps[(len(exps) - 1) // 2]
    piv = tuple(e if i == v else 0 for i in range(len(glist[0])))
    # N(I) = N(I + <piv>) + t^deg(piv) N(I : piv)
    plus = _minimalize(glist + [piv])
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in glist)
    out = _padd(_numerator(plus, memo), _shift(_numerator(colon, memo), e))
    memo[gens] = out
    return out


def _pairwise_coprime(gens: Sequence[Mono]) -> bool:
    seen = 0
    for g in gens:
        mask = 0
        for i, e in enumerate(g):
            if e:
                mask |= 1 << i
        if mask & seen:
            return False
        seen |= mask
    return True


def hilbert_numerator(lead_terms: Sequence[Sequence[int]], nvars: int) -> List[int]:
    """Coefficients (lowest first) of N(t) with Hilbert series N(t)/(1-t)^nvars."""
    gens = []
    for m in lead_terms:
        m = tuple(int(x) for x in m)
        if len(m) != nvars:
            raise ValueError(f"monomial {m} does not have {nvars} exponents")
        gens.append(m)
    return _numerator(_minimalize(gens), {})


def series_coefficients(numerator: Sequence[int], nvars: int, upto: int) -> List[int]:
    """Hilbert function values HF(0..upto) from N(t)/(1-t)^nvars."""
    out = []
    for n in range(upto + 1):
        s = 0
        for k, c in enumerate(numerator):
            if c and k <= n:
                s += c * comb(n - k + nvars - 1, nvars - 1) if nvars else (c if k == n else 0)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# Hilbert polynomials

def _binom_poly(n: int, d: int) -> int:
    return comb(n + d, d) if n + d >= 0 else 0


@dataclass(frozen=True)
class HilbertPolynomial:
    coeffs: Tuple[Tuple[int, int], ...]  # (d, c) pairs, d descending, c != 0

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int]) -> "HilbertPolynomial":
        return cls(tuple(sorted(((d, int(c)) for d, c in coeffs.items() if c), reverse=True)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    @property
    def dim(self) -> int:
        return self.coeffs[0][0] if self.coeffs else -1

    @property
    def degree(self) -> int:
        return self.coeffs[0][1] if self.coeffs else 0

    def __call__(self, n: int) -> int:
        return sum(c * comb(n + d, d) for d, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, (d, c) in enumerate(self.coeffs):
            term = f"{abs(c)}*[P^{d}]"
            if i == 0:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "HilbertPolynomial":
        text = text.strip()
        if text == "0":
            return cls(())
        coeffs: Dict[int, int] = {}
        for sign, c, d in re.findall(r"([+-]?)\s*(\d+)\s*\*\s*\[P\^(\d+)\]", text.replace(" ", "")):
            coeffs[int(d)] = coeffs.get(int(d), 0) + (-int(c) if sign == "-" else int(c))
        return cls.from_dict(coeffs)

    def to_power_basis(self) -> List[Fraction]:
        """Coefficients of the same polynomial in powers of n, lowest first."""
        out: List[Fraction] = []
        for d, c in self.coeffs:
            # C(n+d, d) = prod_{k=1..d} (n + k) / d!
            poly = [Fraction(1)]
            for k in range(1, d + 1):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for i, a in enumerate(poly):
                    nxt[i] += a * k
                    nxt[i + 1] += a
                poly = nxt
            scale = Fraction(c, factorial(d))
            while len(out) < len(poly):
                out.append(Fraction(0))
            for i, a in enumerate(poly):
                out[i] += a * scale
        while out and out[-1] == 0:
            out.pop()
        return out

    @classmethod
    def from_power_basis(cls, poly: Sequence[Fraction]) -> "HilbertPolynomial":
        deg = len(poly) - 1
        values = [sum(Fraction(a) * n ** i for i, a in enumerate(poly)) for n in range(deg + 1)]
        return cls.from_dict(_binomial_coefficients(values, 0))


def _binomial_coefficients(values: Sequence, n0: int) -> Dict[int, int]:
    """[P^d] coefficients of the polynomial taking values[i] at n0 + i (degree < len(values)).

    Repeated backward differencing: the D-th difference of sum c_d C(n+d, d)
    is the constant c_D, so peel off the top coefficient and repeat.
    """
    vals = [Fraction(v) for v in values]
    out: Dict[int, int] = {}
    for D in range(len(vals) - 1, -1, -1):
        diff = list(vals)
        for _ in range(D):
            diff = [b - a for a, b in zip(diff, diff[1:])]
        top = diff[-1] if diff else Fraction(0)
        if any(x != top for x in diff):
            raise ValueError("values are not polynomial of the expected degree")
        if top:
            if top.denominator != 1:
                raise ValueError("non-integral coefficient in the [P^d] basis")
            out[D] = int(top)
            vals = [v - top * _binom_poly(n0 + i, D) for i, v in enumerate(vals)]
    return out


def hilbert_polynomial_from_numerator(numerator: Sequence[int], nvars: int) -> HilbertPolynomial:
    num = _trim(list(numerator))
    if not num:
        return HilbertPolynomial(())
    # HF agrees with the polynomial once n > deg N - nvars
    n0 = max(0, len(num) - nvars)
    upto = n0 + nvars
    values = series_coefficients(num, nvars, upto)[n0:]
    return HilbertPolynomial.from_dict(_binomial_coefficients(values, n0))


def regularity_index(numerator: Sequence[int], nvars: int) -> int:
    """Smallest n0 from which the Hilbert function equals the Hilbert polynomial (a bound)."""
    return max(0, len(_trim(list(numerator))) - nvars)


def hilbert_polynomial(I: IdealBasis) -> HilbertPolynomial:
    """Hilbert polynomial of R/I from the leading terms of a homogeneous Groebner basis."""
    if not I.groebner_flag:
        raise ValueError("hilbert_polynomial needs a Groebner basis")
    if any(not g.is_homogeneous() for g in I.generators):
        raise ValueError("ideal must be homogeneous")
    n = I.universe.n
    num = hilbert_numerator(I.leading_monomials(), n)
    return hilbert_polynomial_from_numerator(num, n)


def dim_and_degree(I: IdealBasis) -> Tuple[int, int]:
    hp = hilbert_polynomial(I)
    return hp.dim, hp.degree
