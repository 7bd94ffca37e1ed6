"""Sparse multivariate polynomials over Q.

Monomials are packed into Python ints, one 8-bit field per variable with the
first variable in the most significant field.  Bit 7 of every field is a guard
bit, so exponents are limited to 127 and a product of monomials is plain
integer addition.  Comparing packed monomials as integers is lex order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Coeff = Union[int, Fraction]

FIELD = 8
FIELD_MASK = (1 << FIELD) - 1
MAX_EXP = 127


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class VarUniverse:
    """An ordered list of distinct variable names."""

    __slots__ = ("names", "index", "n", "guard", "_shifts", "_var_monos")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        self.n = len(self.names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self._shifts = tuple(FIELD * (self.n - 1 - i) for i in range(self.n))
        self.guard = sum(1 << (s + FIELD - 1) for s in self._shifts)
        self._var_monos = tuple(1 << s for s in self._shifts)

    def __eq__(self, other):
        return isinstance(other, VarUniverse) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarUniverse({list(self.names)!r})"

    def __len__(self):
        return self.n

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError(f"exponent vector of length {len(exps)}, expected {self.n}")
        m = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            m |= e << s
        return m

    def unpack(self, m: int) -> Tuple[int, ...]:
        return tuple((m >> s) & FIELD_MASK for s in self._shifts)

    def var_mono(self, i: int) -> int:
        return self._var_monos[i]

    def divides(self, a: int, b: int) -> bool:
        """True if monomial a divides monomial b."""
        return ((b - a) & self.guard) == 0

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self._var_monos[self.index[name]]: 1})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(Polynomial(self, {m: 1}) for m in self._var_monos)

    def const(self, c: Coeff) -> "Polynomial":
        return Polynomial(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def monomial(self, exps: Sequence[int], coeff: Coeff = 1) -> "Polynomial":
        return Polynomial(self, {self.pack(exps): coeff})


def total_degree(universe: VarUniverse, m: int) -> int:
    return sum(universe.unpack(m))


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or block_elim(k): grevlex on the first k variables, ties by grevlex on the rest.

    With nonnegative integer weights, each grevlex block first compares the
    weighted degree, then the ordinary grevlex rows (so zero weights still
    give a well-order).
    """

    kind: str
    k: int = 0
    weights: Tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block_elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block_elim" and self.k < 0:
            raise ValueError("block size must be nonnegative")
        if self.weights is not None:
            if self.kind == "lex":
                raise ValueError("weights apply to graded orders only")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative")

    def __str__(self):
        base = f"block_elim({self.k})" if self.kind == "block_elim" else self.kind
        return base if self.weights is None else f"{base}[w={','.join(map(str, self.weights))}]"

    def weight_rows(self, n: int) -> list[list[int]]:
        """Nonnegative weight matrix whose rows, compared lexicographically, realize the order.

        Exponents themselves (lex) break any remaining tie.
        """
        if self.weights is not None and len(self.weights) != n:
            raise ValueError(f"order has {len(self.weights)} weights for {n} variables")
        if self.kind == "lex":
            return []
        if self.kind == "grevlex":
            return _grevlex_rows(0, n, n, self.weights)
        k = min(self.k, n)
        return _grevlex_rows(0, k, n, self.weights) + _grevlex_rows(k, n, n, self.weights)

    def degree_weights(self, n: int) -> Tuple[int, ...]:
        return tuple(self.weights) if self.weights is not None else (1,) * n

    def sort_key(self, exps: Sequence[int]) -> tuple:
        n = len(exps)
        rows = self.weight_rows(n)
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in rows) + tuple(exps)


def _grevlex_rows(lo: int, hi: int, n: int, weights: Sequence[int] | None = None) -> list[list[int]]:
    if hi <= lo:
        return []
    rows = [[1 if lo <= i < hi else 0 for i in range(n)]]
    if weights is not None:
        rows.insert(0, [weights[i] if lo <= i < hi else 0 for i in range(n)])
    # prefix sums a_lo + ... + a_j for j = hi-2 down to lo
    for j in range(hi - 2, lo - 1, -1):
        rows.append([1 if lo <= i <= j else 0 for i in range(n)])
    return rows


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_elim(k: int, weights: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("block_elim", k, None if weights is None else tuple(weights))


def compare(order: MonomialOrder, m1: Sequence[int], m2: Sequence[int]) -> int:
    """-1, 0, 1 as m1 is less than, equal to, or greater than m2."""
    if len(m1) != len(m2):
        raise ValueError("exponent vectors of different lengths")
    k1, k2 = order.sort_key(m1), order.sort_key(m2)
    return (k1 > k2) - (k1 < k2)


class OrderEncoder:
    """Maps packed monomials to integers whose natural order is the monomial order.

    The encoding is additive: enc(a*b) = enc(a) + enc(b).  Weight fields sit
    above the exponent fields; each is 8 bits, so weights must stay below 256.
    """

    def __init__(self, universe: VarUniverse, order: MonomialOrder):
        self.universe = universe
        self.order = order
        n = universe.n
        rows = order.weight_rows(n)
        self.nrows = len(rows)
        base = FIELD * n
        var_add = [0] * n
        for r, row in enumerate(rows):
            shift = base + FIELD * (self.nrows - 1 - r)
            for i, w in enumerate(row):
                if w:
                    var_add[i] += w << shift
        self.var_add = var_add
        self.exp_bits = base
        self.exp_mask = (1 << base) - 1
        self.guard = universe.guard
        self._cache: Dict[int, int] = {}

    def encode(self, m: int) -> int:
        c = self._cache.get(m)
        if c is None:
            c = m
            for e, add in zip(self.universe.unpack(m), self.var_add):
                if e:
                    c += e * add
            self._cache[m] = c
        return c

    def decode(self, c: int) -> int:
        return c & self.exp_mask


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Polynomial with exact rational coefficients; terms map packed monomials to nonzero coefficients."""

    __slots__ = ("universe", "terms")

    def __init__(self, universe: VarUniverse, terms: Mapping[int, Coeff] | None = None):
        self.universe = universe
        if terms is None:
            self.terms: Dict[int, Coeff] = {}
        else:
            self.terms = {m: _norm(c) for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, universe, terms):
        p = cls.__new__(cls)
        p.universe = universe
        p.terms = terms
        return p

    # --- basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.universe == other.universe and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return to_text(self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.universe != self.universe:
                raise ValueError("polynomials over different universes")
            return other
        if isinstance(other, (int, Fraction)):
            return self.universe.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # --- arithmetic
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.universe, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.universe, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.universe.zero()
            return Polynomial._raw(self.universe, {m: _norm(c * other) for m, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, Coeff] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(self.universe, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.universe.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- structure
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.universe.unpack(m)) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(self.universe.unpack(m)) for m in self.terms}
        return len(degs) <= 1

    def variables(self) -> list[str]:
        used = 0
        for m in self.terms:
            used |= m
        return [name for i, name in enumerate(self.universe.names)
                if (used >> self.universe._shifts[i]) & FIELD_MASK]

    def exponent_items(self) -> list[tuple[tuple[int, ...], Coeff]]:
        return [(self.universe.unpack(m), c) for m, c in self.terms.items()]

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[int, Coeff]]:
        enc = OrderEncoder(self.universe, order)
        return sorted(self.terms.items(), key=lambda mc: enc.encode(mc[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> int:
        enc = OrderEncoder(self.universe, order)
        return max(self.terms, key=enc.encode)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Coeff:
        return self.terms[self.leading_monomial(order)]

    def coefficient(self, exps: Sequence[int]) -> Coeff:
        return self.terms.get(self.universe.pack(exps), 0)

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive integral; sign follows no convention."""
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(1)

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integral, content 1, positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return Polynomial._raw(self.universe, {m: _norm(Fraction(v) / c) for m, v in self.terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = Fraction(self.leading_coefficient(order))
        return Polynomial._raw(self.universe, {m: _norm(Fraction(v) / lc) for m, v in self.terms.items()})

    def diff(self, name: str) -> "Polynomial":
        i = self.universe.index[name]
        shift = self.universe._shifts[i]
        unit = 1 << shift
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & FIELD_MASK
            if e:
                out[m - unit] = c * e
        return Polynomial._raw(self.universe, out)

    def evaluate(self, point: Mapping[str, Coeff] | Sequence[Coeff]) -> Coeff:
        u = self.universe
        if isinstance(point, Mapping):
            vals = [point[name] for name in u.names]
        else:
            vals = list(point)
        total = 0
        for m, c in self.terms.items():
            t = c
            for e, v in zip(u.unpack(m), vals):
                if e:
                    t *= v ** e
            total += t
        return _norm(total)

    def change_universe(self, target: VarUniverse) -> "Polynomial":
        """Re-express over a universe containing all used variables."""
        if target == self.universe:
            return self
        idx = [target.index[name] if name in target.index else None for name in self.universe.names]
        out = {}
        for m, c in self.terms.items():
            exps = [0] * target.n
            for i, e in enumerate(self.universe.unpack(m)):
                if e:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.universe.names[i]} missing from target universe")
                    exps[idx[i]] = e
            out[target.pack(exps)] = c
        return Polynomial._raw(target, out)


def substitute(f: Polynomial, images: Mapping[str, Polynomial]) -> Polynomial:
    """Ring homomorphism sending each variable of f to its image.

    All images must live in one target universe.  Variables without an image
    are an error only if f actually uses them.
    """
    u = f.universe
    used = f.variables()
    missing = [v for v in used if v not in images]
    if missing:
        raise KeyError(f"no image for variables {missing}")
    targets = {img.universe for img in images.values() if isinstance(img, Polynomial)}
    if len(targets) > 1:
        raise ValueError("images live in different universes")
    target = targets.pop() if targets else u
    imgs = []
    for name in u.names:
        img = images.get(name)
        if img is not None and not isinstance(img, Polynomial):
            img = target.const(img)
        imgs.append(img)
    power_cache: Dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        p = power_cache.get(key)
        if p is None:
            p = imgs[i] if e == 1 else power(i, e - 1) * imgs[i]
            power_cache[key] = p
        return p

    acc: Dict[int, Coeff] = {}
    for m, c in f.terms.items():
        term = target.const(c)
        for i, e in enumerate(u.unpack(m)):
            if e:
                term = term * power(i, e)
        for tm, tc in term.terms.items():
            acc[tm] = acc.get(tm, 0) + tc
    return Polynomial(target, acc)


# ---------------------------------------------------------------------------
# division


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Full multivariate division remainder of f by the list G (first divisor wins)."""
    u = f.universe
    enc = OrderEncoder(u, order)
    divisors = []
    for g in G:
        if g.universe != u:
            raise ValueError("divisor over a different universe")
        if g.terms:
            lm = g.leading_monomial(order)
            lc = Fraction(g.terms[lm])
            divisors.append((lm, {m: Fraction(c) / lc for m, c in g.terms.items()}))
    work: Dict[int, Coeff] = dict(f.terms)
    rem: Dict[int, Coeff] = {}
    while work:
        lm = max(work, key=enc.encode)
        c = work.pop(lm)
        for dlm, dterms in divisors:
            if u.divides(dlm, lm):
                shift = lm - dlm
                for m, dc in dterms.items():
                    if m == dlm:
                        continue
                    t = m + shift
                    v = work.get(t, 0) - c * dc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[lm] = c
    return Polynomial(u, rem)


# ---------------------------------------------------------------------------
# Z^4 multigrading on structure constants

_STRUCT_NAME = re.compile(r"^a_?([1-4])([1-4])([1-4])$")


def variable_weight(name: str) -> Tuple[int, int, int, int]:
    """Z^4 weight e_i + e_j - e_k of a_ijk; every other variable has weight 0."""
    mt = _STRUCT_NAME.match(name)
    w = [0, 0, 0, 0]
    if mt:
        i, j, k = (int(ch) - 1 for ch in mt.groups())
        w[i] += 1
        w[j] += 1
        w[k] -= 1
    return tuple(w)


def monomial_multidegree(universe: VarUniverse, m: int) -> Tuple[int, int, int, int]:
    w = [0, 0, 0, 0]
    for name, e in zip(universe.names, universe.unpack(m)):
        if e:
            vw = variable_weight(name)
            for t in range(4):
                w[t] += e * vw[t]
    return tuple(w)


def multidegree(f: Polynomial):
    """Common Z^4 degree of all terms, or the string "inhomogeneous"."""
    degs = {monomial_multidegree(f.universe, m) for m in f.terms}
    if len(degs) == 1:
        return degs.pop()
    if not degs:
        return (0, 0, 0, 0)
    return "inhomogeneous"


# ---------------------------------------------------------------------------
# text format

def to_text(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text: terms in descending order, `coeff*x^e*y`."""
    if not f.terms:
        return "0"
    u = f.universe
    parts = []
    for i, (m, c) in enumerate(f.sorted_terms(order)):
        factors = []
        for name, e in zip(u.names, u.unpack(m)):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse(text: str, universe: VarUniverse) -> Polynomial:
    """Parse the canonical text format (whitespace-insensitive, no parentheses)."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    terms: Dict[int, Coeff] = {}
    sign = 1
    coeff: Coeff = 1
    exps = [0] * universe.n
    have_factor = False

    def flush():
        nonlocal coeff, exps, have_factor
        if not have_factor:
            raise ValueError(f"dangling sign in {text!r}")
        m = universe.pack(exps)
        terms[m] = terms.get(m, 0) + sign * coeff
        coeff, exps, have_factor = 1, [0] * universe.n, False

    while pos < len(s):
        ch = s[pos]
        if ch in "+-":
            if have_factor:
                flush()
                sign = 1
            sign = -sign if ch == "-" else sign
            pos += 1
            continue
        if ch == "*":
            if not have_factor:
                raise ValueError(f"unexpected '*' at {pos} in {text!r}")
            pos += 1
            continue
        mnum = re.match(r"\d+(?:/\d+)?", s[pos:])
        if mnum:
            coeff = coeff * Fraction(mnum.group(0))
            pos += mnum.end()
            have_factor = True
            continue
        mname = re.match(r"[A-Za-z_][A-Za-z0-9_]*", s[pos:])
        if mname:
            name = mname.group(0)
            if name not in universe.index:
                raise ValueError(f"unknown variable {name!r}")
            pos += mname.end()
            e = 1
            if pos < len(s) and s[pos] == "^":
                mexp = re.match(r"\d+", s[pos + 1:])
                if not mexp:
                    raise ValueError(f"bad exponent in {text!r}")
                e = int(mexp.group(0))
                pos += 1 + mexp.end()
            exps[universe.index[name]] += e
            have_factor = True
            continue
        raise ValueError(f"unexpected character {ch!r} in {text!r}")
    flush()
    return Polynomial(universe, terms)
