"""Truncated power series in Q[x, y]/(x^4, y^4) and two Segre-class degree counts.

The degree of C1 is the top Segre number of a rank-10 bundle twisted down
on P^3; the degree of C2 is an integral over P^3 x P^3 cut by a (1,1)
divisor.  Both are recomputed here as a check independent of Groebner bases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence

N = 4  # x^4 = y^4 = 0


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Sequence] | None = None):
        grid = [[Fraction(0)] * N for _ in range(N)]
        if coeffs is not None:
            for i, row in enumerate(coeffs):
                for j, c in enumerate(row):
                    if c and i < N and j < N:
                        grid[i][j] = Fraction(c)
        self.coeffs = tuple(tuple(r) for r in grid)

    @classmethod
    def from_terms(cls, terms: dict) -> "TruncatedSeries":
        grid = [[0] * N for _ in range(N)]
        for (i, j), c in terms.items():
            if i < N and j < N:
                grid[i][j] += c
        return cls(grid)

    @classmethod
    def const(cls, c) -> "TruncatedSeries":
        return cls.from_terms({(0, 0): c})

    @classmethod
    def x(cls) -> "TruncatedSeries":
        return cls.from_terms({(1, 0): 1})

    @classmethod
    def y(cls) -> "TruncatedSeries":
        return cls.from_terms({(0, 1): 1})

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.coeffs[i][j] if i < N and j < N else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*x^{i}*y^{j}" for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c]
        return "TruncatedSeries(" + (" + ".join(terms) or "0") + ")"

    def _coerce(self, other) -> "TruncatedSeries":
        return other if isinstance(other, TruncatedSeries) else TruncatedSeries.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return TruncatedSeries([[a + b for a, b in zip(r, s)] for r, s in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([[-a for a in r] for r in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = [[Fraction(0)] * N for _ in range(N)]
        A, B = self.coeffs, other.coeffs
        for i in range(N):
            for j in range(N):
                a = A[i][j]
                if not a:
                    continue
                for k in range(N - i):
                    for l in range(N - j):
                        b = B[k][l]
                        if b:
                            out[i + k][j + l] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        c = self.coeffs[0][0]
        if not c:
            raise ZeroDivisionError("constant term is zero")
        # s = c(1 - u) with u nilpotent of order 7, so 1/s = (1/c) sum u^k
        u = TruncatedSeries.const(1) - self * Fraction(1, c)
        out = TruncatedSeries.const(1)
        power = TruncatedSeries.const(1)
        for _ in range(2 * (N - 1)):
            power = power * u
            out = out + power
        return out * Fraction(1, c)

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries.from_terms({(i, d - i): self[i, d - i] for i in range(N) if 0 <= d - i < N})

    def univariate(self) -> List[Fraction]:
        """Coefficients of x^0..x^3 (the y^0 column)."""
        return [self.coeffs[i][0] for i in range(N)]


def _poly(terms: Iterable) -> TruncatedSeries:
    return TruncatedSeries.from_terms(dict(terms))


def segre_c1() -> TruncatedSeries:
    x = TruncatedSeries.x()
    return (1 - 3 * x) * ((1 - x) ** 10).inverse()


def degree_c1() -> int:
    s = segre_c1()
    expansion = s.univariate()
    assert expansion == [1, 7, 25, 55], expansion
    assert all(s[i, j] == 0 for i in range(N) for j in range(1, N))
    return int(expansion[3])


def segre_factors_c2():
    x, y = TruncatedSeries.x(), TruncatedSeries.y()
    s_m = (1 + y - 2 * x).inverse()
    s_v = (1 - 2 * y) ** 4 * ((1 - y) ** 17).inverse()
    s_w = (1 + x - y) ** 4 * (1 + x).inverse()
    return s_m, s_v, s_w


def segre_c2() -> TruncatedSeries:
    s_m, s_v, s_w = segre_factors_c2()
    return s_m * s_v * s_w


def degree_c2() -> int:
    s5 = segre_c2().homogeneous_part(5)
    top = s5 * (TruncatedSeries.x() + TruncatedSeries.y())
    value = top[3, 3]
    assert value.denominator == 1
    return int(value)
