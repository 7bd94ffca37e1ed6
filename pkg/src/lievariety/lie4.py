"""Structure constants of 4-dimensional Lie algebras and the named polynomials built from them.

The 24 coordinates a_ijk (i < j) are laid out as a 4x6 matrix A whose row k,
column (ij) holds the coefficient of e_k in [e_i, e_j].  Columns are ordered
12, 13, 14, 23, 24, 34.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .poly import Polynomial, VarUniverse, parse, substitute

COLUMNS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
COLUMN_INDEX = {c: n for n, c in enumerate(COLUMNS)}

STRUCT_NAMES = tuple(f"a_{i}{j}{k}" for k in range(1, 5) for (i, j) in COLUMNS)
STRUCT = VarUniverse(STRUCT_NAMES)

# Jacobi rows: triple and sign; columns of Theta are the coefficients of e4, e3, e2, e1.
THETA_ROWS = (((1, 2, 3), 1), ((1, 2, 4), -1), ((1, 3, 4), 1), ((2, 3, 4), -1))
THETA_COLS = (4, 3, 2, 1)

C2_PARAMS = ("f1", "f2", "f3", "f4", "f5", "k1", "k2", "k3", "k4", "k5", "k6", "m")

# Graph generators of the C2 parametrization, variable names as in the
# original Macaulay2 script (a124 rather than a_124).
C2_SCRIPT_GENERATORS = (
    "a121-f1*f4*k5-f2*f5*k5+f1*k1+f2*k3+f3*k5",
    "a122+f4*k5-k1",
    "a132+f4*k6-k2",
    "a142+f4^2*k5+f4*f5*k6+f4*k4-f5*k2",
    "a232+f1*f4*k6-f2*f4*k5-f1*k2+f2*k1+f4*m",
    "a242+f1*f4^2*k5+f1*f4*f5*k6+f1*f4*k4-f1*f5*k2-f3*f4*k5+f4*f5*m+f3*k1",
    "a342+f2*f4^2*k5+f2*f4*f5*k6+f2*f4*k4-f2*f5*k2-f3*f4*k6-f4^2*m+f3*k2",
    "a123+f5*k5-k3",
    "a133+f5*k6-k4",
    "a143+f4*f5*k5+f5^2*k6-f4*k3+f5*k1",
    "a131-f1*f4*k6-f2*f5*k6+f1*k2+f2*k4+f3*k6",
    "a233+f1*f5*k6-f2*f5*k5-f1*k4+f2*k3+f5*m",
    "a243+f1*f4*f5*k5+f1*f5^2*k6-f1*f4*k3+f1*f5*k1-f3*f5*k5+f5^2*m+f3*k3",
    "a343+f2*f4*f5*k5+f2*f5^2*k6-f2*f4*k3+f2*f5*k1-f3*f5*k6-f4*f5*m+f3*k4",
    "a144-f4*k5-f5*k6-k1-k4",
    "a244-f1*f4*k5-f1*f5*k6-f1*k1-f1*k4+f3*k5-f5*m",
    "a234-f1*k6+f2*k5-m",
    "a344-f2*f4*k5-f2*f5*k6-f2*k1-f2*k4+f3*k6+f4*m",
    "a141-f1*f4^2*k5-f1*f4*f5*k6-f2*f4*f5*k5-f2*f5^2*k6-f1*f4*k4+f1*f5*k2+f2*f4*k3"
    "-f2*f5*k1+f3*f4*k5+f3*f5*k6+f3*k1+f3*k4",
    "a231-f1^2*f4*k6+f1*f2*f4*k5-f1*f2*f5*k6+f2^2*f5*k5+f1^2*k2-f1*f2*k1"
    "+f1*f2*k4+f1*f3*k6-f1*f4*m-f2^2*k3-f2*f3*k5-f2*f5*m+f3*m",
    "a124-k5",
    "a134-k6",
    "a241-f1^2*f4^2*k5-f1^2*f4*f5*k6-f1*f2*f4*f5*k5-f1*f2*f5^2*k6-f1^2*f4*k4+f1^2*f5*k2"
    "+f1*f2*f4*k3-f1*f2*f5*k1+2*f1*f3*f4*k5+f1*f3*f5*k6-f1*f4*f5*m+f2*f3*f5*k5"
    "-f2*f5^2*m+f1*f3*k4-f2*f3*k3-f3^2*k5+f3*f5*m",
    "a341-f1*f2*f4^2*k5-f1*f2*f4*f5*k6-f2^2*f4*f5*k5-f2^2*f5^2*k6-f1*f2*f4*k4"
    "+f1*f2*f5*k2+f1*f3*f4*k6+f1*f4^2*m+f2^2*f4*k3-f2^2*f5*k1+f2*f3*f4*k5"
    "+2*f2*f3*f5*k6+f2*f4*f5*m-f1*f3*k2+f2*f3*k1-f3^2*k6-f3*f4*m",
)

F3000_TEXT = (
    "a_122^3 - a_122^2*a_133 - a_122^2*a_144 + 4*a_122*a_123*a_132 + 4*a_122*a_124*a_142"
    " - a_122*a_133^2 + 2*a_122*a_133*a_144 - 4*a_122*a_134*a_143 - a_122*a_144^2"
    " + 4*a_123*a_132*a_133 - 4*a_123*a_132*a_144 + 8*a_123*a_134*a_142"
    " + 8*a_124*a_132*a_143 - 4*a_124*a_133*a_142 + 4*a_124*a_142*a_144"
    " + a_133^3 - a_133^2*a_144 + 4*a_133*a_134*a_143 - a_133*a_144^2"
    " + 4*a_134*a_143*a_144 + a_144^3"
)


# ---------------------------------------------------------------------------
# generic matrix helpers (entries: Polynomial, int or Fraction)

def _is_zero(x) -> bool:
    return not x


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[list]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = 0
            for t in range(k):
                a = Ai[t]
                if _is_zero(a):
                    continue
                b = B[t][j]
                if _is_zero(b):
                    continue
                acc = a * b + acc
            row.append(acc)
        out.append(row)
    return out


def mat_scale(A, c) -> List[list]:
    return [[a * c for a in row] for row in A]


def identity(n: int) -> List[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(M: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first row (small matrices only)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = 0
    for j in range(n):
        if _is_zero(M[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(M: Sequence[Sequence]) -> List[list]:
    n = len(M)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
            c = det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def wedge2(g: Sequence[Sequence]) -> List[list]:
    """6x6 matrix of 2x2 minors of a 4x4 matrix, rows and columns labeled 12,13,14,23,24,34."""
    out = []
    for (i, j) in COLUMNS:
        row = []
        for (k, l) in COLUMNS:
            a, b = g[i - 1][k - 1], g[j - 1][l - 1]
            c, d = g[i - 1][l - 1], g[j - 1][k - 1]
            row.append(a * b - c * d)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# structure tensor

class StructureTensor:
    """4x6 matrix A; A[k-1][col(ij)] = a_ijk, with a_iik = 0 and a_jik = -a_ijk."""

    __slots__ = ("A",)

    def __init__(self, A: Sequence[Sequence]):
        if len(A) != 4 or any(len(row) != 6 for row in A):
            raise ValueError("structure tensor must be a 4x6 matrix")
        self.A = [list(row) for row in A]

    def a(self, i: int, j: int, k: int):
        if i == j:
            return 0
        if i < j:
            return self.A[k - 1][COLUMN_INDEX[(i, j)]]
        return -self.A[k - 1][COLUMN_INDEX[(j, i)]]

    def bracket(self, i: int, j: int) -> list:
        """Coefficients of [e_i, e_j] on e_1..e_4."""
        return [self.a(i, j, k) for k in range(1, 5)]

    def vector(self) -> list:
        """Entries in the row-major order of STRUCT_NAMES."""
        return [x for row in self.A for x in row]

    @classmethod
    def from_vector(cls, v: Sequence) -> "StructureTensor":
        v = list(v)
        if len(v) != 24:
            raise ValueError("need 24 entries")
        return cls([v[6 * r: 6 * r + 6] for r in range(4)])

    def images(self) -> Dict[str, object]:
        """Variable -> value map usable with substitute/evaluate."""
        return dict(zip(STRUCT_NAMES, self.vector()))

    def __eq__(self, other):
        return isinstance(other, StructureTensor) and self.vector() == other.vector()

    def __repr__(self):
        return f"StructureTensor({self.A!r})"


@lru_cache(maxsize=None)
def symbolic_tensor() -> StructureTensor:
    gens = STRUCT.gens()
    return StructureTensor.from_vector(gens)


def evaluate_on(f: Polynomial, T: StructureTensor):
    """Value (or polynomial) of f at the point T, via substitution."""
    vals = T.vector()
    if all(not isinstance(v, Polynomial) for v in vals):
        return f.evaluate(vals)
    return substitute(f, T.images())


# ---------------------------------------------------------------------------
# Jacobi quadrics

def jacobi_coefficients(T: StructureTensor, i: int, j: int, k: int) -> list:
    """Coefficients of e_1..e_4 in [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]."""
    out = []
    for l in range(1, 5):
        acc = 0
        for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
            for m in range(1, 5):
                x = T.a(q, r, m)
                if _is_zero(x):
                    continue
                y = T.a(p, m, l)
                if _is_zero(y):
                    continue
                acc = x * y + acc
        out.append(acc)
    return out


def jacobi_theta(T: StructureTensor | None = None) -> List[list]:
    """The 4x4 matrix of Jacobi quadrics (rows 123, -124, 134, -234; columns e4, e3, e2, e1)."""
    if T is None:
        return [list(row) for row in _theta_symbolic()]
    rows = []
    for (triple, sign) in THETA_ROWS:
        coeffs = jacobi_coefficients(T, *triple)
        rows.append([coeffs[c - 1] * sign for c in THETA_COLS])
    return rows


@lru_cache(maxsize=None)
def _theta_symbolic():
    return tuple(tuple(row) for row in jacobi_theta(symbolic_tensor()))


def theta_list() -> List[Polynomial]:
    return [q for row in _theta_symbolic() for q in row]


def theta_split():
    """(entries of Theta + Theta^T on and above the diagonal, entries of Theta - Theta^T above it)."""
    th = _theta_symbolic()
    sym = [th[i][j] + th[j][i] for i in range(4) for j in range(i, 4)]
    skew = [th[i][j] - th[j][i] for i in range(4) for j in range(i + 1, 4)]
    return sym, skew


# ---------------------------------------------------------------------------
# adjoints, traces, named polynomials

def adjoint(i: int, T: StructureTensor | None = None) -> List[list]:
    """ad(e_i) as the 4x4 matrix whose (j, k) entry is the coefficient of e_k in [e_i, e_j]."""
    if i not in (1, 2, 3, 4):
        raise ValueError(f"bad basis index {i}")
    T = T or symbolic_tensor()
    return [[T.a(i, j, k) for k in range(1, 5)] for j in range(1, 5)]


def trace(M) -> object:
    acc = 0
    for i in range(len(M)):
        acc = acc + M[i][i]
    return acc


def trace_forms() -> List[Polynomial]:
    return [STRUCT.zero() + trace(adjoint(i)) for i in range(1, 5)]


def derived_minors(size: int) -> List[Polynomial]:
    """All size x size minors of A (rows then columns in lexicographic order)."""
    if size not in (3, 4):
        raise ValueError("minor size must be 3 or 4")
    A = symbolic_tensor().A
    out = []
    for rows in combinations(range(4), size):
        for cols in combinations(range(6), size):
            out.append(STRUCT.zero() + det([[A[r][c] for c in cols] for r in rows]))
    return out


def lower_left_minor() -> Polynomial:
    A = symbolic_tensor().A
    return STRUCT.zero() + det([[A[r][c] for c in range(3)] for r in range(1, 4)])


def second_derived_cubics() -> List[Polynomial]:
    """Entries of A * (wedge2 A), a 4x15 matrix of cubics.

    Column (P, Q) for column labels P < Q of A is A applied to the 2x2 minor
    vector of columns P and Q, i.e. the bracket of two brackets.
    """
    A = symbolic_tensor().A
    pairs = list(combinations(range(6), 2))
    W = [[A[r][p] * A[s][q] - A[s][p] * A[r][q] for (p, q) in pairs]
         for (r, s) in [(c[0] - 1, c[1] - 1) for c in COLUMNS]]
    prod = mat_mul(A, W)
    return [STRUCT.zero() + x for row in prod for x in row]


def highest_weight_vectors() -> Dict[str, Polynomial]:
    ad = {i: adjoint(i) for i in range(1, 5)}
    tr = {i: trace(ad[i]) for i in range(1, 5)}
    ad12 = mat_mul(ad[1], ad[2])
    ad21 = mat_mul(ad[2], ad[1])
    z = STRUCT.zero()
    return {
        "f3000": parse(F3000_TEXT, STRUCT),
        "g3000": z + trace(mat_mul(mat_mul(ad[1], ad[1]), ad[1])),
        "hw_2100": z + trace(mat_mul(ad12, ad[3])) - trace(mat_mul(ad21, ad[3])),
        "hw_1110": z + tr[1] * trace(ad12) - tr[2] * trace(mat_mul(ad[1], ad[1])),
        "c3_quadric": parse("a_124*a_344 - a_134*a_244 + a_144*a_234", STRUCT),
        "c4_minor": lower_left_minor(),
    }


# ---------------------------------------------------------------------------
# group action and component parametrizations

def act(g: Sequence[Sequence], T: StructureTensor) -> StructureTensor:
    """g^{-1} * A * wedge2(g).

    For rational g the true inverse is used.  If g has polynomial entries the
    adjugate replaces the inverse, scaling the result by det(g).
    """
    symbolic = any(isinstance(x, Polynomial) for row in g for x in row)
    if symbolic:
        ginv = adjugate(g)
    else:
        d = det(g)
        if d == 0:
            raise ValueError("singular group element")
        ginv = [[Fraction(x) / d for x in row] for row in adjugate(g)]
    out = mat_mul(mat_mul(ginv, T.A), wedge2(g))
    if not symbolic:
        out = [[x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x for x in row]
               for row in out]
    return StructureTensor(out)


def act_integral(g: Sequence[Sequence], T: StructureTensor) -> StructureTensor:
    """adj(g) * A * wedge2(g): det(g) times act(g, T), integral when g and T are."""
    return StructureTensor(mat_mul(mat_mul(adjugate(g), T.A), wedge2(g)))


def base_point(i: int, x=0, y=0) -> StructureTensor:
    """The representative matrices A_1(), A_2(x), A_3(x, y), A_4()."""
    z = 0
    if i == 1:
        A = [[z, z, z, z, z, z],
             [1, z, z, z, -2, z],
             [z, -1, z, z, z, 2],
             [z, z, z, 1, z, z]]
    elif i == 2:
        A = [[z, z, z, z, z, z],
             [2, z, z, z, z, 1],
             [z, 1, 1, z, z, z],
             [z, x, 1, z, z, z]]
    elif i == 3:
        A = [[z, z, z, z, z, z],
             [1, z, z, z, z, z],
             [z, x, z, z, z, z],
             [z, z, y, z, z, z]]
    elif i == 4:
        A = [[1, z, z, z, z, z],
             [z, z, z, z, z, z],
             [z, z, z, z, z, z],
             [z, z, z, z, z, 1]]
    else:
        raise ValueError(f"bad component index {i}")
    return StructureTensor(A)


BASE_PARAMS = {1: (), 2: ("x",), 3: ("x", "y"), 4: ()}
G_NAMES = tuple(f"g{r}{c}" for r in range(1, 5) for c in range(1, 5))


@lru_cache(maxsize=None)
def base_universe(i: int) -> VarUniverse:
    return VarUniverse(BASE_PARAMS[i])


def symbolic_base_point(i: int) -> StructureTensor:
    """A_i with its parameters as polynomial variables (constant polynomials when there are none)."""
    u = base_universe(i)
    params = [u.gen(n) for n in BASE_PARAMS[i]] + [0, 0]
    T = base_point(i, params[0], params[1])
    return StructureTensor([[u.zero() + x for x in row] for row in T.A])


@lru_cache(maxsize=None)
def chart_universe(i: int) -> VarUniverse:
    return VarUniverse(BASE_PARAMS[i] + G_NAMES)


def component_chart(i: int) -> StructureTensor:
    """adj(g) * A_i(params) * wedge2(g) with a generic symbolic g."""
    if i not in (1, 2, 3, 4):
        raise ValueError(f"bad component index {i}")
    u = chart_universe(i)
    g = [[u.gen(f"g{r}{c}") for c in range(1, 5)] for r in range(1, 5)]
    params = [u.gen(n) for n in BASE_PARAMS[i]] + [0, 0]
    T = base_point(i, params[0], params[1])
    return act(g, StructureTensor([[u.zero() + x for x in row] for row in T.A]))


# ---------------------------------------------------------------------------
# birational chart of C2

@lru_cache(maxsize=None)
def c2_universe() -> VarUniverse:
    return VarUniverse(C2_PARAMS)


def c2_birational() -> Dict[str, Polynomial]:
    """The 24 coordinates of the C2 chart as polynomials in f1..f5, k1..k6, m.

    Built as g^{-1} * B * wedge2(g) with g unipotent (so g^{-1} = adj(g)),
    B carrying the Heisenberg-derived-algebra pattern of parameters.
    """
    u = c2_universe()
    f1, f2, f3, f4, f5, k1, k2, k3, k4, k5, k6, m = u.gens()
    z = u.zero()
    one = u.const(1)
    g = [[one, f1, f2, f3],
         [z, one, z, f4],
         [z, z, one, f5],
         [z, z, z, one]]
    B = [[z, z, z, z, z, z],
         [k1, k2, z, z, z, z],
         [k3, k4, z, z, z, z],
         [k5, k6, k1 + k4, m, z, z]]
    T = act(g, StructureTensor(B))
    return {name: z + v for name, v in zip(STRUCT_NAMES, T.vector())}


def c2_script_map() -> Dict[str, Polynomial]:
    """The same map read off the transcribed script generators a_ijk - (image)."""
    u = c2_universe()
    full = VarUniverse(C2_PARAMS + tuple(n.replace("_", "") for n in STRUCT_NAMES))
    out = {}
    for text in C2_SCRIPT_GENERATORS:
        gen = parse(text, full)
        head = [v for v in gen.variables() if v.startswith("a")]
        if len(head) != 1:
            raise ValueError(f"malformed graph generator {text!r}")
        name = head[0]
        image = full.gen(name) - gen
        out["a_" + name[1:]] = image.change_universe(u)
    return {name: out[name] for name in STRUCT_NAMES}


C2_TORUS = (3, 4, 5, 6)


def c2_grading(w: Sequence[int] = C2_TORUS) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Weights (chart parameters, structure constants) induced by the torus diag(t^w1, ..., t^w4).

    a_ijk gets w_i + w_j - w_k.  The parameters get the weights that make each
    a_ijk - (image) weighted homogeneous; all must be positive for the grading
    to be usable by Groebner bases.
    """
    w1, w2, w3, w4 = w
    params = (w2 - w1, w3 - w1, w4 - w1, w4 - w2, w4 - w3,
              w1, w1 - w2 + w3, w1 + w2 - w3, w1, w1 + w2 - w4, w1 + w3 - w4, w2 + w3 - w4)
    struct = tuple(w[int(n[2]) - 1] + w[int(n[3]) - 1] - w[int(n[4]) - 1] for n in STRUCT_NAMES)
    if min(params + struct) <= 0:
        raise ValueError(f"torus weights {tuple(w)} do not give a positive grading")
    return params, struct


def c2_graph() -> List[Polynomial]:
    """a_ijk - (image) in the 36 variables f1..m, a_112..a_344; parameters first."""
    images = c2_script_map()
    full = VarUniverse(C2_PARAMS + STRUCT_NAMES)
    return [full.gen(n) - images[n].change_universe(full) for n in STRUCT_NAMES]
