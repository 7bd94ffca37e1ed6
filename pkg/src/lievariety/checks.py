"""The numbered verification items run by ``lievariety verify-all``.

Each check returns a CheckResult; stretch items never affect the exit status.
Heavy items accept a per-computation time budget in seconds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import chow, discover, groebner, hilbert, lie4
from .groebner import Budget, BudgetExceeded
from .poly import GREVLEX, LEX, compare, multidegree, parse, substitute

EXPECTED_PROFILES = {
    1: {1: 4, 2: 10, 3: 20},
    2: {1: 0, 2: 16, 3: 44},
    3: {1: 0, 2: 26, 3: 40},
    4: {1: 0, 2: 16, 3: 60},
}

EXPECTED_HILBERT = {
    1: "55*[P^11] - 120*[P^10] + 86*[P^9] - 20*[P^8]",
    2: "361*[P^11] - 1184*[P^10] + 1526*[P^9] - 964*[P^8] + 298*[P^7] - 36*[P^6]",
    3: "121*[P^11] - 284*[P^10] + 220*[P^9] - 56*[P^8]",
    4: "295*[P^11] - 920*[P^10] + 1114*[P^9] - 652*[P^8] + 184*[P^7] - 20*[P^6]",
}

EXPECTED_DEGREES = {1: 55, 2: 361, 3: 121, 4: 295}
TOTAL_DEGREE = 832

THETA_DISPLAYED = {
    (1, 1): "a_124*a_131 - a_121*a_134 + a_124*a_232 + a_134*a_233 - a_122*a_234 - a_133*a_234"
            " + a_144*a_234 - a_134*a_244 + a_124*a_344",
    (1, 2): "a_123*a_131 - a_121*a_133 + a_123*a_232 - a_122*a_233 + a_143*a_234 - a_134*a_243"
            " + a_124*a_343",
    (2, 1): "-a_124*a_141 + a_121*a_144 + a_143*a_234 - a_124*a_242 - a_134*a_243 + a_122*a_244"
            " + a_123*a_344",
}

RADICAL_PROFILE = {2: 16, 4: 15}


@dataclass
class CheckResult:
    number: int
    name: str
    status: str  # pass | fail | budget
    stretch: bool = False
    expected: object = None
    actual: object = None
    seconds: float = 0.0
    detail: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        tag = " (stretch)" if self.stretch else ""
        text = f"[{self.status.upper():6}] {self.number}. {self.name}{tag} ({self.seconds:.1f}s)"
        if not self.passed:
            text += f"\n         expected: {self.expected}\n         actual:   {self.actual}"
        return text

    def as_json(self) -> dict:
        return {"id": self.number, "name": self.name, "status": self.status, "stretch": self.stretch,
                "expected": _jsonable(self.expected), "actual": _jsonable(self.actual),
                "detail": _jsonable(self.detail)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


class Context:
    """Shared intermediate results so later items reuse earlier work."""

    def __init__(self, seed: int = 0, budget: Optional[float] = None):
        self.seed = seed
        self.budget = budget
        self.generators: Dict[int, list] = {}
        self.bases: Dict[int, groebner.IdealBasis] = {}
        self.hilbert: Dict[int, hilbert.HilbertPolynomial] = {}

    def gens(self, i: int) -> list:
        if i not in self.generators:
            self.generators[i] = discover.minimal_generators(i, 3, self.seed)
        return self.generators[i]

    def basis(self, i: int) -> groebner.IdealBasis:
        if i not in self.bases:
            self.bases[i] = groebner.buchberger(self.gens(i), GREVLEX, budget=Budget(max_seconds=self.budget),
                                                progress=True)
        return self.bases[i]

    def hilbert_polynomial(self, i: int) -> hilbert.HilbertPolynomial:
        if i not in self.hilbert:
            self.hilbert[i] = hilbert.hilbert_polynomial(self.basis(i))
        return self.hilbert[i]


# ---------------------------------------------------------------------------
# items

def check_chow(ctx: Context) -> CheckResult:
    s = chow.segre_c1().univariate()
    d1, d2 = chow.degree_c1(), chow.degree_c2()
    ok = s == [1, 7, 25, 55] and d1 == 55 and d2 == 361
    return CheckResult(1, "Chow degrees", "pass" if ok else "fail",
                       expected={"c1_series": [1, 7, 25, 55], "deg_c1": 55, "deg_c2": 361},
                       actual={"c1_series": [int(x) for x in s], "deg_c1": d1, "deg_c2": d2})


def check_theta(ctx: Context) -> CheckResult:
    theta = lie4.jacobi_theta()
    mismatched = []
    for (r, c), text in THETA_DISPLAYED.items():
        if theta[r - 1][c - 1] != parse(text, lie4.STRUCT):
            mismatched.append(f"theta{r}{c}")
    graded = all(multidegree(f) != "inhomogeneous" for row in theta for f in row)
    ok = not mismatched and graded
    return CheckResult(2, "Theta conformance", "pass" if ok else "fail",
                       expected={"mismatched": [], "all_homogeneous": True},
                       actual={"mismatched": mismatched, "all_homogeneous": graded})


def check_profiles(ctx: Context) -> CheckResult:
    actual, certified = {}, True
    for i in range(1, 5):
        actual[i] = discover.generator_profile(i, 3, ctx.seed)
        certified &= all(discover.vanishing_space(i, d, seed=ctx.seed).certified for d in (1, 2, 3))
    ok = actual == EXPECTED_PROFILES and certified
    return CheckResult(3, "Generator profiles", "pass" if ok else "fail",
                       expected={"profiles": EXPECTED_PROFILES, "certified": True},
                       actual={"profiles": actual, "certified": certified},
                       detail={"C4": "16 quadrics and 60 cubics" if actual.get(4) == EXPECTED_PROFILES[4]
                               else f"profile {actual.get(4)}"})


def check_c2_elimination(ctx: Context) -> CheckResult:
    """Second route to the C2 ideal: implicitize the chart, compare with the discovered generators."""
    expected = {"profile": EXPECTED_PROFILES[2], "same ideal as discovered": True}
    params, struct = lie4.c2_grading()
    try:
        E = groebner.eliminate(lie4.c2_graph(), len(params), budget=Budget(max_seconds=ctx.budget),
                               progress=True, weights=params + struct)
    except BudgetExceeded as exc:
        return CheckResult(3, "C2 generators by elimination", "budget", True, expected, str(exc))
    E = [e.change_universe(lie4.STRUCT) for e in E]
    profile = {1: 0, **groebner.minimal_generator_degrees(E, 3)}
    same = groebner.buchberger(E).generators == ctx.basis(2).generators
    actual = {"profile": profile, "same ideal as discovered": same}
    return CheckResult(3, "C2 generators by elimination", "pass" if actual == expected else "fail", True,
                       expected, actual, detail={"elimination_basis_size": len(E)})


def _hilbert_item(ctx: Context, number: int, name: str, comps, stretch: bool) -> CheckResult:
    actual, expected = {}, {}
    for i in comps:
        expected[i] = {"hilbert": EXPECTED_HILBERT[i], "dim": 11, "degree": EXPECTED_DEGREES[i]}
        try:
            hp = ctx.hilbert_polynomial(i)
        except BudgetExceeded as exc:
            actual[i] = f"budget exceeded: {exc}"
            return CheckResult(number, name, "budget", stretch, expected, actual)
        actual[i] = {"hilbert": str(hp), "dim": hp.dim, "degree": hp.degree}
    return CheckResult(number, name, "pass" if actual == expected else "fail", stretch, expected, actual)


def check_hilbert(ctx: Context) -> CheckResult:
    return _hilbert_item(ctx, 4, "Hilbert polynomials C1, C3", (1, 3), False)


def check_hilbert_stretch(ctx: Context) -> CheckResult:
    return _hilbert_item(ctx, 4, "Hilbert polynomials C2, C4", (2, 4), True)


def check_total_degree(ctx: Context) -> CheckResult:
    degrees, sources = {}, {}
    for i in range(1, 5):
        if i in ctx.hilbert:
            degrees[i], sources[i] = ctx.hilbert[i].degree, "hilbert"
        elif i in (1, 2):
            degrees[i] = chow.degree_c1() if i == 1 else chow.degree_c2()
            sources[i] = "chow"
        else:
            degrees[i], sources[i] = EXPECTED_DEGREES[i], "reference"
    total = sum(degrees.values())
    return CheckResult(5, "Total degree", "pass" if total == TOTAL_DEGREE else "fail",
                       expected=TOTAL_DEGREE, actual=total, detail={"degrees": degrees, "sources": sources})


def check_c2_chart(ctx: Context) -> CheckResult:
    built, script = lie4.c2_birational(), lie4.c2_script_map()
    diff = sorted(n for n in lie4.STRUCT_NAMES if built[n] != script[n])
    return CheckResult(6, "C2 chart consistency", "pass" if not diff else "fail",
                       expected=[], actual=diff)


def check_hw_identities(ctx: Context) -> CheckResult:
    hw = lie4.highest_weight_vectors()
    traces = groebner.buchberger(lie4.trace_forms(), GREVLEX)
    in_traces = groebner.membership(hw["g3000"] - hw["f3000"], traces)
    chart = {n: f for n, f in lie4.c2_birational().items()}
    f_on_c2 = substitute(hw["f3000"], chart)
    pts = discover.sample(2, 5, ctx.seed)
    g_values = [hw["g3000"].evaluate(pt) for pt in pts.points]
    actual = {"g3000-f3000 in traces": in_traces, "f3000 on C2 chart": str(f_on_c2) if f_on_c2 else "0",
              "g3000 nonzero on C2 sample": any(v != 0 for v in g_values),
              "hw_2100 terms": len(hw["hw_2100"]), "hw_1110 terms": len(hw["hw_1110"])}
    expected = {"g3000-f3000 in traces": True, "f3000 on C2 chart": "0",
                "g3000 nonzero on C2 sample": True, "hw_2100 terms": 51, "hw_1110 terms": 39}
    # modulo the trace forms f3000 and g3000 reduce to -8 D and -3 D for one cubic D
    detail = {"8*g3000 - 3*f3000 in traces": groebner.membership(8 * hw["g3000"] - 3 * hw["f3000"], traces)}
    return CheckResult(7, "Highest weight vector identities", "pass" if actual == expected else "fail",
                       expected=expected, actual=actual, detail=detail)


def check_radical_membership(ctx: Context) -> CheckResult:
    minor = lie4.derived_minors(4)[0]
    expected = {"minor": False, "square": True}
    try:
        B = groebner.buchberger(lie4.theta_list(), GREVLEX, budget=Budget(max_seconds=ctx.budget),
                                degree_bound=8, progress=True)
    except BudgetExceeded as exc:
        return CheckResult(8, "Radical: 4x4 minor membership", "budget", True, expected, str(exc))
    actual = {"minor": groebner.membership(minor, B), "square": groebner.membership(minor * minor, B)}
    return CheckResult(8, "Radical: 4x4 minor membership", "pass" if actual == expected else "fail", True,
                       expected, actual, detail={"basis_size": len(B.generators)})


def check_radical_intersection(ctx: Context) -> CheckResult:
    # the ideals are homogeneous, so the intersection is computed degree by degree up to the
    # largest degree in the profile; generators beyond that degree are not examined
    top = max(RADICAL_PROFILE)
    budget = Budget(max_seconds=ctx.budget)
    try:
        ideal = ctx.gens(1)
        for i in (2, 3, 4):
            ideal = groebner.intersect(ideal, ctx.gens(i), budget=budget, progress=True, degree_bound=top)
    except BudgetExceeded as exc:
        return CheckResult(8, "Radical: intersection profile", "budget", True, RADICAL_PROFILE, str(exc))
    profile = groebner.minimal_generator_degrees(ideal, top)
    return CheckResult(8, "Radical: intersection profile", "pass" if profile == RADICAL_PROFILE else "fail",
                       True, RADICAL_PROFILE, profile)


def check_properties(ctx: Context, cases: int = 100) -> CheckResult:
    """Compact re-run of the randomized laws plus GB and determinism checks."""
    rng = random.Random(ctx.seed)
    u = lie4.STRUCT
    failures: List[str] = []

    def rand_poly(terms=4, deg=2):
        f = u.zero()
        for _ in range(terms):
            e = [0] * u.n
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(u.n)] += 1
            f = f + u.monomial(e, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        return f

    for _ in range(cases):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        if (f * g) * h != f * (g * h) or f * (g + h) != f * g + f * h:
            failures.append("poly ring laws")
            break
    for _ in range(cases):
        a, b, c = (tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(3))
        for order in (GREVLEX, LEX):
            if compare(order, a, b) > 0 and compare(order, tuple(x + z for x, z in zip(a, c)),
                                                     tuple(y + z for y, z in zip(b, c))) <= 0:
                failures.append("order compatibility")
    for _ in range(cases):
        s = chow.TruncatedSeries([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
        s = s + (1 - s[0, 0]) if s[0, 0] == 0 else s
        if s * s.inverse() != 1:
            failures.append("chow inverse")
            break
    for i, B in sorted(ctx.bases.items()):
        if not groebner.is_groebner(B, max_pairs=None if len(B.generators) <= 60 else 400, seed=ctx.seed):
            failures.append(f"S-polynomials of C{i}")
    fresh = discover._vanishing_space.__wrapped__
    n = discover.default_sample_count(2)
    if fresh(3, 2, n, ctx.seed, None, True).basis != fresh(3, 2, n, ctx.seed, None, True).basis:
        failures.append("determinism")
    return CheckResult(9, "Property suites", "pass" if not failures else "fail", expected=[], actual=failures)


ITEMS: List[Callable[[Context], CheckResult]] = [
    check_chow, check_theta, check_profiles, check_c2_elimination, check_hilbert, check_hilbert_stretch,
    check_total_degree, check_c2_chart, check_hw_identities, check_radical_membership, check_radical_intersection,
    check_properties,
]

STRETCH_ITEMS = (check_c2_elimination, check_hilbert_stretch, check_radical_membership, check_radical_intersection)


def run_all(seed: int = 0, budget: Optional[float] = None, report: Callable[[CheckResult], None] = None,
            skip_stretch: bool = False) -> List[CheckResult]:
    ctx = Context(seed, budget)
    results = []
    for item in ITEMS:
        if skip_stretch and item in STRETCH_ITEMS:
            continue
        t0 = time.monotonic()
        res = item(ctx)
        res.seconds = time.monotonic() - t0
        results.append(res)
        if report:
            report(res)
    return results
