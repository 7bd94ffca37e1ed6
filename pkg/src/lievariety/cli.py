"""Command line front end.

    lievariety quadrics [--check-grading] [--fixtures DIR]
    lievariety component I [--max-degree D] [--seed S] [--hilbert] [--budget SEC] [--json PATH]
    lievariety verify-all [--seed S] [--budget SEC] [--skip-stretch] [--json PATH]
    lievariety fixtures --fixtures DIR [--seed S]

Exit codes: 0 success, 1 verification failure, 2 budget exceeded, 3 bad arguments.
Progress of long computations goes to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Sequence

import jsonschema

from . import checks, discover, groebner, hilbert, lie4
from .groebner import Budget, BudgetExceeded
from .poly import multidegree, to_text

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_ARGS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# fixtures

def theta_fixtures() -> Dict[str, str]:
    theta = lie4.jacobi_theta()
    return {f"theta/theta_{r + 1}{c + 1}.txt": to_text(theta[r][c]) + "\n" for r in range(4) for c in range(4)}


def named_fixtures() -> Dict[str, str]:
    traces = "".join(to_text(f) + "\n" for f in lie4.trace_forms())
    hw = "".join(f"{name}: {to_text(f)}\n" for name, f in lie4.highest_weight_vectors().items())
    chart = lie4.c2_birational()
    c2 = "".join(f"{name} = {to_text(chart[name])}\n" for name in lie4.STRUCT_NAMES)
    return {"named/trace_forms.txt": traces, "named/highest_weight_vectors.txt": hw, "named/c2_chart.txt": c2}


def component_fixtures(seed: int = 0, max_degree: int = 3) -> Dict[str, str]:
    out = {}
    for i in range(1, 5):
        for d in range(1, max_degree + 1):
            gens = [f.primitive() for f in discover.degree_profile(i, d, seed).minimal]
            out[f"components/C{i}/gens_deg{d}.txt"] = "".join(to_text(f) + "\n" for f in gens)
    return out


def all_fixtures(seed: int = 0) -> Dict[str, str]:
    out = theta_fixtures()
    out.update(named_fixtures())
    out.update(component_fixtures(seed))
    return out


def write_texts(root: Path, texts: Dict[str, str]) -> None:
    for rel, text in texts.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def packaged_fixtures() -> Path:
    return Path(str(resources.files("lievariety") / "fixtures"))


# ---------------------------------------------------------------------------
# reports

def load_schema() -> dict:
    return json.loads((resources.files("lievariety") / "schemas" / "report.schema.json").read_text())


def make_report(command: str, inputs: dict, outputs: dict, status: str, message: str | None = None) -> dict:
    report = {"command": command, "inputs": inputs, "outputs": outputs, "status": status}
    if message:
        report["message"] = message
    jsonschema.validate(report, load_schema())
    return report


def _emit(report: dict, json_path: Optional[str], fixtures: Optional[str], name: str) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if json_path:
        Path(json_path).write_text(text)
    if fixtures:
        write_texts(Path(fixtures), {f"reports/{name}.json": text})


def _inputs(args, component=None, degree=None) -> dict:
    return {"seed": getattr(args, "seed", 0), "component": component, "degree": degree,
            "budget": getattr(args, "budget", None)}


# ---------------------------------------------------------------------------
# commands

def cmd_quadrics(args) -> int:
    t0 = time.monotonic()
    theta = lie4.jacobi_theta()
    polys = [theta[r][c] for r in range(4) for c in range(4)]
    for f in polys:
        print(to_text(f))
    status, code = "ok", EXIT_OK
    degrees = [multidegree(f) for f in polys]
    if args.check_grading:
        bad = [n for n, d in enumerate(degrees) if d == "inhomogeneous"]
        if bad:
            print(f"not Z^4-homogeneous: {bad}", file=sys.stderr)
            status, code = "failed", EXIT_FAIL
        else:
            print("all 16 quadrics are Z^4-homogeneous", file=sys.stderr)
    if args.fixtures:
        write_texts(Path(args.fixtures), theta_fixtures())
    outputs = {"polynomials": [to_text(f) for f in polys], "multidegrees": [list(d) for d in degrees],
               "counts": {"quadrics": len(polys)}, "elapsed_seconds": time.monotonic() - t0}
    report = make_report("quadrics", _inputs(args), outputs, status)
    _emit(report, args.json, args.fixtures, "quadrics")
    return code


def cmd_component(args) -> int:
    i = args.component
    if i not in (1, 2, 3, 4):
        print(f"component must be 1..4, got {i}", file=sys.stderr)
        return EXIT_ARGS
    if not 1 <= args.max_degree <= 4:
        print("--max-degree must be between 1 and 4", file=sys.stderr)
        return EXIT_ARGS
    t0 = time.monotonic()
    dims, counts, certified = {}, {}, True
    for d in range(1, args.max_degree + 1):
        space = discover.vanishing_space(i, d, seed=args.seed)
        prof = discover.degree_profile(i, d, args.seed)
        dims[str(d)] = space.dimension
        counts[str(d)] = prof.count
        certified &= space.certified
        print(f"C{i} degree {d}: {space.dimension} forms, {prof.count} minimal generators")
    outputs = {"dimensions": dims, "counts": counts, "certified": certified}
    status, code, message = "ok", EXIT_OK, None
    if args.fixtures:
        write_texts(Path(args.fixtures), {k: v for k, v in component_fixtures(args.seed, args.max_degree).items()
                                          if k.startswith(f"components/C{i}/")})
    if args.hilbert:
        gens = discover.minimal_generators(i, args.max_degree, args.seed)
        try:
            B = groebner.buchberger(gens, budget=Budget(max_seconds=args.budget), progress=True)
        except BudgetExceeded as exc:
            status, code, message = "budget_exceeded", EXIT_BUDGET, str(exc)
            print(f"budget exceeded: {exc} ({exc.stats})", file=sys.stderr)
        else:
            hp = hilbert.hilbert_polynomial(B)
            outputs.update({"hilbert_polynomial": str(hp), "dim": hp.dim, "degree": hp.degree,
                            "groebner_basis_size": len(B.generators)})
            print(f"Hilbert polynomial: {hp}")
            print(f"dim {hp.dim}, degree {hp.degree}")
    outputs["elapsed_seconds"] = time.monotonic() - t0
    report = make_report("component", _inputs(args, i, args.max_degree), outputs, status, message)
    _emit(report, args.json, args.fixtures, f"component_C{i}")
    return code


def cmd_verify_all(args) -> int:
    t0 = time.monotonic()

    def show(res: checks.CheckResult):
        print(res.line(), flush=True)

    results = checks.run_all(args.seed, args.budget, show, skip_stretch=args.skip_stretch)
    core = [r for r in results if not r.stretch]
    if all(r.passed for r in core):
        status, code = "ok", EXIT_OK
    elif any(r.status == "budget" for r in core) and not any(r.status == "fail" for r in core):
        status, code = "budget_exceeded", EXIT_BUDGET
    else:
        status, code = "failed", EXIT_FAIL
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} items passed; required items {'all pass' if code == 0 else 'NOT all pass'}")
    outputs = {"items": [r.as_json() for r in results], "elapsed_seconds": time.monotonic() - t0}
    report = make_report("verify-all", _inputs(args), outputs, status)
    _emit(report, args.json, args.fixtures, "verify_all")
    return code


def cmd_fixtures(args) -> int:
    if not args.fixtures:
        print("--fixtures DIR is required", file=sys.stderr)
        return EXIT_ARGS
    texts = all_fixtures(args.seed)
    write_texts(Path(args.fixtures), texts)
    print(f"wrote {len(texts)} fixture files under {args.fixtures}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=float, default=None, help="seconds per Groebner basis")
    common.add_argument("--json", default=None, help="write the JSON report here")
    common.add_argument("--fixtures", default=None, help="fixture directory to write into")
    common.add_argument("-q", "--quiet", action="store_true", help="no progress lines on stderr")

    p = _Parser(prog="lievariety", description="Components of the variety of 4-dimensional Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("quadrics", parents=[common], help="print the 16 Jacobi quadrics")
    q.add_argument("--check-grading", action="store_true")
    q.set_defaults(func=cmd_quadrics)

    c = sub.add_parser("component", parents=[common], help="generator profile of one component")
    c.add_argument("component", type=int)
    c.add_argument("--max-degree", type=int, default=3)
    c.add_argument("--hilbert", action="store_true")
    c.set_defaults(func=cmd_component)

    v = sub.add_parser("verify-all", parents=[common], help="run every verification item")
    v.add_argument("--skip-stretch", action="store_true")
    v.set_defaults(func=cmd_verify_all)

    f = sub.add_parser("fixtures", parents=[common], help="regenerate all fixture files")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None and args.budget <= 0:
        print("--budget must be positive", file=sys.stderr)
        return EXIT_ARGS
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, stream=sys.stderr,
                        format="%(asctime)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
